// Shared error types and exact integer arithmetic helpers.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace edsim {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Bad config or input data; CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A runtime accounting invariant was violated; CLI maps this to exit code 2.
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// round-half-up of num/den on non-negative integers, den > 0
inline u64 div_round_half_up(u128 num, u128 den) {
    return static_cast<u64>((2 * num + den) / (2 * den));
}

inline u64 div_floor(u128 num, u128 den) {
    return static_cast<u64>(num / den);
}

inline u64 div_ceil(u128 num, u128 den) {
    return static_cast<u64>((num + den - 1) / den);
}

} // namespace edsim
