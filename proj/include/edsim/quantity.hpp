// Fixed-point quantities: energy in watt-hours, money in euro-cents.
// Integer accounting keeps conservation checks bit-exact and runs deterministic.
#pragma once

#include <compare>
#include <limits>
#include <string>

#include "edsim/common.hpp"

namespace edsim {

// Prices are integer euro-cents per kWh.
using PriceCentsPerKwh = u64;

constexpr u64 kWhPerKwh = 1000;

struct EnergyWh {
    u64 wh = 0;

    friend auto operator<=>(const EnergyWh&, const EnergyWh&) = default;

    EnergyWh& operator+=(EnergyWh other) {
        wh += other.wh;
        return *this;
    }
    friend EnergyWh operator+(EnergyWh a, EnergyWh b) { return a += b; }

    // Underflow means an accounting bug upstream, not bad user input.
    EnergyWh& operator-=(EnergyWh other) {
        if (other.wh > wh) {
            throw InvariantError("energy underflow: " + std::to_string(wh) + " Wh - " +
                                 std::to_string(other.wh) + " Wh");
        }
        wh -= other.wh;
        return *this;
    }
    friend EnergyWh operator-(EnergyWh a, EnergyWh b) { return a -= b; }
};

struct MoneyCents {
    u64 cents = 0;

    friend auto operator<=>(const MoneyCents&, const MoneyCents&) = default;

    MoneyCents& operator+=(MoneyCents other) {
        cents += other.cents;
        return *this;
    }
    friend MoneyCents operator+(MoneyCents a, MoneyCents b) { return a += b; }

    MoneyCents& operator-=(MoneyCents other) {
        if (other.cents > cents) {
            throw InvariantError("balance underflow: " + std::to_string(cents) + " cents - " +
                                 std::to_string(other.cents) + " cents");
        }
        cents -= other.cents;
        return *this;
    }
    friend MoneyCents operator-(MoneyCents a, MoneyCents b) { return a -= b; }
};

// Cost of q Wh at price cents/kWh, rounded half-up to whole cents.
inline MoneyCents energy_cost(EnergyWh q, PriceCentsPerKwh price) {
    return MoneyCents{div_round_half_up(static_cast<u128>(q.wh) * price, kWhPerKwh)};
}

// Largest quantity purchasable with the given funds, by direct division.
// The cost of the result never exceeds the funds (see energy_cost rounding).
inline EnergyWh affordable_energy(MoneyCents funds, PriceCentsPerKwh price) {
    if (price == 0) return EnergyWh{std::numeric_limits<u64>::max()};
    return EnergyWh{div_floor(static_cast<u128>(funds.cents) * kWhPerKwh, price)};
}

// Signed net position in Wh; positive is surplus, negative is need.
inline i64 net_position(EnergyWh production, EnergyWh consumption) {
    return static_cast<i64>(production.wh) - static_cast<i64>(consumption.wh);
}

} // namespace edsim
