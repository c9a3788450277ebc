// Community members: identity, role, balance, donation willingness.
#pragma once

#include <compare>
#include <string>
#include <vector>

#include "edsim/quantity.hpp"

namespace edsim {

struct PeerId {
    u64 id = 0;

    friend auto operator<=>(const PeerId&, const PeerId&) = default;
};

enum class PeerRole { prosumer, consumer };

inline const char* to_string(PeerRole role) {
    return role == PeerRole::prosumer ? "prosumer" : "consumer";
}

struct PeerState {
    PeerId id;
    MoneyCents balance;
    bool willing_to_donate = true;
    PeerRole role = PeerRole::consumer;
};

// Scenario-wide roster, ordered by peer id.
struct PeerRoster {
    std::vector<PeerState> peers;

    PeerState& by_id(PeerId pid) {
        for (auto& p : peers) {
            if (p.id == pid) return p;
        }
        throw InvariantError("unknown peer id " + std::to_string(pid.id));
    }
    const PeerState& by_id(PeerId pid) const {
        return const_cast<PeerRoster*>(this)->by_id(pid);
    }

    MoneyCents total_balance() const {
        MoneyCents sum;
        for (const auto& p : peers) sum += p.balance;
        return sum;
    }
};

inline std::vector<u64> peer_ids_of(const PeerRoster& roster) {
    std::vector<u64> ids;
    ids.reserve(roster.peers.size());
    for (const auto& p : roster.peers) ids.push_back(p.id.id);
    return ids;
}

} // namespace edsim
