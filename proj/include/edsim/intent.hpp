// Per-timestep market intents and the peer decision rule.
#pragma once

#include <optional>
#include <string>

#include "edsim/peer.hpp"
#include "edsim/quantity.hpp"

namespace edsim {

enum class IntentKind { offer, buy_request, donation_request };

inline const char* to_string(IntentKind kind) {
    switch (kind) {
        case IntentKind::offer: return "offer";
        case IntentKind::buy_request: return "buy_request";
        case IntentKind::donation_request: return "donation_request";
    }
    return "?";
}

struct MarketIntent {
    PeerId peer;
    IntentKind kind = IntentKind::offer;
    EnergyWh quantity;
    u64 arrival_order = 0;
};

// A peer either sells its surplus, buys its need when the balance covers the
// full cost at the reference price, or asks for the need to be donated.
// Returns nullopt when the net position is exactly zero.
inline std::optional<IntentKind> classify_intent(i64 net, MoneyCents balance,
                                                 PriceCentsPerKwh unit_price) {
    if (net == 0) return std::nullopt;
    if (net > 0) return IntentKind::offer;
    const EnergyWh need{static_cast<u64>(-net)};
    if (balance >= energy_cost(need, unit_price)) return IntentKind::buy_request;
    return IntentKind::donation_request;
}

} // namespace edsim
