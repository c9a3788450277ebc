// First-come first-served matching of offers to buy requests, and settlement.
#pragma once

#include <utility>
#include <vector>

#include "edsim/intent.hpp"
#include "edsim/peer.hpp"
#include "edsim/quantity.hpp"

namespace edsim {

struct Trade {
    PeerId seller;
    PeerId buyer;
    EnergyWh quantity;
    PriceCentsPerKwh unit_price;
    u64 timestep = 0;
    MoneyCents payment; // round-half-up(quantity * unit_price), fixed at match time
};

struct ResidualEntry {
    PeerId peer;
    EnergyWh quantity;
};

// What is left after the trading phase, in arrival order. The donation phase
// consumes surplus and donation_need; unmet buy need goes unserved.
struct MarketResidual {
    std::vector<ResidualEntry> surplus;
    std::vector<ResidualEntry> unmet_buys;
    std::vector<ResidualEntry> donation_need;

    EnergyWh total_surplus() const {
        EnergyWh sum;
        for (const auto& e : surplus) sum += e.quantity;
        return sum;
    }
    EnergyWh total_donation_need() const {
        EnergyWh sum;
        for (const auto& e : donation_need) sum += e.quantity;
        return sum;
    }
};

// Walks requests in arrival order, filling each from offers in arrival order.
// Intents split as needed; stops when either side is exhausted.
//
// `budgets`, when given, is aligned with `requests` and caps each buyer's
// fills so that the per-trade rounded payments never exceed it. Splitting one
// request across sellers rounds each payment separately, so a buyer whose
// balance only just covered the whole quantity could otherwise overdraw.
inline std::pair<std::vector<Trade>, MarketResidual> match_fcfs(
    const std::vector<MarketIntent>& offers, const std::vector<MarketIntent>& requests,
    PriceCentsPerKwh price, u64 timestep = 0,
    const std::vector<MoneyCents>* budgets = nullptr) {
    std::vector<Trade> trades;
    MarketResidual residual;

    size_t oi = 0;
    EnergyWh offer_left = offers.empty() ? EnergyWh{} : offers[0].quantity;
    for (size_t ri = 0; ri < requests.size(); ++ri) {
        const auto& req = requests[ri];
        EnergyWh need = req.quantity;
        MoneyCents budget = budgets ? (*budgets)[ri] : MoneyCents{~u64{0}};
        while (need.wh > 0 && oi < offers.size()) {
            if (offer_left.wh == 0) {
                if (++oi >= offers.size()) break;
                offer_left = offers[oi].quantity;
                continue;
            }
            const EnergyWh cap = affordable_energy(budget, price);
            const EnergyWh fill{std::min({need.wh, offer_left.wh, cap.wh})};
            if (fill.wh == 0) break; // budget exhausted at this price
            const MoneyCents payment = energy_cost(fill, price);
            trades.push_back(Trade{offers[oi].peer, req.peer, fill, price, timestep, payment});
            budget -= payment;
            need -= fill;
            offer_left -= fill;
        }
        if (need.wh > 0) residual.unmet_buys.push_back({req.peer, need});
    }
    if (oi < offers.size()) {
        if (offer_left.wh > 0) residual.surplus.push_back({offers[oi].peer, offer_left});
        for (size_t i = oi + 1; i < offers.size(); ++i) {
            residual.surplus.push_back({offers[i].peer, offers[i].quantity});
        }
    }
    return {std::move(trades), std::move(residual)};
}

// Moves each trade's payment from buyer to seller. The community balance sum
// is unchanged; an underflow signals an upstream affordability bug.
inline void settle(const std::vector<Trade>& trades, PeerRoster& roster) {
    for (const auto& t : trades) {
        roster.by_id(t.buyer).balance -= t.payment;
        roster.by_id(t.seller).balance += t.payment;
    }
}

} // namespace edsim
