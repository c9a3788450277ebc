// The four donation allocation mechanisms over post-trading residuals:
// grid-funded (UG2D), prosumer-funded (P2D), direct peer donation (P2PD),
// and the hybrid that chains all three per recipient (HED).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edsim/peer.hpp"
#include "edsim/quantity.hpp"
#include "edsim/trading.hpp"

namespace edsim {

enum class FundEntryKind { deposit, grid_payment, prosumer_payment };

inline const char* to_string(FundEntryKind kind) {
    switch (kind) {
        case FundEntryKind::deposit: return "deposit";
        case FundEntryKind::grid_payment: return "grid_payment";
        case FundEntryKind::prosumer_payment: return "prosumer_payment";
    }
    return "?";
}

struct FundEntry {
    u64 timestep = 0;
    FundEntryKind kind = FundEntryKind::deposit;
    MoneyCents amount;
    std::optional<PeerId> counterparty; // the paid prosumer, when kind is prosumer_payment
};

// The external-donation fund with an append-only history. The available
// balance always equals deposits minus payments and never goes negative.
struct FundLedger {
    MoneyCents available;
    std::vector<FundEntry> entries;

    void deposit(u64 timestep, MoneyCents amount) {
        available += amount;
        entries.push_back({timestep, FundEntryKind::deposit, amount, std::nullopt});
    }

    void pay_grid(u64 timestep, MoneyCents amount) {
        available -= amount; // throws on underflow
        if (amount.cents > 0) {
            entries.push_back({timestep, FundEntryKind::grid_payment, amount, std::nullopt});
        }
    }

    void pay_prosumer(u64 timestep, PeerId prosumer, MoneyCents amount) {
        available -= amount;
        if (amount.cents > 0) {
            entries.push_back({timestep, FundEntryKind::prosumer_payment, amount, prosumer});
        }
    }

    // Recomputes the balance from the history; equality with `available` is a
    // standing invariant.
    MoneyCents replay() const {
        MoneyCents balance;
        for (const auto& e : entries) {
            if (e.kind == FundEntryKind::deposit) {
                balance += e.amount;
            } else {
                balance -= e.amount;
            }
        }
        return balance;
    }
};

enum class DonationSource { grid_funded, peer_funded, peer_direct };

inline const char* to_string(DonationSource source) {
    switch (source) {
        case DonationSource::grid_funded: return "grid_funded";
        case DonationSource::peer_funded: return "peer_funded";
        case DonationSource::peer_direct: return "peer_direct";
    }
    return "?";
}

struct DonationEvent {
    PeerId donee;
    EnergyWh quantity;
    DonationSource source = DonationSource::grid_funded;
    std::optional<PeerId> payee; // paid prosumer for peer_funded; none otherwise
    std::optional<PeerId> donor; // supplying prosumer for peer-sourced energy
    MoneyCents payment;          // zero for peer_direct
    u64 timestep = 0;
};

namespace detail {

// Fund-purchase from prosumer surplus for one recipient, first-come
// first-served over the surplus entries. Decrements surplus and need.
inline void buy_from_prosumers(std::vector<ResidualEntry>& surplus, EnergyWh& need,
                               FundLedger& ledger, PriceCentsPerKwh price, PeerId donee,
                               u64 timestep, std::vector<DonationEvent>& out) {
    for (auto& entry : surplus) {
        if (need.wh == 0) break;
        if (entry.quantity.wh == 0) continue;
        const EnergyWh cap = affordable_energy(ledger.available, price);
        const EnergyWh q{std::min({need.wh, entry.quantity.wh, cap.wh})};
        if (q.wh == 0) break; // fund exhausted at this price
        const MoneyCents payment = energy_cost(q, price);
        ledger.pay_prosumer(timestep, entry.peer, payment);
        entry.quantity -= q;
        need -= q;
        out.push_back({donee, q, DonationSource::peer_funded, entry.peer, entry.peer, payment,
                       timestep});
    }
}

// Fund-purchase from the (unbounded) grid for one recipient.
inline void buy_from_grid(EnergyWh& need, FundLedger& ledger, PriceCentsPerKwh up,
                          PeerId donee, u64 timestep, std::vector<DonationEvent>& out) {
    const EnergyWh cap = affordable_energy(ledger.available, up);
    const EnergyWh q{std::min(need.wh, cap.wh)};
    if (q.wh == 0) return;
    const MoneyCents payment = energy_cost(q, up);
    ledger.pay_grid(timestep, payment);
    need -= q;
    out.push_back({donee, q, DonationSource::grid_funded, std::nullopt, std::nullopt, payment,
                   timestep});
}

// Unpaid direct donation from willing prosumers' surplus for one recipient.
inline void donate_direct(std::vector<ResidualEntry>& surplus, EnergyWh& need,
                          const PeerRoster& roster, PeerId donee, u64 timestep,
                          std::vector<DonationEvent>& out) {
    for (auto& entry : surplus) {
        if (need.wh == 0) break;
        if (entry.quantity.wh == 0) continue;
        if (!roster.by_id(entry.peer).willing_to_donate) continue;
        const EnergyWh q{std::min(need.wh, entry.quantity.wh)};
        entry.quantity -= q;
        need -= q;
        out.push_back({donee, q, DonationSource::peer_direct, std::nullopt, entry.peer,
                       MoneyCents{}, timestep});
    }
}

} // namespace detail

// Fund pays the utility grid; grid supply is unbounded.
inline std::vector<DonationEvent> run_ug2d(const MarketResidual& residual, FundLedger& ledger,
                                           PriceCentsPerKwh up, u64 timestep = 0) {
    std::vector<DonationEvent> events;
    for (const auto& donee : residual.donation_need) {
        EnergyWh need = donee.quantity;
        detail::buy_from_grid(need, ledger, up, donee.peer, timestep, events);
    }
    return events;
}

// Fund pays prosumers for their residual surplus at the clearing price.
inline std::vector<DonationEvent> run_p2d(const MarketResidual& residual, FundLedger& ledger,
                                          PriceCentsPerKwh clearing, u64 timestep = 0) {
    std::vector<DonationEvent> events;
    std::vector<ResidualEntry> surplus = residual.surplus;
    for (const auto& donee : residual.donation_need) {
        EnergyWh need = donee.quantity;
        detail::buy_from_prosumers(surplus, need, ledger, clearing, donee.peer, timestep,
                                   events);
    }
    return events;
}

// Willing prosumers donate surplus directly; no payments, no fund.
inline std::vector<DonationEvent> run_p2pd(const MarketResidual& residual,
                                           const PeerRoster& roster, u64 timestep = 0) {
    std::vector<DonationEvent> events;
    std::vector<ResidualEntry> surplus = residual.surplus;
    for (const auto& donee : residual.donation_need) {
        EnergyWh need = donee.quantity;
        detail::donate_direct(surplus, need, roster, donee.peer, timestep, events);
    }
    return events;
}

// Hybrid: per recipient, fund-purchase from prosumers first, then from the
// grid, then fill what remains from willing prosumers directly.
inline std::vector<DonationEvent> run_hed(const MarketResidual& residual, FundLedger& ledger,
                                          PriceCentsPerKwh clearing, PriceCentsPerKwh up,
                                          const PeerRoster& roster, u64 timestep = 0) {
    std::vector<DonationEvent> events;
    std::vector<ResidualEntry> surplus = residual.surplus;
    for (const auto& donee : residual.donation_need) {
        EnergyWh need = donee.quantity;
        detail::buy_from_prosumers(surplus, need, ledger, clearing, donee.peer, timestep,
                                   events);
        detail::buy_from_grid(need, ledger, up, donee.peer, timestep, events);
        detail::donate_direct(surplus, need, roster, donee.peer, timestep, events);
    }
    return events;
}

} // namespace edsim
