// Aggregation of run logs into the reported metric surface: donated energy by
// source, expenses, external cost per unit, and participation rates.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edsim/donation.hpp"
#include "edsim/peer.hpp"
#include "edsim/quantity.hpp"

namespace edsim {

// Exact cost ratio: payment cents per kWh of funded energy.
struct CostPerKwh {
    u64 payment_cents = 0;
    u64 energy_wh = 0; // denominator; undefined cost when zero

    bool defined() const { return energy_wh > 0; }

    // cents/kWh scaled by 1000 (milli-cents), rounded half-up
    u64 milli_cents_per_kwh() const {
        return div_round_half_up(static_cast<u128>(payment_cents) * kWhPerKwh * 1000,
                                 energy_wh);
    }
};

struct DonationReport {
    EnergyWh grid_funded;
    EnergyWh peer_funded;
    EnergyWh peer_direct;
    MoneyCents funded_payments;    // money spent from the external fund
    MoneyCents direct_value;       // peer_direct energy valued at the event's clearing price
    u64 event_count = 0;

    EnergyWh external_donated() const { return grid_funded + peer_funded; }
    EnergyWh internal_donated() const { return peer_direct; }
    EnergyWh total_donated() const { return grid_funded + peer_funded + peer_direct; }
    MoneyCents expenses() const { return funded_payments + direct_value; }
    CostPerKwh external_cost() const {
        return CostPerKwh{funded_payments.cents, external_donated().wh};
    }

    // Source share in parts-per-million of the donated total.
    u64 share_ppm(DonationSource source) const {
        const u64 total = total_donated().wh;
        if (total == 0) return 0;
        u64 part = 0;
        switch (source) {
            case DonationSource::grid_funded: part = grid_funded.wh; break;
            case DonationSource::peer_funded: part = peer_funded.wh; break;
            case DonationSource::peer_direct: part = peer_direct.wh; break;
        }
        return div_round_half_up(static_cast<u128>(part) * 1'000'000, total);
    }
};

// Sums the donation log by source tag. Direct donations are valued at the
// clearing price of their own timestep.
inline DonationReport aggregate(const std::vector<DonationEvent>& events,
                                const std::vector<PriceCentsPerKwh>& clearing_prices) {
    DonationReport report;
    for (const auto& e : events) {
        switch (e.source) {
            case DonationSource::grid_funded:
                report.grid_funded += e.quantity;
                report.funded_payments += e.payment;
                break;
            case DonationSource::peer_funded:
                report.peer_funded += e.quantity;
                report.funded_payments += e.payment;
                break;
            case DonationSource::peer_direct: {
                report.peer_direct += e.quantity;
                if (e.timestep >= clearing_prices.size()) {
                    throw InvariantError("donation event timestep outside price series");
                }
                report.direct_value += energy_cost(e.quantity, clearing_prices[e.timestep]);
                break;
            }
        }
        ++report.event_count;
    }
    return report;
}

struct ParticipationStats {
    u64 peer_count = 0;
    u64 sellers_for_donation = 0; // distinct peer_funded payees
    u64 direct_donors = 0;        // distinct peer_direct donors
    u64 donation_receivers = 0;   // distinct donees
    u64 donors = 0;               // distinct peers that supplied donated energy
    u64 donors_turned_donees = 0;

    static u64 ratio_ppm(u64 part, u64 whole) {
        return whole == 0 ? 0 : div_round_half_up(static_cast<u128>(part) * 1'000'000, whole);
    }
    u64 pct_sellers_for_donation_ppm() const { return ratio_ppm(sellers_for_donation, peer_count); }
    u64 pct_direct_donors_ppm() const { return ratio_ppm(direct_donors, peer_count); }
    u64 pct_donation_receivers_ppm() const { return ratio_ppm(donation_receivers, peer_count); }
    u64 pct_donors_turned_donees_ppm() const { return ratio_ppm(donors_turned_donees, donors); }
};

inline ParticipationStats participation(const std::vector<DonationEvent>& events,
                                        const PeerRoster& roster) {
    std::set<u64> payees, direct_donors, donees, donors;
    for (const auto& e : events) {
        donees.insert(e.donee.id);
        if (e.source == DonationSource::peer_funded && e.payee) {
            payees.insert(e.payee->id);
            donors.insert(e.payee->id);
        }
        if (e.source == DonationSource::peer_direct && e.donor) {
            direct_donors.insert(e.donor->id);
            donors.insert(e.donor->id);
        }
    }
    ParticipationStats stats;
    stats.peer_count = roster.peers.size();
    stats.sellers_for_donation = payees.size();
    stats.direct_donors = direct_donors.size();
    stats.donation_receivers = donees.size();
    stats.donors = donors.size();
    for (u64 d : donors) {
        if (donees.count(d)) ++stats.donors_turned_donees;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Cross-scenario comparison
// ---------------------------------------------------------------------------

struct ReportCell {
    std::string algorithm;
    std::string balance_label; // balance percentage, as percent text
    std::string scenario_key;  // identifies the shared readings + seed
    bool failed = false;
    DonationReport report;
};

// Signed relative change (a - b) / b in milli-percent, rounded half-up.
inline i64 percent_change_milli(u64 a, u64 b) {
    if (b == 0) throw ValidationError("percent change against a zero base");
    const bool neg = a < b;
    const u128 diff = neg ? (static_cast<u128>(b) - a) : (static_cast<u128>(a) - b);
    const u64 magnitude = div_round_half_up(diff * 100'000, b);
    return neg ? -static_cast<i64>(magnitude) : static_cast<i64>(magnitude);
}

struct Comparison {
    std::vector<std::string> balance_labels;
    std::vector<std::string> algorithms;
    std::vector<ReportCell> cells; // row-major: balance label outer, algorithm inner

    const ReportCell& cell(u64 balance_idx, u64 algo_idx) const {
        return cells[balance_idx * algorithms.size() + algo_idx];
    }

    // Mean of total donated energy across balance labels, per algorithm.
    std::vector<u64> average_total_wh() const {
        std::vector<u64> out(algorithms.size(), 0);
        for (u64 a = 0; a < algorithms.size(); ++a) {
            u128 sum = 0;
            u64 n = 0;
            for (u64 b = 0; b < balance_labels.size(); ++b) {
                if (cell(b, a).failed) continue;
                sum += cell(b, a).report.total_donated().wh;
                ++n;
            }
            out[a] = n == 0 ? 0 : div_round_half_up(sum, n);
        }
        return out;
    }
};

// Arranges per-scenario reports into the balance-by-algorithm grid. All cells
// must come from the same scenario set (identical scenario keys).
inline Comparison compare(const std::vector<ReportCell>& cells) {
    if (cells.empty()) throw ValidationError("nothing to compare");
    Comparison cmp;
    for (const auto& c : cells) {
        if (c.scenario_key != cells.front().scenario_key) {
            throw ValidationError("mismatched scenario sets: '" + c.scenario_key +
                                  "' vs '" + cells.front().scenario_key + "'");
        }
        if (std::find(cmp.balance_labels.begin(), cmp.balance_labels.end(), c.balance_label) ==
            cmp.balance_labels.end()) {
            cmp.balance_labels.push_back(c.balance_label);
        }
        if (std::find(cmp.algorithms.begin(), cmp.algorithms.end(), c.algorithm) ==
            cmp.algorithms.end()) {
            cmp.algorithms.push_back(c.algorithm);
        }
    }
    cmp.cells.resize(cmp.balance_labels.size() * cmp.algorithms.size());
    std::vector<bool> filled(cmp.cells.size(), false);
    for (const auto& c : cells) {
        const u64 b = static_cast<u64>(std::find(cmp.balance_labels.begin(),
                                                 cmp.balance_labels.end(), c.balance_label) -
                                       cmp.balance_labels.begin());
        const u64 a = static_cast<u64>(std::find(cmp.algorithms.begin(), cmp.algorithms.end(),
                                                 c.algorithm) -
                                       cmp.algorithms.begin());
        const u64 idx = b * cmp.algorithms.size() + a;
        if (filled[idx]) {
            throw ValidationError("duplicate comparison cell " + c.algorithm + "/" +
                                  c.balance_label);
        }
        filled[idx] = true;
        cmp.cells[idx] = c;
    }
    for (u64 i = 0; i < filled.size(); ++i) {
        if (!filled[i]) {
            cmp.cells[i].failed = true; // absent cell reported as failed
        }
    }
    return cmp;
}

} // namespace edsim
