// Scenario orchestration: per-timestep credits, intent collection, pricing,
// trading, donation, and minting. One run is strictly sequential; matrix
// sweeps may execute runs in parallel.
#pragma once

#include <atomic>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "edsim/config.hpp"
#include "edsim/donation.hpp"
#include "edsim/governance.hpp"
#include "edsim/intent.hpp"
#include "edsim/metrics.hpp"
#include "edsim/pricing.hpp"
#include "edsim/schedule.hpp"
#include "edsim/trading.hpp"

namespace edsim {

struct RunArtifacts {
    ScenarioConfig config;
    TimeAxis axis;
    PeerRoster roster; // final balances
    std::vector<Trade> trades;
    std::vector<DonationEvent> donations;
    std::vector<PriceCentsPerKwh> clearing_prices;
    FundLedger fund;
    TokenLedger tokens;
    BalanceSchedule balance_schedule;
    DonationSchedule donation_schedule;
    MoneyCents credits_total;
    MoneyCents forfeited_total; // balances discarded at month starts without carryover
    DonationReport report;
    ParticipationStats participation_stats;

    ReportCell report_cell() const {
        return ReportCell{to_string(config.donation_algorithm), config.balance_label(),
                          config.scenario_key(), false, report};
    }
};

namespace detail {

inline void check(bool ok, u64 timestep, const char* invariant) {
    if (!ok) {
        throw InvariantError("timestep " + std::to_string(timestep) +
                             ": invariant violated: " + std::string(invariant));
    }
}

// Donated peer-sourced energy must fit inside the pre-donation surplus, and
// no donee may receive more than it asked for.
inline void verify_donation_phase(const MarketResidual& residual,
                                  const std::vector<DonationEvent>& events, u64 timestep) {
    EnergyWh peer_sourced;
    for (const auto& e : events) {
        if (e.source != DonationSource::grid_funded) peer_sourced += e.quantity;
    }
    check(peer_sourced <= residual.total_surplus(), timestep,
          "donated peer energy within residual surplus");
    for (const auto& donee : residual.donation_need) {
        EnergyWh received;
        for (const auto& e : events) {
            if (e.donee == donee.peer) received += e.quantity;
        }
        check(received <= donee.quantity, timestep, "donee not over-served");
    }
}

} // namespace detail

inline RunArtifacts run_scenario(const ScenarioConfig& config, const ReadingSeries& readings) {
    config.validate();

    RunArtifacts art;
    art.config = config;
    art.axis = readings.axis();

    const UtilityPrices prices = config.utility_price.align(art.axis);
    if (config.fit_cents_per_kwh > prices.min_over(art.axis.count)) {
        throw ValidationError("fit_cents_per_kwh exceeds the minimum utility price");
    }

    art.roster = readings.make_roster();
    for (auto& peer : art.roster.peers) {
        bool willing = true;
        if (config.donor_fraction < 1.0) {
            willing = Rng::stream(config.seed, 0x77696c6c /* "will" */, peer.id.id)
                          .next_below(1'000'000) <
                      static_cast<u64>(config.donor_fraction * 1e6 + 0.5);
        }
        auto it = config.willingness_overrides.find(peer.id.id);
        if (it != config.willingness_overrides.end()) willing = it->second;
        peer.willing_to_donate = willing;
    }

    std::set<u64> eligible(config.eligible_peers.begin(), config.eligible_peers.end());

    art.balance_schedule = build_balance_schedule(
        readings, prices, Percentage::from_double(config.balance_percentage));
    art.donation_schedule = build_donation_schedule(art.balance_schedule);

    PriceState price_state = PriceState::initial(config.fit_cents_per_kwh, prices.at(0));
    u64 month_idx = 0;

    std::vector<u64> permutation(readings.peer_count());
    std::vector<MarketIntent> offers, buys, donation_requests;

    for (u64 t = 0; t < art.axis.count; ++t) {
        const PriceCentsPerKwh up = prices.at(t);

        // (1) month-boundary balance credits and fund deposit
        if (art.axis.month_boundary(t)) {
            if (t > 0) ++month_idx;
            if (t == 0) month_idx = 0;
            for (u64 p = 0; p < readings.peer_count(); ++p) {
                PeerState& peer = art.roster.peers[p];
                const MoneyCents credit = art.balance_schedule.credits[p][month_idx];
                if (!config.balance_carryover) {
                    art.forfeited_total += peer.balance;
                    peer.balance = MoneyCents{};
                }
                peer.balance += credit;
                art.credits_total += credit;
            }
            art.fund.deposit(t, art.donation_schedule.monthly_deposit);
        }

        // (2) intent collection at the previous clearing price, in a seeded
        // per-timestep arrival order
        const PriceCentsPerKwh reference_price = price_state.previous();
        for (u64 i = 0; i < permutation.size(); ++i) permutation[i] = i;
        Rng::stream(config.seed, 0x73746570 /* "step" */, t).shuffle(permutation);

        offers.clear();
        buys.clear();
        donation_requests.clear();
        for (u64 pos = 0; pos < permutation.size(); ++pos) {
            const u64 p = permutation[pos];
            PeerState& peer = art.roster.peers[p];
            const Reading& r = readings.at(p, t);
            const i64 net = net_position(r.production, r.consumption);
            const auto kind = classify_intent(net, peer.balance, reference_price);
            if (!kind) continue;
            const EnergyWh quantity{static_cast<u64>(net > 0 ? net : -net)};
            MarketIntent intent{peer.id, *kind, quantity, pos};
            switch (*kind) {
                case IntentKind::offer:
                    offers.push_back(intent);
                    break;
                case IntentKind::buy_request:
                    buys.push_back(intent);
                    break;
                case IntentKind::donation_request:
                    if (config.auto_approve_eligibility || eligible.count(peer.id.id)) {
                        donation_requests.push_back(intent);
                    }
                    break;
            }
        }

        // (3) clearing price from the submitted quantities
        DemandSupplySnapshot snap;
        for (const auto& o : offers) snap.offers += o.quantity;
        for (const auto& b : buys) snap.requests += b.quantity;
        const PriceCentsPerKwh clearing = clearing_price(price_state, snap, up);
        art.clearing_prices.push_back(clearing);

        // (4) FCFS matching and settlement. Affordability was checked at the
        // previous price, so fills are budget-capped at the actual clearing
        // price; settlement can then never underflow a balance.
        std::vector<MoneyCents> budgets;
        budgets.reserve(buys.size());
        for (const auto& b : buys) budgets.push_back(art.roster.by_id(b.peer).balance);
        auto [trades, residual] = match_fcfs(offers, buys, clearing, t, &budgets);
        settle(trades, art.roster);
        for (auto& tr : trades) art.trades.push_back(tr);

        // (5) the configured donation algorithm over the residuals
        for (const auto& d : donation_requests) {
            residual.donation_need.push_back({d.peer, d.quantity});
        }
        std::vector<DonationEvent> events;
        switch (config.donation_algorithm) {
            case Algorithm::ug2d:
                events = run_ug2d(residual, art.fund, up, t);
                break;
            case Algorithm::p2d:
                events = run_p2d(residual, art.fund, clearing, t);
                break;
            case Algorithm::p2pd:
                events = run_p2pd(residual, art.roster, t);
                break;
            case Algorithm::hed:
                events = run_hed(residual, art.fund, clearing, up, art.roster, t);
                break;
        }
        detail::verify_donation_phase(residual, events, t);

        // (6) settle prosumer payments and mint proof-of-donation tokens
        for (const auto& e : events) {
            if (e.source == DonationSource::peer_funded && e.payee) {
                art.roster.by_id(*e.payee).balance += e.payment;
            }
            mint_on_donation(art.tokens, e, config.mint_tokens_per_kwh);
            art.donations.push_back(e);
        }
    }

    // Whole-run accounting checks: ledger replay and money conservation.
    detail::check(art.fund.replay() == art.fund.available, art.axis.count,
                  "fund ledger replay equality");
    MoneyCents grid_paid;
    for (const auto& e : art.fund.entries) {
        if (e.kind == FundEntryKind::grid_payment) grid_paid += e.amount;
    }
    MoneyCents deposits_total;
    for (const auto& e : art.fund.entries) {
        if (e.kind == FundEntryKind::deposit) deposits_total += e.amount;
    }
    const MoneyCents money_in = art.credits_total + deposits_total;
    const MoneyCents money_held =
        art.roster.total_balance() + art.fund.available + grid_paid + art.forfeited_total;
    detail::check(money_in == money_held, art.axis.count, "money conservation");

    art.report = aggregate(art.donations, art.clearing_prices);
    art.participation_stats = participation(art.donations, art.roster);
    return art;
}

inline ReadingSeries load_readings(const ScenarioConfig& config) {
    if (config.readings_path.empty() == !config.synthetic.has_value()) {
        throw ValidationError("exactly one of readings_path or synthetic is required");
    }
    if (config.synthetic) return generate_synthetic(*config.synthetic);
    std::ifstream in(config.readings_path);
    if (!in) {
        throw ValidationError("cannot open readings file '" + config.readings_path + "'");
    }
    return parse_readings(in, config.column_mapping);
}

inline RunArtifacts run_scenario(const ScenarioConfig& config) {
    const ReadingSeries readings = load_readings(config);
    return run_scenario(config, readings);
}

// One matrix cell: artifacts on success, an error line otherwise.
struct MatrixCell {
    ScenarioConfig config;
    std::optional<RunArtifacts> artifacts;
    std::string error;
};

struct MatrixOutcome {
    std::vector<MatrixCell> cells;
    Comparison comparison;

    bool all_ok() const {
        for (const auto& c : cells) {
            if (!c.artifacts) return false;
        }
        return true;
    }
};

inline MatrixOutcome run_matrix(const MatrixConfig& matrix, unsigned jobs = 1) {
    const ReadingSeries readings = load_readings(matrix.base);
    MatrixOutcome outcome;
    const std::vector<ScenarioConfig> configs = matrix.cells();
    outcome.cells.resize(configs.size());
    for (size_t i = 0; i < configs.size(); ++i) outcome.cells[i].config = configs[i];

    auto run_cell = [&](size_t i) {
        try {
            outcome.cells[i].artifacts = run_scenario(configs[i], readings);
        } catch (const std::exception& e) {
            outcome.cells[i].error = e.what();
        }
    };

    if (jobs <= 1 || configs.size() <= 1) {
        for (size_t i = 0; i < configs.size(); ++i) run_cell(i);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(configs.size()));
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&]() {
                for (size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
                    run_cell(i);
                }
            });
        }
        for (auto& th : workers) th.join();
    }

    std::vector<ReportCell> report_cells;
    for (const auto& cell : outcome.cells) {
        ReportCell rc;
        if (cell.artifacts) {
            rc = cell.artifacts->report_cell();
        } else {
            rc.algorithm = to_string(cell.config.donation_algorithm);
            rc.balance_label = cell.config.balance_label();
            rc.scenario_key = cell.config.scenario_key();
            rc.failed = true;
        }
        report_cells.push_back(rc);
    }
    outcome.comparison = compare(report_cells);
    return outcome;
}

} // namespace edsim
