// Run artifact serialization: CSV/JSONL logs, reports, comparison tables.
// Everything is rendered through integer math so identical runs produce
// byte-identical files on any platform.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsim/engine.hpp"

namespace edsim {

// value / 10^scale rendered with exactly `scale` fractional digits
inline std::string format_scaled(u64 value, unsigned scale) {
    u64 div = 1;
    for (unsigned i = 0; i < scale; ++i) div *= 10;
    std::string frac = std::to_string(value % div);
    frac.insert(frac.begin(), scale - frac.size(), '0');
    return std::to_string(value / div) + "." + frac;
}

inline std::string format_milli_percent(i64 mp) {
    const std::string sign = mp < 0 ? "-" : "+";
    const u64 mag = static_cast<u64>(mp < 0 ? -mp : mp);
    return sign + format_scaled(mag, 3) + "%";
}

// ---------------------------------------------------------------------------
// CSV logs
// ---------------------------------------------------------------------------

inline std::string serialize_trades(const std::vector<Trade>& trades) {
    std::string out = "timestep,seller,buyer,quantity_wh,unit_price_cents,payment_cents\n";
    for (const auto& t : trades) {
        out += std::to_string(t.timestep) + ',' + std::to_string(t.seller.id) + ',' +
               std::to_string(t.buyer.id) + ',' + std::to_string(t.quantity.wh) + ',' +
               std::to_string(t.unit_price) + ',' + std::to_string(t.payment.cents) + '\n';
    }
    return out;
}

inline std::string serialize_donations(const std::vector<DonationEvent>& events) {
    std::string out = "timestep,donee,quantity_wh,source,payee,payment_cents\n";
    for (const auto& e : events) {
        out += std::to_string(e.timestep) + ',' + std::to_string(e.donee.id) + ',' +
               std::to_string(e.quantity.wh) + ',' + to_string(e.source) + ',';
        if (e.payee) {
            out += std::to_string(e.payee->id);
        } else if (e.source == DonationSource::grid_funded) {
            out += "grid";
        }
        out += ',' + std::to_string(e.payment.cents) + '\n';
    }
    return out;
}

inline std::string serialize_fund_ledger(const FundLedger& fund) {
    std::string out = "timestep,kind,amount_cents,counterparty\n";
    for (const auto& e : fund.entries) {
        out += std::to_string(e.timestep) + ',' + to_string(e.kind) + ',' +
               std::to_string(e.amount.cents) + ',';
        if (e.counterparty) out += std::to_string(e.counterparty->id);
        out += '\n';
    }
    return out;
}

inline std::string serialize_prices(const std::vector<PriceCentsPerKwh>& prices) {
    std::string out = "timestep,clearing_price_cents_per_kwh\n";
    for (size_t t = 0; t < prices.size(); ++t) {
        out += std::to_string(t) + ',' + std::to_string(prices[t]) + '\n';
    }
    return out;
}

inline std::string serialize_credits(const BalanceSchedule& schedule,
                                     const std::vector<u64>& peer_ids) {
    std::string out = "year,month,peer,credit_cents\n";
    for (u64 m = 0; m < schedule.months.size(); ++m) {
        for (u64 p = 0; p < peer_ids.size(); ++p) {
            out += std::to_string(schedule.months[m].year) + ',' +
                   std::to_string(schedule.months[m].month) + ',' +
                   std::to_string(peer_ids[p]) + ',' +
                   std::to_string(schedule.credits[p][m].cents) + '\n';
        }
    }
    return out;
}

inline std::string serialize_balances(const PeerRoster& roster) {
    std::string out = "peer,role,willing_to_donate,balance_cents\n";
    for (const auto& p : roster.peers) {
        out += std::to_string(p.id.id) + ',' + to_string(p.role) + ',' +
               (p.willing_to_donate ? "true" : "false") + ',' +
               std::to_string(p.balance.cents) + '\n';
    }
    return out;
}

inline std::string serialize_token_balances(const TokenLedger& tokens) {
    std::string out = "account,balance\n";
    for (const auto& [account, balance] : tokens.balances) {
        out += token_account_name(account) + ',' + std::to_string(balance) + '\n';
    }
    out += "total_supply," + std::to_string(tokens.total_supply) + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Governance log (JSON lines)
// ---------------------------------------------------------------------------

inline nlohmann::json token_record_to_json(const TokenRecord& r) {
    nlohmann::json j;
    j["type"] = r.kind == TokenRecordKind::mint ? "mint" : "burn";
    j["account"] = token_account_name(r.account);
    j["amount"] = r.amount;
    j["timestep"] = r.timestep;
    if (r.donee) j["donee"] = *r.donee;
    if (r.source) j["source"] = to_string(*r.source);
    if (r.proposal) j["proposal"] = *r.proposal;
    return j;
}

inline nlohmann::json vote_to_json(const Vote& v) {
    nlohmann::json j;
    j["type"] = "vote";
    j["voter"] = v.voter.id;
    j["proposal"] = v.proposal;
    j["direction"] = v.in_favor ? "for" : "against";
    j["burn_amount"] = v.burn_amount;
    return j;
}

inline nlohmann::json proposal_to_json(const EligibilityProposal& p) {
    nlohmann::json j;
    j["type"] = "resolve";
    j["proposal"] = p.id;
    j["subject"] = p.subject.id;
    j["status"] = to_string(p.status);
    j["for_weight"] = p.for_weight;
    j["against_weight"] = p.against_weight;
    j["quorum"] = p.quorum;
    return j;
}

inline std::string serialize_governance(const TokenLedger& tokens) {
    std::string out;
    for (const auto& r : tokens.records) {
        out += token_record_to_json(r).dump() + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Per-run report
// ---------------------------------------------------------------------------

inline nlohmann::json report_to_json(const RunArtifacts& art) {
    const DonationReport& r = art.report;
    const ParticipationStats& ps = art.participation_stats;
    nlohmann::json j;
    j["scenario"] = {{"name", art.config.name},
                     {"algorithm", to_string(art.config.donation_algorithm)},
                     {"balance_percentage", art.config.balance_percentage},
                     {"balance_label", art.config.balance_label()},
                     {"seed", art.config.seed},
                     {"scenario_key", art.config.scenario_key()}};
    j["donated"] = {{"grid_funded_wh", r.grid_funded.wh},
                    {"peer_funded_wh", r.peer_funded.wh},
                    {"peer_direct_wh", r.peer_direct.wh},
                    {"external_wh", r.external_donated().wh},
                    {"internal_wh", r.internal_donated().wh},
                    {"total_wh", r.total_donated().wh},
                    {"event_count", r.event_count}};
    j["shares_ppm"] = {{"grid_funded", r.share_ppm(DonationSource::grid_funded)},
                       {"peer_funded", r.share_ppm(DonationSource::peer_funded)},
                       {"peer_direct", r.share_ppm(DonationSource::peer_direct)}};
    j["money"] = {{"funded_payments_cents", r.funded_payments.cents},
                  {"direct_value_cents", r.direct_value.cents},
                  {"expenses_cents", r.expenses().cents},
                  {"fund_available_cents", art.fund.available.cents},
                  {"credits_total_cents", art.credits_total.cents},
                  {"monthly_deposit_cents", art.donation_schedule.monthly_deposit.cents}};
    const CostPerKwh cost = r.external_cost();
    if (cost.defined()) {
        j["external_cost"] = {{"payment_cents", cost.payment_cents},
                              {"energy_wh", cost.energy_wh},
                              {"milli_cents_per_kwh", cost.milli_cents_per_kwh()}};
    } else {
        j["external_cost"] = nullptr;
    }
    j["participation"] = {{"peers", ps.peer_count},
                          {"sellers_for_donation", ps.sellers_for_donation},
                          {"direct_donors", ps.direct_donors},
                          {"donation_receivers", ps.donation_receivers},
                          {"donors", ps.donors},
                          {"donors_turned_donees", ps.donors_turned_donees},
                          {"pct_sellers_for_donation_ppm", ps.pct_sellers_for_donation_ppm()},
                          {"pct_direct_donors_ppm", ps.pct_direct_donors_ppm()},
                          {"pct_donation_receivers_ppm", ps.pct_donation_receivers_ppm()},
                          {"pct_donors_turned_donees_ppm", ps.pct_donors_turned_donees_ppm()}};
    j["tokens"] = {{"total_supply", art.tokens.total_supply}};
    return j;
}

inline std::string render_report_table(const RunArtifacts& art) {
    const DonationReport& r = art.report;
    std::string out;
    out += "scenario: " + art.config.name + "  algorithm: " +
           to_string(art.config.donation_algorithm) + "  balance %: " +
           art.config.balance_label() + "\n";
    out += "  External Donations (MW)  " + format_scaled(r.external_donated().wh, 6) + "\n";
    out += "  Internal Donations (GW)  " + format_scaled(r.internal_donated().wh, 9) + "\n";
    out += "  Total Donated (MW)       " + format_scaled(r.total_donated().wh, 6) + "\n";
    out += "  Expenses (EUR)           " + format_scaled(r.expenses().cents, 2) + "\n";
    const CostPerKwh cost = r.external_cost();
    out += "  External cost (c/kWh)    " +
           (cost.defined() ? format_scaled(cost.milli_cents_per_kwh(), 3) : "undefined") + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Comparison table (the donated-energy matrix plus averages)
// ---------------------------------------------------------------------------

namespace detail {

// External/internal split mirrors the source of each algorithm's donations:
// purely direct algorithms have no external row value and funded-only
// algorithms have no internal row value.
inline bool algorithm_has_external(const std::string& algo) { return algo != "p2pd"; }
inline bool algorithm_has_internal(const std::string& algo) {
    return algo == "p2pd" || algo == "hed";
}

inline std::string comparison_value(const ReportCell& cell, const std::string& metric) {
    if (cell.failed) return "FAILED";
    const DonationReport& r = cell.report;
    if (metric == "External Donations (MW)") {
        if (!algorithm_has_external(cell.algorithm)) return "N.A.";
        return format_scaled(r.external_donated().wh, 6);
    }
    if (metric == "Internal Donations (GW)") {
        if (!algorithm_has_internal(cell.algorithm)) return "N.A.";
        return format_scaled(r.internal_donated().wh, 9);
    }
    return format_scaled(r.total_donated().wh, 6);
}

} // namespace detail

inline const std::vector<std::string>& comparison_metrics() {
    static const std::vector<std::string> metrics = {
        "External Donations (MW)", "Internal Donations (GW)", "Total Donated (MW)"};
    return metrics;
}

inline std::string render_comparison_csv(const Comparison& cmp) {
    std::string out = "metric,balance_percentage,algorithm,value\n";
    for (const auto& metric : comparison_metrics()) {
        for (u64 b = 0; b < cmp.balance_labels.size(); ++b) {
            for (u64 a = 0; a < cmp.algorithms.size(); ++a) {
                out += '"' + metric + "\"," + cmp.balance_labels[b] + ',' +
                       cmp.algorithms[a] + ',' +
                       detail::comparison_value(cmp.cell(b, a), metric) + '\n';
            }
        }
    }
    return out;
}

inline std::string render_comparison_table(const Comparison& cmp) {
    constexpr unsigned kMetricWidth = 26;
    constexpr unsigned kCellWidth = 15;
    auto pad = [](std::string s, unsigned width) {
        if (s.size() < width) s.append(width - s.size(), ' ');
        return s;
    };

    std::string out = pad("Metric", kMetricWidth);
    for (const auto& label : cmp.balance_labels) {
        out += "| " + pad("Balance Percentage: " + label,
                          kCellWidth * static_cast<unsigned>(cmp.algorithms.size()));
    }
    out += '\n';
    out += pad("", kMetricWidth);
    for (u64 b = 0; b < cmp.balance_labels.size(); ++b) {
        out += "| ";
        for (const auto& algo : cmp.algorithms) out += pad(algo, kCellWidth);
    }
    out += '\n';
    for (const auto& metric : comparison_metrics()) {
        out += pad(metric, kMetricWidth);
        for (u64 b = 0; b < cmp.balance_labels.size(); ++b) {
            out += "| ";
            for (u64 a = 0; a < cmp.algorithms.size(); ++a) {
                out += pad(detail::comparison_value(cmp.cell(b, a), metric), kCellWidth);
            }
        }
        out += '\n';
    }

    const std::vector<u64> averages = cmp.average_total_wh();
    out += "\nAverage Total Donated across balance percentages (MW):\n";
    for (u64 a = 0; a < cmp.algorithms.size(); ++a) {
        out += "  " + pad(cmp.algorithms[a], 6) + format_scaled(averages[a], 6) + '\n';
    }
    out += "Pairwise change of average total donated:\n";
    for (u64 a = 0; a < cmp.algorithms.size(); ++a) {
        for (u64 b = 0; b < cmp.algorithms.size(); ++b) {
            if (a == b || averages[b] == 0) continue;
            out += "  " + cmp.algorithms[a] + " vs " + cmp.algorithms[b] + ": " +
                   format_milli_percent(percent_change_milli(averages[a], averages[b])) + '\n';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Filesystem output
// ---------------------------------------------------------------------------

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << content;
}

inline void write_artifacts(const RunArtifacts& art, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / "trades.csv", serialize_trades(art.trades));
    write_text_file(out_dir / "donations.csv", serialize_donations(art.donations));
    write_text_file(out_dir / "fund_ledger.csv", serialize_fund_ledger(art.fund));
    write_text_file(out_dir / "prices.csv", serialize_prices(art.clearing_prices));
    write_text_file(out_dir / "credits.csv",
                    serialize_credits(art.balance_schedule, peer_ids_of(art.roster)));
    write_text_file(out_dir / "balances.csv", serialize_balances(art.roster));
    write_text_file(out_dir / "tokens.csv", serialize_token_balances(art.tokens));
    write_text_file(out_dir / "governance.jsonl", serialize_governance(art.tokens));
    write_text_file(out_dir / "report.json", report_to_json(art).dump(2) + "\n");
    write_text_file(out_dir / "report.txt", render_report_table(art));
}

inline void write_matrix(const MatrixOutcome& outcome, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& cell : outcome.cells) {
        if (cell.artifacts) {
            write_artifacts(*cell.artifacts, out_dir / cell.config.name);
        } else {
            std::filesystem::create_directories(out_dir / cell.config.name);
            write_text_file(out_dir / cell.config.name / "error.txt", cell.error + "\n");
        }
    }
    write_text_file(out_dir / "comparison.csv", render_comparison_csv(outcome.comparison));
    write_text_file(out_dir / "comparison.txt", render_comparison_table(outcome.comparison));
}

} // namespace edsim
