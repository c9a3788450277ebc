// Scenario and sweep configuration: a single JSON file defines one run; a
// matrix file defines a base plus algorithm/balance sweeps.
#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsim/csv.hpp"
#include "edsim/ingest.hpp"
#include "edsim/schedule.hpp"
#include "edsim/synthetic.hpp"

namespace edsim {

enum class Algorithm { ug2d, p2d, p2pd, hed };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ug2d: return "ug2d";
        case Algorithm::p2d: return "p2d";
        case Algorithm::p2pd: return "p2pd";
        case Algorithm::hed: return "hed";
    }
    return "?";
}

inline Algorithm algorithm_from_string(const std::string& name) {
    if (name == "ug2d") return Algorithm::ug2d;
    if (name == "p2d") return Algorithm::p2d;
    if (name == "p2pd") return Algorithm::p2pd;
    if (name == "hed") return Algorithm::hed;
    throw ValidationError("unknown donation_algorithm '" + name +
                          "' (expected ug2d|p2d|p2pd|hed)");
}

// Utility price source before alignment to a scenario's time axis.
struct UtilityPriceSpec {
    PriceCentsPerKwh constant = 0;
    std::map<HourEpoch, PriceCentsPerKwh> per_hour; // from a per-hour CSV when non-empty

    UtilityPrices align(const TimeAxis& axis) const {
        UtilityPrices prices;
        if (per_hour.empty()) {
            prices.constant = constant;
            return prices;
        }
        prices.per_hour.reserve(axis.count);
        for (u64 t = 0; t < axis.count; ++t) {
            const HourEpoch he = axis.start + static_cast<i64>(t);
            auto it = per_hour.find(he);
            if (it == per_hour.end()) {
                throw ValidationError("utility price series missing hour " +
                                      format_iso_hour(he));
            }
            prices.per_hour.push_back(it->second);
        }
        return prices;
    }
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::string readings_path;                  // mutually exclusive with synthetic
    std::optional<SyntheticConfig> synthetic;
    ColumnMapping column_mapping;
    double balance_percentage = 0.0;            // fraction, e.g. 0.0005
    UtilityPriceSpec utility_price;
    PriceCentsPerKwh fit_cents_per_kwh = 0;
    Algorithm donation_algorithm = Algorithm::hed;
    u64 seed = 0;
    bool balance_carryover = true;
    bool auto_approve_eligibility = true;
    std::vector<u64> eligible_peers;            // used when auto-approve is off
    u64 mint_tokens_per_kwh = 1;
    double donor_fraction = 1.0;
    std::map<u64, bool> willingness_overrides;

    // Checks run-relevant fields; the readings source is validated when loaded.
    void validate() const {
        if (balance_percentage <= 0.0) {
            throw ValidationError("balance_percentage must be > 0");
        }
        if (synthetic) synthetic->validate();
        if (utility_price.per_hour.empty() && utility_price.constant == 0) {
            throw ValidationError("utility_price_cents_per_kwh must be >= 1");
        }
        if (donor_fraction < 0.0 || donor_fraction > 1.0) {
            throw ValidationError("donor_fraction must be in [0,1]");
        }
    }

    // Identifies the readings + seed combination a report was computed from.
    std::string scenario_key() const {
        std::string src = "inline";
        if (!readings_path.empty()) {
            src = "file:" + readings_path;
        } else if (synthetic) {
            src = "synth:" + std::to_string(synthetic->peer_count) + "x" +
                  std::to_string(synthetic->months) + ":" + std::to_string(synthetic->seed);
        }
        return src + "|seed:" + std::to_string(seed);
    }

    // Balance percentage as percent text, e.g. 0.0005 -> "0.05".
    std::string balance_label() const {
        const u64 milli_pct = static_cast<u64>(balance_percentage * 100'000 + 0.5);
        std::string out = std::to_string(milli_pct / 1000);
        u64 frac = milli_pct % 1000;
        if (frac != 0) {
            std::string f = std::to_string(frac);
            f.insert(f.begin(), 3 - f.size(), '0');
            while (f.back() == '0') f.pop_back();
            out += "." + f;
        }
        return out;
    }
};

namespace detail {

inline SyntheticConfig synthetic_from_json(const nlohmann::json& j) {
    SyntheticConfig cfg;
    cfg.peer_count = j.value("peer_count", cfg.peer_count);
    cfg.months = j.value("months", cfg.months);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.prosumer_fraction = j.value("prosumer_fraction", cfg.prosumer_fraction);
    cfg.production_peak_wh = j.value("production_peak_wh", cfg.production_peak_wh);
    cfg.consumption_base_wh = j.value("consumption_base_wh", cfg.consumption_base_wh);
    cfg.noise_wh = j.value("noise_wh", cfg.noise_wh);
    cfg.start_year = j.value("start_year", cfg.start_year);
    cfg.start_month = j.value("start_month", cfg.start_month);
    return cfg;
}

inline std::map<HourEpoch, PriceCentsPerKwh> load_price_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open utility price file '" + path + "'");
    std::map<HourEpoch, PriceCentsPerKwh> prices;
    bool header_seen = false;
    for_each_csv_row(in, [&](u64 line_no, const std::vector<std::string>& fields) {
        if (!header_seen) {
            header_seen = true;
            return;
        }
        if (fields.size() != 2) {
            throw ValidationError(path + " row " + std::to_string(line_no) +
                                  ": expected timestamp,price_cents_per_kwh");
        }
        prices[parse_iso_hour(fields[0])] = parse_u64_field(fields[1]);
    });
    if (prices.empty()) throw ValidationError("utility price file '" + path + "' is empty");
    return prices;
}

} // namespace detail

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig cfg;
    cfg.name = j.value("name", cfg.name);
    cfg.readings_path = j.value("readings_path", "");
    if (j.contains("synthetic")) cfg.synthetic = detail::synthetic_from_json(j["synthetic"]);
    if (j.contains("column_mapping")) {
        const auto& m = j["column_mapping"];
        cfg.column_mapping.timestamp = m.value("timestamp", cfg.column_mapping.timestamp);
        cfg.column_mapping.peer_id = m.value("peer_id", cfg.column_mapping.peer_id);
        cfg.column_mapping.production_kwh =
            m.value("production_kwh", cfg.column_mapping.production_kwh);
        cfg.column_mapping.consumption_kwh =
            m.value("consumption_kwh", cfg.column_mapping.consumption_kwh);
    }
    if (!j.contains("balance_percentage")) {
        throw ValidationError("config missing balance_percentage");
    }
    cfg.balance_percentage = j["balance_percentage"].get<double>();
    if (j.contains("utility_price_cents_per_kwh")) {
        const auto& up = j["utility_price_cents_per_kwh"];
        if (up.is_string()) {
            cfg.utility_price.per_hour = detail::load_price_csv(up.get<std::string>());
        } else {
            cfg.utility_price.constant = up.get<u64>();
        }
    }
    cfg.fit_cents_per_kwh = j.value("fit_cents_per_kwh", cfg.fit_cents_per_kwh);
    if (j.contains("donation_algorithm")) {
        cfg.donation_algorithm = algorithm_from_string(j["donation_algorithm"].get<std::string>());
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.balance_carryover = j.value("balance_carryover", cfg.balance_carryover);
    cfg.auto_approve_eligibility =
        j.value("auto_approve_eligibility", cfg.auto_approve_eligibility);
    if (j.contains("eligible_peers")) {
        for (const auto& v : j["eligible_peers"]) cfg.eligible_peers.push_back(v.get<u64>());
    }
    cfg.mint_tokens_per_kwh = j.value("mint_tokens_per_kwh", cfg.mint_tokens_per_kwh);
    cfg.donor_fraction = j.value("donor_fraction", cfg.donor_fraction);
    if (j.contains("willingness_overrides")) {
        for (const auto& [key, value] : j["willingness_overrides"].items()) {
            cfg.willingness_overrides[parse_u64_field(key)] = value.get<bool>();
        }
    }
    cfg.validate();
    return cfg;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline ScenarioConfig load_scenario_config(const std::string& path) {
    return scenario_from_json(load_json_file(path));
}

// A sweep: the base scenario crossed with algorithms and balance percentages.
struct MatrixConfig {
    ScenarioConfig base;
    std::vector<Algorithm> algorithms;
    std::vector<double> balance_percentages;

    std::vector<ScenarioConfig> cells() const {
        std::vector<ScenarioConfig> out;
        for (double pct : balance_percentages) {
            for (Algorithm algo : algorithms) {
                ScenarioConfig c = base;
                c.donation_algorithm = algo;
                c.balance_percentage = pct;
                c.name = std::string(to_string(algo)) + "_" + c.balance_label();
                out.push_back(c);
            }
        }
        return out;
    }
};

inline MatrixConfig load_matrix_config_json(const nlohmann::json& j) {
    if (!j.contains("base")) throw ValidationError("matrix config missing 'base' object");
    MatrixConfig matrix;
    nlohmann::json base = j["base"];
    if (!base.contains("balance_percentage")) base["balance_percentage"] = 1.0; // sweep fills it
    matrix.base = scenario_from_json(base);
    if (j.contains("algorithms")) {
        for (const auto& a : j["algorithms"]) {
            matrix.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
        }
    } else {
        matrix.algorithms = {Algorithm::ug2d, Algorithm::p2d, Algorithm::p2pd, Algorithm::hed};
    }
    if (j.contains("balance_percentages")) {
        for (const auto& p : j["balance_percentages"]) {
            matrix.balance_percentages.push_back(p.get<double>());
        }
    } else {
        matrix.balance_percentages = {matrix.base.balance_percentage};
    }
    if (matrix.algorithms.empty() || matrix.balance_percentages.empty()) {
        throw ValidationError("matrix config has an empty algorithm or balance sweep");
    }
    for (double p : matrix.balance_percentages) {
        if (p <= 0.0) throw ValidationError("balance_percentages entries must be > 0");
    }
    return matrix;
}

inline MatrixConfig load_matrix_config(const std::string& path) {
    return load_matrix_config_json(load_json_file(path));
}

} // namespace edsim
