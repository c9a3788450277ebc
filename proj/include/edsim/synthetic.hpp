// Deterministic synthetic readings generator; stands in for real smart-meter data.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "edsim/readings.hpp"
#include "edsim/rng.hpp"

namespace edsim {

struct SyntheticConfig {
    u64 peer_count = 10;
    u64 months = 1;
    u64 seed = 1;
    double prosumer_fraction = 0.4;
    u64 production_peak_wh = 4000; // midday solar output of an average prosumer
    u64 consumption_base_wh = 900; // scales the diurnal consumption profile
    u64 noise_wh = 200;            // uniform per-hour jitter, +/- this amount
    int start_year = 2021;
    unsigned start_month = 9;

    void validate() const {
        if (peer_count < 2) throw ValidationError("synthetic.peer_count must be >= 2");
        if (months < 1) throw ValidationError("synthetic.months must be >= 1");
        if (prosumer_fraction < 0.0 || prosumer_fraction > 1.0) {
            throw ValidationError("synthetic.prosumer_fraction must be in [0,1]");
        }
        if (start_month < 1 || start_month > 12) {
            throw ValidationError("synthetic.start_month must be in [1,12]");
        }
    }
};

namespace detail {

// Per-mille of peak production by hour of day (solar bell).
inline constexpr int kSolarShape[24] = {0,   0,   0,   0,   0,   20,  80,  180, 350, 550, 720, 850,
                                        900, 850, 720, 550, 350, 180, 80,  20,  0,   0,   0,   0};

// Per-mille of base consumption by hour of day (morning and evening peaks).
inline constexpr int kLoadShape[24] = {300, 250, 220, 210, 220, 280, 450, 600, 550, 480, 450, 440,
                                       450, 460, 480, 520, 650, 800, 900, 850, 700, 550, 420, 350};

} // namespace detail

inline ReadingSeries generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();

    const HourEpoch start = hour_epoch(cfg.start_year, cfg.start_month, 1, 0);
    int end_year = cfg.start_year + static_cast<int>((cfg.start_month - 1 + cfg.months) / 12);
    unsigned end_month = static_cast<unsigned>((cfg.start_month - 1 + cfg.months) % 12) + 1;
    const HourEpoch end = hour_epoch(end_year, end_month, 1, 0);
    const TimeAxis axis{start, static_cast<u64>(end - start)};

    std::vector<u64> peer_ids(cfg.peer_count);
    for (u64 i = 0; i < cfg.peer_count; ++i) peer_ids[i] = i + 1;
    ReadingSeries series(axis, peer_ids);

    // Pick which peers are prosumers with a dedicated substream.
    const u64 prosumer_count =
        static_cast<u64>(cfg.prosumer_fraction * static_cast<double>(cfg.peer_count) + 0.5);
    std::vector<u64> order(cfg.peer_count);
    for (u64 i = 0; i < cfg.peer_count; ++i) order[i] = i;
    Rng role_rng = Rng::stream(cfg.seed, 0x726f6c65 /* "role" */);
    role_rng.shuffle(order);
    std::vector<bool> is_prosumer(cfg.peer_count, false);
    for (u64 i = 0; i < prosumer_count; ++i) is_prosumer[order[i]] = true;

    for (u64 p = 0; p < cfg.peer_count; ++p) {
        Rng profile = Rng::stream(cfg.seed, 0x70726f66 /* "prof" */, peer_ids[p]);
        const u64 prod_peak = cfg.production_peak_wh * profile.next_range(700, 1300) / 1000;
        const u64 cons_base = cfg.consumption_base_wh * profile.next_range(700, 1300) / 1000;
        Rng noise = Rng::stream(cfg.seed, 0x6e6f6973 /* "nois" */, peer_ids[p]);

        for (u64 t = 0; t < axis.count; ++t) {
            const unsigned hod = static_cast<unsigned>((start + static_cast<i64>(t)) % 24);
            i64 prod = 0;
            if (is_prosumer[p]) {
                prod = static_cast<i64>(prod_peak) * detail::kSolarShape[hod] / 1000;
                if (prod > 0 && cfg.noise_wh > 0) {
                    prod += static_cast<i64>(noise.next_below(2 * cfg.noise_wh + 1)) -
                            static_cast<i64>(cfg.noise_wh);
                }
            }
            i64 cons = static_cast<i64>(cons_base) * detail::kLoadShape[hod] / 1000;
            if (cfg.noise_wh > 0) {
                cons += static_cast<i64>(noise.next_below(2 * cfg.noise_wh + 1)) -
                        static_cast<i64>(cfg.noise_wh);
            }
            series.at(p, t) = Reading{EnergyWh{static_cast<u64>(std::max<i64>(prod, 0))},
                                      EnergyWh{static_cast<u64>(std::max<i64>(cons, 0))}};
        }
    }
    return series;
}

} // namespace edsim
