// Monthly peer balance credits and the external donation fund schedule.
#pragma once

#include <vector>

#include "edsim/quantity.hpp"
#include "edsim/readings.hpp"

namespace edsim {

// Exact rational in [0, ~18]; doubles from config are fixed to nine decimals.
struct Percentage {
    u64 num = 0;
    u64 den = 1'000'000'000;

    static Percentage from_double(double x) {
        if (x <= 0.0) throw ValidationError("percentage must be > 0");
        return Percentage{static_cast<u64>(x * 1e9 + 0.5), 1'000'000'000};
    }
};

// Utility grid price per timestep: a constant or a per-hour series.
struct UtilityPrices {
    PriceCentsPerKwh constant = 0;
    std::vector<PriceCentsPerKwh> per_hour; // aligned to the scenario axis when non-empty

    PriceCentsPerKwh at(u64 t) const {
        if (per_hour.empty()) return constant;
        if (t >= per_hour.size()) {
            throw ValidationError("utility price series shorter than scenario range");
        }
        return per_hour[t];
    }

    PriceCentsPerKwh min_over(u64 count) const {
        PriceCentsPerKwh lo = at(0);
        for (u64 t = 1; t < count; ++t) lo = std::min(lo, at(t));
        return lo;
    }
};

struct BalanceSchedule {
    std::vector<MonthKey> months;
    // credits[peer_index][month_index]
    std::vector<std::vector<MoneyCents>> credits;

    MoneyCents month_total(u64 month_idx) const {
        MoneyCents sum;
        for (const auto& per_peer : credits) sum += per_peer[month_idx];
        return sum;
    }
};

struct DonationSchedule {
    MoneyCents monthly_deposit;
    u64 month_count = 0;
};

// credit(peer, month) = round(pct * sum of hourly need valued at the utility price)
inline BalanceSchedule build_balance_schedule(const ReadingSeries& series,
                                              const UtilityPrices& prices,
                                              Percentage pct) {
    if (pct.num == 0) throw ValidationError("balance percentage must be > 0");
    BalanceSchedule schedule;
    schedule.months = series.axis().months();
    schedule.credits.assign(series.peer_count(),
                            std::vector<MoneyCents>(schedule.months.size()));

    for (u64 p = 0; p < series.peer_count(); ++p) {
        u64 month_idx = 0;
        u128 bill_millicents = 0; // need_wh * price summed over the month
        MonthKey current = schedule.months.front();
        auto flush = [&]() {
            schedule.credits[p][month_idx] = MoneyCents{div_round_half_up(
                bill_millicents * pct.num, static_cast<u128>(pct.den) * kWhPerKwh)};
        };
        for (u64 t = 0; t < series.axis().count; ++t) {
            MonthKey mk = month_of(series.axis().start + static_cast<i64>(t));
            if (mk != current) {
                flush();
                bill_millicents = 0;
                current = mk;
                ++month_idx;
            }
            const Reading& r = series.at(p, t);
            if (r.consumption.wh > r.production.wh) {
                bill_millicents +=
                    static_cast<u128>(r.consumption.wh - r.production.wh) * prices.at(t);
            }
        }
        flush();
    }
    return schedule;
}

// Constant monthly deposit: the mean of the community-wide monthly credits.
inline DonationSchedule build_donation_schedule(const BalanceSchedule& balances) {
    if (balances.months.empty()) throw ValidationError("balance schedule has no months");
    u128 total = 0;
    for (u64 m = 0; m < balances.months.size(); ++m) total += balances.month_total(m).cents;
    return DonationSchedule{
        MoneyCents{div_round_half_up(total, balances.months.size())},
        balances.months.size()};
}

} // namespace edsim
