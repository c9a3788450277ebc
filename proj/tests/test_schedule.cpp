#include <catch2/catch_amalgamated.hpp>

#include "edsim/schedule.hpp"
#include "edsim/synthetic.hpp"

using namespace edsim;

namespace {

// One peer, one month, constant hourly need of `need_wh`.
ReadingSeries constant_need_series(u64 need_wh, u64 hours = 24) {
    ReadingSeries series(TimeAxis{hour_epoch(2021, 9, 1, 0), hours}, {1, 2});
    for (u64 t = 0; t < hours; ++t) {
        series.at(0, t) = Reading{EnergyWh{0}, EnergyWh{need_wh}};
        series.at(1, t) = Reading{EnergyWh{0}, EnergyWh{0}};
    }
    return series;
}

} // namespace

TEST_CASE("credit is the percentage of the would-be grid bill") {
    // 10 kWh need over the month at 20 c/kWh, 2% -> 0.02 * 10 * 20 = 4 cents
    ReadingSeries series = constant_need_series(1000, 10);
    UtilityPrices prices;
    prices.constant = 20;
    const BalanceSchedule schedule =
        build_balance_schedule(series, prices, Percentage::from_double(0.02));
    REQUIRE(schedule.months.size() == 1);
    CHECK(schedule.credits[0][0] == MoneyCents{4});
    CHECK(schedule.credits[1][0] == MoneyCents{0}); // zero need all month
}

TEST_CASE("surplus hours do not reduce the bill basis") {
    ReadingSeries series(TimeAxis{hour_epoch(2021, 9, 1, 0), 2}, {1});
    series.at(0, 0) = Reading{EnergyWh{5000}, EnergyWh{1000}}; // surplus hour
    series.at(0, 1) = Reading{EnergyWh{0}, EnergyWh{2000}};    // need hour
    UtilityPrices prices;
    prices.constant = 50;
    const BalanceSchedule schedule =
        build_balance_schedule(series, prices, Percentage::from_double(0.5));
    // need basis is 2 kWh at 50 c/kWh = 100 cents; 50% -> 50 cents
    CHECK(schedule.credits[0][0] == MoneyCents{50});
}

TEST_CASE("doubling the percentage doubles every credit within one cent") {
    SyntheticConfig cfg;
    cfg.peer_count = 6;
    cfg.months = 2;
    cfg.seed = 21;
    const ReadingSeries series = generate_synthetic(cfg);
    UtilityPrices prices;
    prices.constant = 23;
    const BalanceSchedule once =
        build_balance_schedule(series, prices, Percentage::from_double(0.005));
    const BalanceSchedule twice =
        build_balance_schedule(series, prices, Percentage::from_double(0.01));
    for (u64 p = 0; p < series.peer_count(); ++p) {
        for (u64 m = 0; m < once.months.size(); ++m) {
            const i64 direct = static_cast<i64>(twice.credits[p][m].cents);
            const i64 doubled = 2 * static_cast<i64>(once.credits[p][m].cents);
            CHECK(std::abs(direct - doubled) <= 1);
        }
    }
}

TEST_CASE("monthly deposit is the mean of monthly community credits") {
    BalanceSchedule schedule;
    schedule.months = {MonthKey{2021, 9}, MonthKey{2021, 10}, MonthKey{2021, 11}};
    schedule.credits = {{MoneyCents{60}, MoneyCents{150}, MoneyCents{180}},
                        {MoneyCents{40}, MoneyCents{50}, MoneyCents{120}}};
    // community monthly totals: 100, 200, 300 -> mean 200
    const DonationSchedule donations = build_donation_schedule(schedule);
    CHECK(donations.monthly_deposit == MoneyCents{200});
    CHECK(donations.month_count == 3);
}

TEST_CASE("single month deposit equals that month's credits") {
    BalanceSchedule schedule;
    schedule.months = {MonthKey{2021, 9}};
    schedule.credits = {{MoneyCents{500}}};
    CHECK(build_donation_schedule(schedule).monthly_deposit == MoneyCents{500});
}

TEST_CASE("deposit total over the run stays within one rounding unit per month") {
    SyntheticConfig cfg;
    cfg.peer_count = 5;
    cfg.months = 3;
    cfg.seed = 8;
    const ReadingSeries series = generate_synthetic(cfg);
    UtilityPrices prices;
    prices.constant = 30;
    const BalanceSchedule schedule =
        build_balance_schedule(series, prices, Percentage::from_double(0.02));
    const DonationSchedule donations = build_donation_schedule(schedule);
    u64 credits_total = 0;
    for (u64 m = 0; m < schedule.months.size(); ++m) credits_total += schedule.month_total(m).cents;
    const i64 deposits_total =
        static_cast<i64>(donations.monthly_deposit.cents * donations.month_count);
    CHECK(std::abs(deposits_total - static_cast<i64>(credits_total)) <=
          static_cast<i64>(donations.month_count));
}
