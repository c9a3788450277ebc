#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "edsim/metrics.hpp"

using namespace edsim;

namespace {

DonationEvent event(DonationSource source, u64 donee, u64 wh, u64 payment, u64 timestep = 0) {
    DonationEvent e;
    e.donee = PeerId{donee};
    e.quantity = EnergyWh{wh};
    e.source = source;
    e.payment = MoneyCents{payment};
    e.timestep = timestep;
    if (source == DonationSource::peer_funded) {
        e.payee = PeerId{1};
        e.donor = PeerId{1};
    }
    if (source == DonationSource::peer_direct) e.donor = PeerId{2};
    return e;
}

} // namespace

TEST_CASE("aggregate sums the log by source tag") {
    const std::vector<DonationEvent> log = {
        event(DonationSource::peer_funded, 10, 4000, 20, 0),
        event(DonationSource::grid_funded, 10, 4000, 80, 0),
        event(DonationSource::peer_direct, 11, 3000, 0, 1),
    };
    const std::vector<PriceCentsPerKwh> prices = {5, 7};
    const DonationReport r = aggregate(log, prices);
    CHECK(r.external_donated() == EnergyWh{8000});
    CHECK(r.internal_donated() == EnergyWh{3000});
    CHECK(r.total_donated() == EnergyWh{11000});
    CHECK(r.funded_payments == MoneyCents{100});
    // 3 kWh valued at the clearing price of its own timestep (7 c/kWh)
    CHECK(r.direct_value == MoneyCents{21});
    CHECK(r.expenses() == MoneyCents{121});
    CHECK(r.event_count == 3);
}

TEST_CASE("an empty log yields a zero report with undefined cost") {
    const DonationReport r = aggregate({}, {});
    CHECK(r.total_donated() == EnergyWh{0});
    CHECK(r.expenses() == MoneyCents{0});
    CHECK_FALSE(r.external_cost().defined());
    CHECK(r.share_ppm(DonationSource::peer_direct) == 0);
}

TEST_CASE("external cost is payments over funded energy") {
    const std::vector<DonationEvent> log = {
        event(DonationSource::grid_funded, 10, 4000, 80, 0),
    };
    const CostPerKwh cost = aggregate(log, {20}).external_cost();
    REQUIRE(cost.defined());
    CHECK(cost.milli_cents_per_kwh() == 20000); // 20 c/kWh exactly
}

TEST_CASE("source shares are ppm of the donated total") {
    const std::vector<DonationEvent> log = {
        event(DonationSource::grid_funded, 10, 1000, 20, 0),
        event(DonationSource::peer_direct, 11, 3000, 0, 0),
    };
    const DonationReport r = aggregate(log, {5});
    CHECK(r.share_ppm(DonationSource::grid_funded) == 250000);
    CHECK(r.share_ppm(DonationSource::peer_direct) == 750000);
    CHECK(r.share_ppm(DonationSource::grid_funded) +
              r.share_ppm(DonationSource::peer_funded) +
              r.share_ppm(DonationSource::peer_direct) ==
          1'000'000);
}

TEST_CASE("participation counts distinct roles against the roster") {
    PeerRoster roster;
    for (u64 i = 1; i <= 69; ++i) {
        roster.peers.push_back({PeerId{i}, MoneyCents{0}, true, PeerRole::consumer});
    }
    std::vector<DonationEvent> log;
    for (u64 payee = 1; payee <= 11; ++payee) {
        DonationEvent e = event(DonationSource::peer_funded, 60, 1000, 5, 0);
        e.payee = PeerId{payee};
        e.donor = PeerId{payee};
        log.push_back(e);
    }
    const ParticipationStats stats = participation(log, roster);
    CHECK(stats.sellers_for_donation == 11);
    CHECK(stats.pct_sellers_for_donation_ppm() == 159420); // 11/69
    CHECK(stats.donation_receivers == 1);
    CHECK(stats.donors == 11);
    CHECK(stats.donors_turned_donees == 0);
}

TEST_CASE("no donation events means all participation stats are zero") {
    PeerRoster roster;
    roster.peers.push_back({PeerId{1}, MoneyCents{0}, true, PeerRole::prosumer});
    const ParticipationStats stats = participation({}, roster);
    CHECK(stats.pct_sellers_for_donation_ppm() == 0);
    CHECK(stats.pct_direct_donors_ppm() == 0);
    CHECK(stats.pct_donation_receivers_ppm() == 0);
    CHECK(stats.pct_donors_turned_donees_ppm() == 0); // defined as 0 with no donors
}

TEST_CASE("donors who also received count as donors turned donees") {
    PeerRoster roster;
    for (u64 i = 1; i <= 4; ++i) {
        roster.peers.push_back({PeerId{i}, MoneyCents{0}, true, PeerRole::prosumer});
    }
    std::vector<DonationEvent> log;
    DonationEvent give = event(DonationSource::peer_direct, 2, 1000, 0, 0);
    give.donor = PeerId{1};
    log.push_back(give);
    DonationEvent receive = event(DonationSource::peer_direct, 1, 500, 0, 1);
    receive.donor = PeerId{3};
    log.push_back(receive);
    const ParticipationStats stats = participation(log, roster);
    CHECK(stats.donors == 2);               // peers 1 and 3
    CHECK(stats.donation_receivers == 2);   // peers 1 and 2
    CHECK(stats.donors_turned_donees == 1); // peer 1
    CHECK(stats.pct_donors_turned_donees_ppm() == 500000);
}

TEST_CASE("percent change matches the reference arithmetic") {
    CHECK(percent_change_milli(328, 100) == 228000); // +228%
    CHECK(percent_change_milli(100, 100) == 0);
    CHECK(percent_change_milli(50, 100) == -50000);
    CHECK(percent_change_milli(21605, 21600) == 23); // +0.023%
    CHECK_THROWS_AS(percent_change_milli(5, 0), ValidationError);
}

TEST_CASE("percent change is ratio-antisymmetric within rounding") {
    const u64 pairs[][2] = {{328, 100}, {21605, 21600}, {64, 15000}, {7, 7}};
    for (const auto& pair : pairs) {
        const double ab = percent_change_milli(pair[0], pair[1]) / 100000.0;
        const double ba = percent_change_milli(pair[1], pair[0]) / 100000.0;
        // both sides quantized to milli-percent; the identity amplifies the
        // rounding of ba by 1/(1+ba)^2
        const double slack = 5e-6 + 5e-6 / ((1.0 + ba) * (1.0 + ba));
        CHECK(std::abs((1.0 / (1.0 + ba) - 1.0) - ab) <= slack);
    }
}

TEST_CASE("compare arranges cells and rejects mismatched scenario sets") {
    ReportCell a{"ug2d", "0.05", "synth:1", false, {}};
    ReportCell b{"p2d", "0.05", "synth:1", false, {}};
    const Comparison cmp = compare({a, b});
    CHECK(cmp.algorithms == std::vector<std::string>{"ug2d", "p2d"});
    CHECK(cmp.balance_labels == std::vector<std::string>{"0.05"});

    ReportCell other = b;
    other.scenario_key = "synth:2";
    CHECK_THROWS_AS(compare({a, other}), ValidationError);
    CHECK_THROWS_AS(compare({a, a}), ValidationError); // duplicate cell
    CHECK_THROWS_AS(compare({}), ValidationError);
}

TEST_CASE("missing grid cells are marked failed") {
    ReportCell a{"ug2d", "0.05", "k", false, {}};
    ReportCell b{"p2d", "0.5", "k", false, {}};
    const Comparison cmp = compare({a, b});
    CHECK_FALSE(cmp.cell(0, 0).failed); // ug2d @ 0.05
    CHECK(cmp.cell(0, 1).failed);       // p2d @ 0.05 absent
    CHECK(cmp.cell(1, 0).failed);       // ug2d @ 0.5 absent
    CHECK_FALSE(cmp.cell(1, 1).failed);
}

TEST_CASE("comparison averages mirror a naive re-summation of the reports") {
    ReportCell a{"hed", "0.05", "k", false, {}};
    a.report.peer_direct = EnergyWh{1000};
    ReportCell b{"hed", "0.5", "k", false, {}};
    b.report.peer_direct = EnergyWh{2001};
    const Comparison cmp = compare({a, b});
    CHECK(cmp.average_total_wh() == std::vector<u64>{1501}); // round-half-up mean
}
