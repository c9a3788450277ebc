#include <catch2/catch_amalgamated.hpp>

#include "edsim/synthetic.hpp"

using namespace edsim;

TEST_CASE("generation is bit-identical for a fixed seed") {
    SyntheticConfig cfg;
    cfg.peer_count = 2;
    cfg.months = 1;
    cfg.seed = 42;
    CHECK(generate_synthetic(cfg).serialize() == generate_synthetic(cfg).serialize());
}

TEST_CASE("different seeds give different series") {
    SyntheticConfig a;
    a.peer_count = 5;
    a.months = 1;
    a.seed = 1;
    SyntheticConfig b = a;
    b.seed = 2;
    CHECK(generate_synthetic(a).serialize() != generate_synthetic(b).serialize());
}

TEST_CASE("zero prosumer fraction means zero production everywhere") {
    SyntheticConfig cfg;
    cfg.peer_count = 6;
    cfg.months = 1;
    cfg.seed = 3;
    cfg.prosumer_fraction = 0.0;
    const ReadingSeries series = generate_synthetic(cfg);
    for (u64 p = 0; p < series.peer_count(); ++p) {
        for (u64 t = 0; t < series.axis().count; ++t) {
            REQUIRE(series.at(p, t).production == EnergyWh{0});
        }
    }
    for (const auto& peer : series.make_roster().peers) {
        CHECK(peer.role == PeerRole::consumer);
    }
}

TEST_CASE("prosumers peak during daylight and consumers never produce") {
    SyntheticConfig cfg;
    cfg.peer_count = 8;
    cfg.months = 1;
    cfg.seed = 9;
    cfg.prosumer_fraction = 0.5;
    const ReadingSeries series = generate_synthetic(cfg);
    const PeerRoster roster = series.make_roster();
    u64 prosumers = 0;
    for (u64 p = 0; p < series.peer_count(); ++p) {
        if (roster.peers[p].role == PeerRole::consumer) {
            for (u64 t = 0; t < series.axis().count; ++t) {
                REQUIRE(series.at(p, t).production == EnergyWh{0});
            }
            continue;
        }
        ++prosumers;
        EnergyWh noon_sum, midnight_sum;
        for (u64 t = 0; t < series.axis().count; ++t) {
            const unsigned hod = static_cast<unsigned>(
                (series.axis().start + static_cast<i64>(t)) % 24);
            if (hod == 12) noon_sum += series.at(p, t).production;
            if (hod == 0) midnight_sum += series.at(p, t).production;
        }
        CHECK(noon_sum.wh > 0);
        CHECK(midnight_sum == EnergyWh{0});
    }
    CHECK(prosumers == 4);
}

TEST_CASE("invalid synthetic configs are rejected") {
    SyntheticConfig cfg;
    cfg.peer_count = 1;
    CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
    cfg.peer_count = 2;
    cfg.months = 0;
    CHECK_THROWS_AS(generate_synthetic(cfg), ValidationError);
}

TEST_CASE("the axis spans exactly the requested calendar months") {
    SyntheticConfig cfg;
    cfg.peer_count = 2;
    cfg.months = 2; // Sep + Oct 2021: 30 + 31 days
    cfg.seed = 5;
    const ReadingSeries series = generate_synthetic(cfg);
    CHECK(series.axis().count == (30 + 31) * 24);
    CHECK(series.axis().start == hour_epoch(2021, 9, 1, 0));
}
