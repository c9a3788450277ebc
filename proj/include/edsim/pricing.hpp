// Demand/supply responsive clearing price, floored at the feed-in tariff and
// capped at the utility price.
#pragma once

#include <algorithm>
#include <array>
#include <limits>

#include "edsim/quantity.hpp"

namespace edsim {

struct DemandSupplySnapshot {
    EnergyWh requests; // buy requests submitted by consumers this step
    EnergyWh offers;   // offers submitted by prosumers this step
};

struct PriceState {
    std::array<PriceCentsPerKwh, 3> history{}; // p_{t-1}, p_{t-2}, p_{t-3}
    PriceCentsPerKwh fit = 0;

    // The market has no price history at the start; seed it with the only
    // externally given price, the first utility price.
    static PriceState initial(PriceCentsPerKwh fit, PriceCentsPerKwh up0) {
        PriceState st;
        st.fit = fit;
        st.history = {up0, up0, up0};
        return st;
    }

    PriceCentsPerKwh previous() const { return history[0]; }

    void shift(PriceCentsPerKwh p) { history = {p, history[0], history[1]}; }
};

// p = clamp(round(requests/offers * mean of last three prices), fit, up).
// No offers means the grid is the only source, so the grid price applies.
// The ratio and mean are evaluated as one exact rational with a single
// terminal rounding. Shifts the new price into the history.
inline PriceCentsPerKwh clearing_price(PriceState& state, DemandSupplySnapshot snap,
                                       PriceCentsPerKwh up) {
    if (state.fit > up) {
        throw InvariantError("feed-in tariff exceeds utility price");
    }
    PriceCentsPerKwh price;
    if (snap.offers.wh == 0) {
        price = up;
    } else {
        const u128 hist_sum = static_cast<u128>(state.history[0]) + state.history[1] +
                              state.history[2];
        u128 raw_rounded;
        if (hist_sum != 0 &&
            static_cast<u128>(snap.requests.wh) >
                std::numeric_limits<u128>::max() / hist_sum) {
            raw_rounded = std::numeric_limits<u64>::max(); // ratio astronomically high
        } else {
            const u128 num = static_cast<u128>(snap.requests.wh) * hist_sum;
            const u128 den = static_cast<u128>(3) * snap.offers.wh;
            raw_rounded = num / den;
            if (2 * (num % den) >= den) ++raw_rounded; // half-up, overflow-safe
        }
        price = static_cast<PriceCentsPerKwh>(
            std::clamp<u128>(raw_rounded, state.fit, up));
    }
    state.shift(price);
    return price;
}

} // namespace edsim
