// Dense per-peer hourly production/consumption series.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "edsim/csv.hpp"
#include "edsim/peer.hpp"
#include "edsim/quantity.hpp"
#include "edsim/timestep.hpp"

namespace edsim {

struct Reading {
    EnergyWh production;
    EnergyWh consumption;
};

class ReadingSeries {
public:
    ReadingSeries(TimeAxis axis, std::vector<u64> peer_ids)
        : axis_(axis), peer_ids_(std::move(peer_ids)) {
        std::sort(peer_ids_.begin(), peer_ids_.end());
        cells_.assign(peer_ids_.size() * axis_.count, Reading{});
    }

    const TimeAxis& axis() const { return axis_; }
    const std::vector<u64>& peer_ids() const { return peer_ids_; }
    u64 peer_count() const { return peer_ids_.size(); }

    u64 peer_index(u64 peer_id) const {
        auto it = std::lower_bound(peer_ids_.begin(), peer_ids_.end(), peer_id);
        if (it == peer_ids_.end() || *it != peer_id) {
            throw ValidationError("unknown peer id " + std::to_string(peer_id));
        }
        return static_cast<u64>(it - peer_ids_.begin());
    }

    Reading& at(u64 peer_idx, u64 t) { return cells_[peer_idx * axis_.count + t]; }
    const Reading& at(u64 peer_idx, u64 t) const { return cells_[peer_idx * axis_.count + t]; }

    // Roster derived from the data: a peer is a prosumer if it ever produces.
    PeerRoster make_roster() const {
        PeerRoster roster;
        for (u64 p = 0; p < peer_count(); ++p) {
            PeerState st;
            st.id = PeerId{peer_ids_[p]};
            for (u64 t = 0; t < axis_.count; ++t) {
                if (at(p, t).production.wh > 0) {
                    st.role = PeerRole::prosumer;
                    break;
                }
            }
            roster.peers.push_back(st);
        }
        return roster;
    }

    // Canonical CSV form: the documented input format, rows ordered by
    // timestamp then peer id, kWh with three decimals.
    std::string serialize() const {
        std::string out = "timestamp,peer_id,production_kwh,consumption_kwh\n";
        for (u64 t = 0; t < axis_.count; ++t) {
            const std::string stamp = format_iso_hour(axis_.start + static_cast<i64>(t));
            for (u64 p = 0; p < peer_count(); ++p) {
                const Reading& r = at(p, t);
                out += stamp;
                out += ',';
                out += std::to_string(peer_ids_[p]);
                out += ',';
                out += format_milli(r.production.wh);
                out += ',';
                out += format_milli(r.consumption.wh);
                out += '\n';
            }
        }
        return out;
    }

private:
    TimeAxis axis_;
    std::vector<u64> peer_ids_;
    std::vector<Reading> cells_;
};

} // namespace edsim
