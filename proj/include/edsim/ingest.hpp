// CSV ingestion of hourly readings, with column-name remapping for foreign datasets.
#pragma once

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "edsim/csv.hpp"
#include "edsim/readings.hpp"

namespace edsim {

// Maps canonical column names to the names used in the source file.
struct ColumnMapping {
    std::string timestamp = "timestamp";
    std::string peer_id = "peer_id";
    std::string production_kwh = "production_kwh";
    std::string consumption_kwh = "consumption_kwh";
};

namespace detail {

struct RawRow {
    HourEpoch hour;
    u64 peer;
    u64 production_wh;
    u64 consumption_wh;
};

} // namespace detail

inline ReadingSeries parse_readings(std::istream& in, const ColumnMapping& mapping = {}) {
    std::vector<std::string> header;
    std::vector<detail::RawRow> rows;

    for_each_csv_row(in, [&](u64 line_no, const std::vector<std::string>& fields) {
        if (header.empty()) {
            header = fields;
            return;
        }
        if (fields.size() != header.size()) {
            throw ValidationError("row " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        auto field = [&](const std::string& col) -> const std::string& {
            for (size_t i = 0; i < header.size(); ++i) {
                if (header[i] == col) return fields[i];
            }
            throw ValidationError("missing column '" + col + "' in header");
        };
        try {
            detail::RawRow row;
            row.hour = parse_iso_hour(field(mapping.timestamp));
            row.peer = parse_u64_field(field(mapping.peer_id));
            row.production_wh = parse_milli(field(mapping.production_kwh));
            row.consumption_wh = parse_milli(field(mapping.consumption_kwh));
            rows.push_back(row);
        } catch (const ValidationError& e) {
            throw ValidationError("row " + std::to_string(line_no) + ": " + e.what());
        }
    });

    if (rows.empty()) throw ValidationError("readings file has no data rows");

    HourEpoch lo = rows.front().hour;
    HourEpoch hi = rows.front().hour;
    std::set<u64> peer_set;
    for (const auto& r : rows) {
        lo = std::min(lo, r.hour);
        hi = std::max(hi, r.hour);
        peer_set.insert(r.peer);
    }
    const TimeAxis axis{lo, static_cast<u64>(hi - lo + 1)};

    ReadingSeries series(axis, std::vector<u64>(peer_set.begin(), peer_set.end()));
    std::vector<bool> seen(series.peer_count() * axis.count, false);
    for (const auto& r : rows) {
        const u64 p = series.peer_index(r.peer);
        const u64 t = static_cast<u64>(r.hour - lo);
        if (seen[p * axis.count + t]) {
            throw ValidationError("duplicate reading for peer " + std::to_string(r.peer) +
                                  " at " + format_iso_hour(r.hour));
        }
        seen[p * axis.count + t] = true;
        series.at(p, t) = Reading{EnergyWh{r.production_wh}, EnergyWh{r.consumption_wh}};
    }
    for (u64 p = 0; p < series.peer_count(); ++p) {
        for (u64 t = 0; t < axis.count; ++t) {
            if (!seen[p * axis.count + t]) {
                throw ValidationError("coverage gap: peer " +
                                      std::to_string(series.peer_ids()[p]) + " missing hour " +
                                      format_iso_hour(lo + static_cast<i64>(t)));
            }
        }
    }
    return series;
}

inline ReadingSeries parse_readings_text(const std::string& text,
                                         const ColumnMapping& mapping = {}) {
    std::istringstream in(text);
    return parse_readings(in, mapping);
}

} // namespace edsim
