#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sliding/errors.hpp"

namespace sliding {

// One record per outer iteration. `objective` always carries the exact
// (noise-free) composite value; `objective_gap` is only set when the optimal
// value was supplied or computed by a reference solve.
struct TraceRow {
    int k = 0;
    double objective = 0.0;
    std::optional<double> objective_gap;
    double grad_map_norm = 0.0;
    std::uint64_t grad_f_count = 0;
    std::uint64_t subgrad_h_count = 0;
    double elapsed_seconds = 0.0;
};

struct RunTrace {
    std::vector<TraceRow> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
    const TraceRow& back() const { return rows.back(); }
};

// CSV schema (fixed column order, 17 significant digits):
//   k,objective_gap,grad_map_norm,grad_f_count,subgrad_h_count,elapsed_seconds
// The gap cell is left empty when no reference value is available.
void write_trace_csv(const RunTrace& trace, const std::string& path);
RunTrace read_trace_csv(const std::string& path);

} // namespace sliding
