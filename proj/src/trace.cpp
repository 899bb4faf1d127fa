#include "sliding/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sliding {

namespace {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_trace_csv(const RunTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_trace_csv: cannot open '" + path + "'");
    out << "k,objective_gap,grad_map_norm,grad_f_count,subgrad_h_count,elapsed_seconds\n";
    for (const TraceRow& r : trace.rows) {
        out << r.k << ',';
        if (r.objective_gap) out << format_g17(*r.objective_gap);
        out << ',' << format_g17(r.grad_map_norm) << ',' << r.grad_f_count << ','
            << r.subgrad_h_count << ',' << format_g17(r.elapsed_seconds) << '\n';
    }
    if (!out) throw IoError("write_trace_csv: write failed for '" + path + "'");
}

RunTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_trace_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("read_trace_csv: empty file '" + path + "'");
    if (line != "k,objective_gap,grad_map_norm,grad_f_count,subgrad_h_count,elapsed_seconds")
        throw FormatError("read_trace_csv: unexpected header in '" + path + "'");

    RunTrace trace;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        TraceRow r;
        auto next = [&](const char* name) {
            if (!std::getline(ss, field, ','))
                throw FormatError("read_trace_csv: line " + std::to_string(lineno) +
                                  ": missing field " + name);
        };
        next("k");
        r.k = std::stoi(field);
        next("objective_gap");
        if (!field.empty()) r.objective_gap = std::stod(field);
        next("grad_map_norm");
        r.grad_map_norm = std::stod(field);
        next("grad_f_count");
        r.grad_f_count = std::stoull(field);
        next("subgrad_h_count");
        r.subgrad_h_count = std::stoull(field);
        next("elapsed_seconds");
        r.elapsed_seconds = std::stod(field);
        trace.rows.push_back(r);
    }
    return trace;
}

} // namespace sliding
