#pragma once

#include "sliding/config.hpp"
#include "sliding/trace.hpp"

namespace sliding {

// Executes one configured run with the given noise seed and returns its
// trace. For qp and small tv instances the optimal value is computed by the
// reference solver so the gap column is populated; otherwise the gap column
// stays empty. When cfg.write_images is set, TV runs emit <out>_noisy.pgm and
// <out>_seed<seed>_denoised.pgm.
RunTrace run_configured(const RunConfig& cfg, std::uint64_t seed);

// One run per seed, each written to <out>_seed<seed>.csv, plus the
// columnwise mean/std aggregate at <out>_aggregate.csv. Returns the file
// paths written. Runs execute in parallel.
std::vector<std::string> run_sweep(const RunConfig& cfg);

// Aggregate schema:
//   k,objective_gap_mean,objective_gap_std,grad_map_norm_mean,grad_map_norm_std,
//   grad_f_count,subgrad_h_count,elapsed_seconds_mean,elapsed_seconds_std
void write_aggregate_csv(const std::vector<RunTrace>& traces, const std::string& path);

// Text for the `params` subcommand: derived schedule constants and the first
// few inner-loop lengths.
std::string format_sgs_params(double L, double mu, double nu, int k_table);
std::string format_asgs_params(double L, double mu, double nu, double L_eta, double c, double b);

} // namespace sliding
