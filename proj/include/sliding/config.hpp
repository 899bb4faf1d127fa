#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sliding/errors.hpp"

namespace sliding {

// Flat key=value run configuration ('#' starts a comment). Every field is
// validated up front; errors carry the offending line or field.
struct RunConfig {
    enum class Problem { Qp, Portfolio, Tv };
    enum class Algorithm { RfSgs, RfAsgs };

    Problem problem = Problem::Qp;
    Algorithm algorithm = Algorithm::RfSgs;

    std::optional<int> N;        // outer iterations...
    std::optional<double> eps;   // ...or an accuracy target (rf-asgs only)
    std::vector<std::uint64_t> seeds{0}; // oracle-noise seeds, one run per seed
    std::uint64_t data_seed = 0;         // instance generation seed
    double sigma = 0.0;          // oracle noise level

    // qp / portfolio
    int n = 20;
    double tau = 1.0;
    double rho = 0.1;
    double mu_reg = 0.1;
    double mu_f = 1.0;
    double L_f = 100.0;
    std::string set_kind = "simplex"; // simplex | box | whole

    // tv
    int width = 16, height = 16;
    double sigma_noise = 0.05;
    double eta = 1e-3;
    std::string input_pgm;
    bool write_images = false;

    // rf-asgs tuning
    double c = 1.5;
    double b = 0.0;

    std::uint64_t budget = 10'000'000;
    std::string out = "trace";
    // Reference solve for the gap column is skipped above this many unknowns.
    int ref_limit = 4096;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

} // namespace sliding
