#include "sliding/config.hpp"

#include <fstream>
#include <sstream>

namespace sliding {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ParamError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& origin, int line, const std::string& key,
                  const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a number, got '" + value + "'");
    }
}

long parse_int(const std::string& origin, int line, const std::string& key,
               const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected an integer, got '" + value + "'");
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    bool have_problem = false, have_algorithm = false, have_seeds = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key=value, got '" + raw + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, lineno, "empty key");
        if (value.empty()) fail(origin, lineno, "key '" + key + "': empty value");

        if (key == "problem") {
            if (value == "qp") cfg.problem = RunConfig::Problem::Qp;
            else if (value == "portfolio") cfg.problem = RunConfig::Problem::Portfolio;
            else if (value == "tv") cfg.problem = RunConfig::Problem::Tv;
            else fail(origin, lineno, "problem must be qp|portfolio|tv");
            have_problem = true;
        } else if (key == "algorithm") {
            if (value == "rf-sgs") cfg.algorithm = RunConfig::Algorithm::RfSgs;
            else if (value == "rf-asgs") cfg.algorithm = RunConfig::Algorithm::RfAsgs;
            else fail(origin, lineno, "algorithm must be rf-sgs|rf-asgs");
            have_algorithm = true;
        } else if (key == "N") {
            cfg.N = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "eps") {
            cfg.eps = parse_real(origin, lineno, key, value);
        } else if (key == "seed") {
            cfg.seeds = {static_cast<std::uint64_t>(parse_int(origin, lineno, key, value))};
            have_seeds = true;
        } else if (key == "seeds") {
            cfg.seeds.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) fail(origin, lineno, "seeds: empty entry");
                cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(origin, lineno, key, item)));
            }
            if (cfg.seeds.empty()) fail(origin, lineno, "seeds: need at least one");
            have_seeds = true;
        } else if (key == "data_seed") {
            cfg.data_seed = static_cast<std::uint64_t>(parse_int(origin, lineno, key, value));
        } else if (key == "sigma") {
            cfg.sigma = parse_real(origin, lineno, key, value);
        } else if (key == "n") {
            cfg.n = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "tau") {
            cfg.tau = parse_real(origin, lineno, key, value);
        } else if (key == "rho") {
            cfg.rho = parse_real(origin, lineno, key, value);
        } else if (key == "mu_reg") {
            cfg.mu_reg = parse_real(origin, lineno, key, value);
        } else if (key == "mu_f") {
            cfg.mu_f = parse_real(origin, lineno, key, value);
        } else if (key == "L_f") {
            cfg.L_f = parse_real(origin, lineno, key, value);
        } else if (key == "set") {
            if (value != "simplex" && value != "box" && value != "whole")
                fail(origin, lineno, "set must be simplex|box|whole");
            cfg.set_kind = value;
        } else if (key == "width") {
            cfg.width = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "height") {
            cfg.height = static_cast<int>(parse_int(origin, lineno, key, value));
        } else if (key == "sigma_noise") {
            cfg.sigma_noise = parse_real(origin, lineno, key, value);
        } else if (key == "eta") {
            cfg.eta = parse_real(origin, lineno, key, value);
        } else if (key == "input_pgm") {
            cfg.input_pgm = value;
        } else if (key == "write_images") {
            if (value == "true" || value == "1") cfg.write_images = true;
            else if (value == "false" || value == "0") cfg.write_images = false;
            else fail(origin, lineno, "write_images must be true|false");
        } else if (key == "c") {
            cfg.c = parse_real(origin, lineno, key, value);
        } else if (key == "b") {
            cfg.b = parse_real(origin, lineno, key, value);
        } else if (key == "budget") {
            cfg.budget = static_cast<std::uint64_t>(parse_int(origin, lineno, key, value));
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "ref_limit") {
            cfg.ref_limit = static_cast<int>(parse_int(origin, lineno, key, value));
        } else {
            fail(origin, lineno, "unknown key '" + key + "'");
        }
    }

    // Cross-field validation; report by field name.
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw ParamError(origin + ": " + msg);
    };
    require(have_problem, "field 'problem' is required");
    require(have_algorithm, "field 'algorithm' is required");
    require(have_seeds, "field 'seed' or 'seeds' is required");
    require(cfg.N.has_value() || cfg.eps.has_value(), "one of 'N' or 'eps' is required");
    if (cfg.N) require(*cfg.N >= 0, "field 'N' must be >= 0");
    if (cfg.eps) require(*cfg.eps > 0, "field 'eps' must be > 0");
    require(!(cfg.eps && cfg.algorithm == RunConfig::Algorithm::RfSgs),
            "field 'eps': accuracy targets are only supported for rf-asgs");
    require(cfg.sigma >= 0, "field 'sigma' must be >= 0");
    require(cfg.n >= 1, "field 'n' must be >= 1");
    require(cfg.tau > 0, "field 'tau' must be > 0");
    require(cfg.rho >= 0, "field 'rho' must be >= 0");
    require(cfg.mu_reg > 0, "field 'mu_reg' must be > 0");
    require(cfg.mu_f > 0 && cfg.L_f >= cfg.mu_f, "fields 'mu_f'/'L_f' must satisfy 0 < mu_f <= L_f");
    require(cfg.width >= 2 && cfg.height >= 2, "fields 'width'/'height' must be >= 2");
    require(cfg.sigma_noise >= 0, "field 'sigma_noise' must be >= 0");
    require(cfg.eta > 0, "field 'eta' must be > 0");
    require(cfg.c > 0 && cfg.c <= 1.5, "field 'c' must lie in (0, 1.5]");
    require(cfg.b >= 0 && cfg.b <= 3.0 / cfg.c - 2.0, "field 'b' must lie in [0, 3/c - 2]");
    require(cfg.budget > 0, "field 'budget' must be > 0");
    require(!cfg.out.empty(), "field 'out' must not be empty");
    if (cfg.problem == RunConfig::Problem::Tv)
        require(cfg.algorithm == RunConfig::Algorithm::RfAsgs, "problem 'tv' requires rf-asgs");
    else
        require(cfg.algorithm == RunConfig::Algorithm::RfSgs,
                "problems 'qp' and 'portfolio' require rf-sgs");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

} // namespace sliding
