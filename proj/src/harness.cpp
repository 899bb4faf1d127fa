#include "sliding/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "sliding/problems.hpp"
#include "sliding/reference.hpp"
#include "sliding/rf_asgs.hpp"
#include "sliding/rf_sgs.hpp"
#include "sliding/schedule.hpp"

namespace sliding {

namespace {

FeasibleSet::Kind set_kind_of(const RunConfig& cfg) {
    if (cfg.set_kind == "simplex") return FeasibleSet::Kind::Simplex;
    if (cfg.set_kind == "box") return FeasibleSet::Kind::Box;
    return FeasibleSet::Kind::WholeSpace;
}

RunTrace run_sgs_configured(const RunConfig& cfg, std::uint64_t seed) {
    ProblemSpec problem = cfg.problem == RunConfig::Problem::Qp
                              ? make_qp(cfg.n, cfg.mu_f, cfg.L_f, cfg.rho, set_kind_of(cfg),
                                        cfg.data_seed)
                                    .second
                              : make_portfolio(cfg.n, cfg.data_seed, cfg.tau, cfg.rho, cfg.mu_reg)
                                    .second;
    problem.h.noise_sigma = cfg.sigma;
    problem.h.rng = CounterRng(seed, 1);

    const RfSgsParams params =
        derive_sgs_params(problem.f.lipschitz_L, problem.chi.strong_mu, problem.dg.nu);

    const Eigen::Index n = problem.set.dim();
    const Vector x0 = problem.set.project(Vector::Constant(n, 1.0 / static_cast<double>(n)));

    SgsOptions opts;
    opts.inner_budget = cfg.budget;
    if (cfg.n <= cfg.ref_limit)
        opts.psi_star = solve_reference(problem, x0, 1e-10).value;
    return run_rf_sgs(problem, x0, *cfg.N, params, opts);
}

RunTrace run_tv_configured(const RunConfig& cfg, std::uint64_t seed) {
    auto [inst, spec, f] =
        make_tv(cfg.width, cfg.height, cfg.tau, cfg.sigma_noise, cfg.data_seed, cfg.input_pgm);

    AsgsOptions opts;
    opts.inner_budget = cfg.budget;
    opts.sigma = cfg.sigma;
    opts.seed = seed;

    Vector x_out;
    RunTrace trace;
    if (cfg.eps) {
        auto [x, tr] = solve_spp(f, spec, FeasibleSet::whole_space(spec.primal_dim), inst.g,
                                 *cfg.eps, cfg.c, cfg.b, opts);
        x_out = x;
        trace = std::move(tr);
    } else {
        SmoothedOracle smoothed = smooth(spec, cfg.eta);
        const RfAsgsParams params =
            derive_asgs_params(f.lipschitz_L, f.strong_mu, 1.0, smoothed.L_eta, cfg.c, cfg.b);
        const FeasibleSet x_set = FeasibleSet::whole_space(spec.primal_dim);
        // The gap column needs phi*; skip the reference solve when the
        // smoothed problem is too large or too stiff to certify quickly.
        const double ref_cond = (f.lipschitz_L + smoothed.L_eta) / f.strong_mu;
        if (cfg.width * cfg.height <= cfg.ref_limit && ref_cond <= 1e5)
            opts.phi_star = solve_reference_smoothed(f, smoothed, x_set, inst.g, 1e-10).value;
        trace = run_rf_asgs(f, smoothed, x_set, inst.g, *cfg.N, params, opts, &x_out);
    }

    if (cfg.write_images) {
        write_pgm(inst.g, cfg.width, cfg.height, cfg.out + "_noisy.pgm");
        if (x_out.size() > 0)
            write_pgm(x_out, cfg.width, cfg.height,
                      cfg.out + "_seed" + std::to_string(seed) + "_denoised.pgm");
    }
    return trace;
}

} // namespace

RunTrace run_configured(const RunConfig& cfg, std::uint64_t seed) {
    if (cfg.problem == RunConfig::Problem::Tv) return run_tv_configured(cfg, seed);
    return run_sgs_configured(cfg, seed);
}

std::vector<std::string> run_sweep(const RunConfig& cfg) {
    const std::size_t runs = cfg.seeds.size();
    std::vector<RunTrace> traces(runs);
    std::vector<std::exception_ptr> errors(runs);

    // One thread per seed; each run owns its oracles and RNG state.
    std::vector<std::thread> workers;
    workers.reserve(runs);
    for (std::size_t i = 0; i < runs; ++i) {
        workers.emplace_back([&, i] {
            try {
                traces[i] = run_configured(cfg, cfg.seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<std::string> paths;
    for (std::size_t i = 0; i < runs; ++i) {
        const std::string path = cfg.out + "_seed" + std::to_string(cfg.seeds[i]) + ".csv";
        write_trace_csv(traces[i], path);
        paths.push_back(path);
    }
    const std::string agg = cfg.out + "_aggregate.csv";
    write_aggregate_csv(traces, agg);
    paths.push_back(agg);
    return paths;
}

void write_aggregate_csv(const std::vector<RunTrace>& traces, const std::string& path) {
    if (traces.empty()) throw ParamError("write_aggregate_csv: no traces");
    const std::size_t rows = traces.front().size();
    for (const auto& t : traces)
        if (t.size() != rows) throw ParamError("write_aggregate_csv: trace lengths differ");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_aggregate_csv: cannot open '" + path + "'");
    out << "k,objective_gap_mean,objective_gap_std,grad_map_norm_mean,grad_map_norm_std,"
           "grad_f_count,subgrad_h_count,elapsed_seconds_mean,elapsed_seconds_std\n";

    const double count = static_cast<double>(traces.size());
    auto put = [&out](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (std::size_t r = 0; r < rows; ++r) {
        auto stats = [&](auto getter) {
            double mean = 0.0;
            for (const auto& t : traces) mean += getter(t.rows[r]);
            mean /= count;
            double var = 0.0;
            for (const auto& t : traces) {
                const double d = getter(t.rows[r]) - mean;
                var += d * d;
            }
            return std::pair<double, double>(mean, std::sqrt(var / count));
        };
        const bool have_gap = traces.front().rows[r].objective_gap.has_value();
        const auto [gap_m, gap_s] =
            have_gap ? stats([](const TraceRow& x) { return *x.objective_gap; })
                     : std::pair<double, double>(0.0, 0.0);
        const auto [map_m, map_s] = stats([](const TraceRow& x) { return x.grad_map_norm; });
        const auto [sec_m, sec_s] = stats([](const TraceRow& x) { return x.elapsed_seconds; });

        out << traces.front().rows[r].k << ',';
        if (have_gap) {
            put(gap_m);
            out << ',';
            put(gap_s);
        } else {
            out << ',';
        }
        out << ',';
        put(map_m);
        out << ',';
        put(map_s);
        out << ',' << traces.front().rows[r].grad_f_count << ','
            << traces.front().rows[r].subgrad_h_count << ',';
        put(sec_m);
        out << ',';
        put(sec_s);
        out << '\n';
    }
    if (!out) throw IoError("write_aggregate_csv: write failed for '" + path + "'");
}

std::string format_sgs_params(double L, double mu, double nu, int k_table) {
    const RfSgsParams p = derive_sgs_params(L, mu, nu);
    char buf[128];
    std::string s;
    std::snprintf(buf, sizeof(buf), "c=%.6f\nbeta=%.6f\ngamma=%.6f\n", p.c, p.beta, p.gamma);
    s += buf;
    for (int k = 1; k <= k_table; ++k) {
        std::snprintf(buf, sizeof(buf), "T_%d=%llu\n", k,
                      static_cast<unsigned long long>(p.inner_count(k)));
        s += buf;
    }
    return s;
}

std::string format_asgs_params(double L, double mu, double nu, double L_eta, double c, double b) {
    const RfAsgsParams p = derive_asgs_params(L, mu, nu, L_eta, c, b);
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "lambda=%.6f\ngamma=%.6f\nbeta=%.6f\nT=%d\nalpha=%.6f\np=%.6f\n", p.lambda,
                  p.gamma, p.beta, p.T, p.alpha, p.p);
    return buf;
}

} // namespace sliding
