#include "sliding/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <fstream>
#include <memory>

#include "sliding/rng.hpp"

namespace sliding {

namespace {

// Random orthogonal matrix from the QR factorization of a seeded Gaussian.
Matrix random_orthogonal(Eigen::Index n, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    Matrix G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) G.col(j) = rng.next_gaussians(n);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    return Q;
}

} // namespace

std::pair<PortfolioInstance, ProblemSpec> make_portfolio(Eigen::Index n, std::uint64_t seed,
                                                         double tau, double rho, double mu_reg) {
    if (n < 2) throw ParamError("make_portfolio: n must be >= 2");
    if (!(tau > 0.0)) throw ParamError("make_portfolio: tau must be > 0");
    if (rho < 0.0) throw ParamError("make_portfolio: rho must be >= 0");
    if (!(mu_reg > 0.0)) throw ParamError("make_portfolio: mu_reg must be > 0");

    CounterRng rng(seed, 0x706f7274ULL);

    // Factor model covariance, then an affine spectral rescale pinning the
    // extreme eigenvalues to [lambda_max/8000, lambda_max].
    const Eigen::Index r = std::max<Eigen::Index>(2, n / 4);
    Matrix B(n, r);
    for (Eigen::Index j = 0; j < r; ++j) B.col(j) = rng.next_gaussians(n);
    Matrix S = B * B.transpose() / static_cast<double>(r);
    for (Eigen::Index i = 0; i < n; ++i) S(i, i) += 0.05 * rng.next_u01();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    const double target_hi = 0.4;
    const double target_lo = target_hi / 8000.0;
    const double a = (target_hi - target_lo) / (hi - lo);
    const double shift = target_lo - a * lo;

    PortfolioInstance inst;
    inst.n = n;
    inst.Sigma0 = a * S + shift * Matrix::Identity(n, n);
    inst.Sigma0 = 0.5 * (inst.Sigma0 + inst.Sigma0.transpose()).eval();
    inst.q_returns = Vector(n);
    for (Eigen::Index i = 0; i < n; ++i) inst.q_returns[i] = 0.1 * rng.next_u01();
    inst.tau = tau;
    inst.rho = rho;
    inst.mu_reg = mu_reg;
    inst.seed = seed;

    // Strong convexity moves from f into chi: f keeps (tau/2) w'Sigma0 w - q'w,
    // chi carries (tau*mu_reg/2)||w||^2, and the composite value is unchanged.
    auto data = std::make_shared<PortfolioInstance>(inst);
    ProblemSpec spec{
        SmoothOracle{
            [data](const Vector& w) {
                return 0.5 * data->tau * w.dot(data->Sigma0 * w) - data->q_returns.dot(w);
            },
            [data](const Vector& w) {
                return Vector(data->tau * (data->Sigma0 * w) - data->q_returns);
            },
            tau * (target_hi + mu_reg), // tau * lambda_max(Sigma)
            0.0,
        },
        StochasticSubgradOracle{},
        SimpleTerm::quadratic(tau * mu_reg),
        FeasibleSet::simplex(n),
        euclidean_generator(n),
        NonsmoothStructure::L1,
        rho,
    };
    const double rho_c = rho;
    spec.h = make_noisy(
        [rho_c](const Vector& w) {
            return Vector(rho_c * w.unaryExpr([](double v) {
                return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
            }));
        },
        0.0, seed);
    spec.h.exact_value = [rho_c](const Vector& w) { return rho_c * w.lpNorm<1>(); };
    spec.h.lipschitz_M = rho * std::sqrt(static_cast<double>(n)); // simplex: tight constant
    return {inst, spec};
}

ProblemSpec qp_problem_spec(const Matrix& A, const Vector& b, double rho_l1, double mu_f,
                            double L_f, FeasibleSet set, std::uint64_t seed) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || b.size() != n) throw DimensionError("qp_problem_spec: shape mismatch");
    if (!(mu_f > 0.0) || L_f < mu_f) throw ParamError("qp_problem_spec: need 0 < mu_f <= L_f");
    if (rho_l1 < 0.0) throw ParamError("qp_problem_spec: rho_l1 must be >= 0");

    auto A_data = std::make_shared<Matrix>(A);
    auto b_data = std::make_shared<Vector>(b);
    const double mu = mu_f;
    ProblemSpec spec{
        SmoothOracle{
            // f after the strong-convexity shift: 0.5 x'Ax - b'x - mu/2 ||x||^2
            [A_data, b_data, mu](const Vector& x) {
                return 0.5 * x.dot(*A_data * x) - b_data->dot(x) - 0.5 * mu * x.squaredNorm();
            },
            [A_data, b_data, mu](const Vector& x) {
                return Vector(*A_data * x - *b_data - mu * x);
            },
            L_f,
            0.0,
        },
        StochasticSubgradOracle{},
        SimpleTerm::quadratic(mu_f),
        set,
        euclidean_generator(n),
        rho_l1 > 0.0 ? NonsmoothStructure::L1 : NonsmoothStructure::Zero,
        rho_l1,
    };
    const double rho_c = rho_l1;
    spec.h = make_noisy(
        [rho_c](const Vector& x) {
            return Vector(rho_c * x.unaryExpr([](double v) {
                return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
            }));
        },
        0.0, seed);
    spec.h.exact_value = [rho_c](const Vector& x) { return rho_c * x.lpNorm<1>(); };
    const double root_n = std::sqrt(static_cast<double>(n));
    spec.h.lipschitz_M = spec.set.nonnegative() ? rho_l1 * root_n : 2.0 * rho_l1 * root_n;
    return spec;
}

std::pair<SyntheticQp, ProblemSpec> make_qp(Eigen::Index n, double mu_f, double L_f,
                                            double rho_l1, FeasibleSet::Kind set_kind,
                                            std::uint64_t seed) {
    if (!(mu_f > 0.0)) throw ParamError("make_qp: mu_f must be > 0");
    if (L_f < mu_f) throw ParamError("make_qp: need mu_f <= L_f");
    if (rho_l1 < 0.0) throw ParamError("make_qp: rho_l1 must be >= 0");
    if (n < 1) throw ParamError("make_qp: n must be >= 1");

    SyntheticQp qp;
    qp.n = n;
    qp.mu_f = mu_f;
    qp.L_f = L_f;
    qp.rho_l1 = rho_l1;
    qp.seed = seed;

    if (n == 1) {
        qp.A = Matrix::Constant(1, 1, L_f);
    } else {
        Vector lambda(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            lambda[i] = mu_f * std::pow(L_f / mu_f, t); // geometric spectrum
        }
        const Matrix Q = random_orthogonal(n, seed, 0x7170ULL);
        qp.A = Q * lambda.asDiagonal() * Q.transpose();
        qp.A = 0.5 * (qp.A + qp.A.transpose()).eval();
    }
    qp.b = gaussian_vector(n, seed, 0x7171ULL);

    FeasibleSet set = set_kind == FeasibleSet::Kind::Simplex ? FeasibleSet::simplex(n)
                      : set_kind == FeasibleSet::Kind::Box   ? FeasibleSet::box(-1.0, 1.0, n)
                                                             : FeasibleSet::whole_space(n);
    return {qp, qp_problem_spec(qp.A, qp.b, rho_l1, mu_f, L_f, set, seed)};
}

Vector tv_apply_K(const Vector& u, Eigen::Index w, Eigen::Index h) {
    if (u.size() != w * h) throw DimensionError("tv_apply_K: image size mismatch");
    Vector p = Vector::Zero(2 * w * h);
    // Horizontal differences first, vertical stacked after; the difference at
    // the last column/row is 0 (Neumann boundary).
    for (Eigen::Index i = 0; i < h; ++i)
        for (Eigen::Index j = 0; j + 1 < w; ++j) p[i * w + j] = u[i * w + j + 1] - u[i * w + j];
    const Eigen::Index off = w * h;
    for (Eigen::Index i = 0; i + 1 < h; ++i)
        for (Eigen::Index j = 0; j < w; ++j) p[off + i * w + j] = u[(i + 1) * w + j] - u[i * w + j];
    return p;
}

Vector tv_apply_Kt(const Vector& p, Eigen::Index w, Eigen::Index h) {
    if (p.size() != 2 * w * h) throw DimensionError("tv_apply_Kt: dual size mismatch");
    Vector u = Vector::Zero(w * h);
    for (Eigen::Index i = 0; i < h; ++i)
        for (Eigen::Index j = 0; j + 1 < w; ++j) {
            const double v = p[i * w + j];
            u[i * w + j] -= v;
            u[i * w + j + 1] += v;
        }
    const Eigen::Index off = w * h;
    for (Eigen::Index i = 0; i + 1 < h; ++i)
        for (Eigen::Index j = 0; j < w; ++j) {
            const double v = p[off + i * w + j];
            u[i * w + j] -= v;
            u[(i + 1) * w + j] += v;
        }
    return u;
}

Vector phantom_image(Eigen::Index width, Eigen::Index height) {
    Vector img = Vector::Constant(width * height, 0.2);
    auto at = [&](Eigen::Index i, Eigen::Index j) -> double& { return img[i * width + j]; };
    // Bright block upper-left, mid-gray block lower-right, disk in between.
    for (Eigen::Index i = height / 8; i < 3 * height / 8; ++i)
        for (Eigen::Index j = width / 8; j < width / 2; ++j) at(i, j) = 0.8;
    for (Eigen::Index i = height / 2; i < 7 * height / 8; ++i)
        for (Eigen::Index j = 5 * width / 8; j < 7 * width / 8; ++j) at(i, j) = 0.5;
    const double ci = 0.65 * static_cast<double>(height);
    const double cj = 0.3 * static_cast<double>(width);
    const double rad = static_cast<double>(std::min(width, height)) / 6.0;
    for (Eigen::Index i = 0; i < height; ++i)
        for (Eigen::Index j = 0; j < width; ++j) {
            const double di = static_cast<double>(i) - ci;
            const double dj = static_cast<double>(j) - cj;
            if (di * di + dj * dj <= rad * rad) at(i, j) = 1.0;
        }
    return img;
}

std::tuple<TvInstance, SaddleSpec, SmoothOracle> make_tv(Eigen::Index width, Eigen::Index height,
                                                         double tau, double sigma_noise,
                                                         std::uint64_t seed,
                                                         const std::string& pgm_path) {
    if (width < 2 || height < 2) throw ParamError("make_tv: width and height must be >= 2");
    if (!(tau > 0.0)) throw ParamError("make_tv: tau must be > 0");
    if (sigma_noise < 0.0) throw ParamError("make_tv: sigma_noise must be >= 0");

    Vector truth;
    if (pgm_path.empty()) {
        truth = phantom_image(width, height);
    } else {
        auto [img, w, h] = read_pgm(pgm_path);
        if (w != width || h != height)
            throw FormatError("make_tv: PGM size " + std::to_string(w) + "x" + std::to_string(h) +
                              " does not match requested " + std::to_string(width) + "x" +
                              std::to_string(height));
        truth = img;
    }

    TvInstance inst;
    inst.width = width;
    inst.height = height;
    inst.tau = tau;
    inst.sigma_noise = sigma_noise;
    inst.seed = seed;
    inst.g = truth;
    if (sigma_noise > 0.0) {
        CounterRng rng(seed, 0x7476ULL);
        inst.g += sigma_noise * rng.next_gaussians(width * height);
    }
    inst.g = box_clip(inst.g, 0.0, 1.0);

    const Eigen::Index n = width * height;
    const Eigen::Index m = 2 * n;

    SaddleSpec spec;
    spec.primal_dim = n;
    spec.dual_dim = m;
    spec.K_raw = [width, height](const Vector& u) { return tv_apply_K(u, width, height); };
    spec.Kt_raw = [width, height](const Vector& p) { return tv_apply_Kt(p, width, height); };
    spec.op_norm_K = std::sqrt(8.0); // analytic bound for forward differences
    spec.dual_set = FeasibleSet::box(-1.0, 1.0, m);
    spec.j_kind = SaddleSpec::DualTerm::Zero;
    spec.mu_s = 1.0;
    spec.Omega = 0.5 * static_cast<double>(m); // max of d over the unit box

    auto g_data = std::make_shared<Vector>(inst.g);
    SmoothOracle f{
        [g_data, tau](const Vector& u) { return 0.5 * tau * (u - *g_data).squaredNorm(); },
        [g_data, tau](const Vector& u) { return Vector(tau * (u - *g_data)); },
        tau,
        tau,
    };
    return {inst, std::move(spec), std::move(f)};
}

void write_pgm(const Vector& image, Eigen::Index width, Eigen::Index height,
               const std::string& path) {
    if (image.size() != width * height) throw DimensionError("write_pgm: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_pgm: cannot open '" + path + "'");
    out << "P5\n" << width << " " << height << "\n255\n";
    for (Eigen::Index i = 0; i < image.size(); ++i) {
        const double v = std::min(std::max(image[i], 0.0), 1.0);
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
    if (!out) throw IoError("write_pgm: write failed for '" + path + "'");
}

std::tuple<Vector, Eigen::Index, Eigen::Index> read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_pgm: cannot open '" + path + "'");

    auto next_token = [&in, &path]() -> std::string {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') { // comment to end of line
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw FormatError("read_pgm: truncated header in '" + path + "'");
        return tok;
    };

    if (next_token() != "P5") throw FormatError("read_pgm: not a binary PGM (P5)");
    Eigen::Index w = 0, h = 0;
    long maxval = 0;
    try {
        w = std::stol(next_token());
        h = std::stol(next_token());
        maxval = std::stol(next_token());
    } catch (const std::exception&) {
        throw FormatError("read_pgm: malformed header in '" + path + "'");
    }
    if (w < 1 || h < 1) throw FormatError("read_pgm: bad dimensions");
    if (maxval != 255) throw FormatError("read_pgm: only maxval 255 is supported");

    Vector img(w * h);
    for (Eigen::Index i = 0; i < w * h; ++i) {
        const int c = in.get();
        if (c == EOF) throw FormatError("read_pgm: truncated pixel data");
        img[i] = static_cast<double>(c) / 255.0;
    }
    return {img, w, h};
}

} // namespace sliding
