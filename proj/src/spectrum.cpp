#include "soliton/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "soliton/numerics.hpp"

namespace soliton {

namespace {

// Symmetric periodic second-difference rows: 3-point (order 2) or 5-point
// (order 4). Returned as the circulant offsets/coefficients, scaled 1/dt^2.
std::vector<std::pair<int, double>> d2_stencil(int order) {
    if (order == 2)
        return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    if (order == 4)
        return {{-2, -1.0 / 12.0}, {-1, 16.0 / 12.0}, {0, -30.0 / 12.0},
                {1, 16.0 / 12.0}, {2, -1.0 / 12.0}};
    throw validation_error("second-difference stencil order must be 2 or 4");
}

std::vector<double> apply_d2(const std::vector<double>& f, int order) {
    const int n = int(f.size());
    const double dt = 2.0 * M_PI / n;
    auto stencil = d2_stencil(order);
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (auto [off, c] : stencil) acc += c * f[(i + off + n) % n];
        out[i] = acc / (dt * dt);
    }
    return out;
}

}  // namespace

WeightedEigenproblem assemble_weighted_eigenproblem(const FlowParams& params,
                                                    const PeriodicGrid& h,
                                                    int stencil_order) {
    const int n = h.n;
    validate_grid_size(n);
    const double dt = 2.0 * M_PI / n;
    auto stencil = d2_stencil(stencil_order);

    WeightedEigenproblem prob;
    prob.A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (auto [off, c] : stencil) prob.A(i, (i + off + n) % n) += c / (dt * dt) * dt;
        prob.A(i, i) += dt;  // the +identity part of phi + phi''
    }
    prob.W_diag = Eigen::VectorXd(n);
    for (int i = 0; i < n; ++i) {
        if (!(h[i] > 0.0))
            throw validation_error("weight h^(-1/a) undefined: profile not positive");
        prob.W_diag(i) = std::pow(h[i], -1.0 / params.alpha) * dt;
    }
    return prob;
}

PeriodicGrid resample_profile(const PeriodicGrid& h, int n) {
    if (h.n == n) return h;
    TrigInterpolant ti(h.values);
    PeriodicGrid out(n);
    for (int i = 0; i < n; ++i) out[i] = ti.eval(out.theta(i));
    return out;
}

namespace {

Spectrum solve_once(const ShrinkerProfile& prof, int n, int keep, int stencil_order) {
    PeriodicGrid h = resample_profile(prof.h, n);
    WeightedEigenproblem prob = assemble_weighted_eigenproblem(prof.params, h, stencil_order);

    Eigen::MatrixXd W = prob.W_diag.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(prob.A, W);
    if (es.info() != Eigen::Success) throw solver_error("generalized eigensolver failed");

    Spectrum spec;
    spec.params = prof.params;
    spec.fold = prof.fold;
    spec.h = h;
    spec.stencil_order = stencil_order;
    spec.weight.assign(prob.W_diag.data(), prob.W_diag.data() + n);

    keep = std::min(keep, n);
    spec.lambdas.resize(keep);
    spec.eigenfunctions.resize(keep);
    for (int j = 0; j < keep; ++j) {
        int col = n - 1 - j;  // solver returns ascending order
        spec.lambdas[j] = es.eigenvalues()(col);
        spec.eigenfunctions[j].assign(es.eigenvectors().col(col).data(),
                                      es.eigenvectors().col(col).data() + n);
    }
    jacobi_exponents(spec);
    return spec;
}

}  // namespace

Spectrum eigen_spectrum(const ShrinkerProfile& prof, int n, int j_max, int stencil_order) {
    if (j_max < 1) throw validation_error("j_max must be >= 1");
    return solve_once(prof, n, 2 * j_max + 1, stencil_order);
}

Spectrum eigen_spectrum_refined(const ShrinkerProfile& prof, int n, int j_max,
                                int stencil_order) {
    Spectrum coarse = eigen_spectrum(prof, n, j_max, stencil_order);
    Spectrum fine = solve_once(prof, 2 * n, int(coarse.lambdas.size()), stencil_order);

    // Richardson on the known stencil order; the difference doubles as the
    // per-index discretization-error estimate.
    const double p = double(stencil_order);
    const double fac = std::pow(2.0, p);
    coarse.lambda_errors.resize(coarse.lambdas.size());
    for (std::size_t j = 0; j < coarse.lambdas.size(); ++j) {
        double d = fine.lambdas[j] - coarse.lambdas[j];
        coarse.lambda_errors[j] = std::fabs(d);
        coarse.lambdas[j] = fine.lambdas[j] + d / (fac - 1.0);
    }
    jacobi_exponents(coarse);
    return coarse;
}

std::pair<double, double> jacobi_exponents_for(double lambda) {
    double disc = 1.0 - 4.0 * lambda;
    if (disc < 0.0) throw validation_error("lambda above 1/4: complex Jacobi exponents");
    double root = std::sqrt(disc);
    return {-0.5 + 0.5 * root, -0.5 - 0.5 * root};
}

void jacobi_exponents(Spectrum& spec) {
    spec.betas_plus.resize(spec.lambdas.size());
    spec.betas_minus.resize(spec.lambdas.size());
    for (std::size_t j = 0; j < spec.lambdas.size(); ++j) {
        auto [bp, bm] = jacobi_exponents_for(spec.lambdas[j]);
        spec.betas_plus[j] = bp;
        spec.betas_minus[j] = bm;
    }
}

double round_lambda(const FlowParams& params, int j) {
    return 2.0 * params.alpha * (1.0 - 2.0 * params.alpha) * (1.0 - double(j) * j);
}

double Spectrum::l2h_inner(const std::vector<double>& f, const std::vector<double>& g) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) acc += weight[i] * f[i] * g[i];
    return acc;
}

SlowModeReport slow_mode_count(const Spectrum& spec) {
    const FlowParams& p = spec.params;
    const double cutoff = 1.0 - 2.0 * p.alpha;

    // Analytic cutoff eigenvalue, if one exists: round case when 1/sqrt(a)
    // is an integer (beta_k^+ = 1-2a), k-fold case always (the h'-mode has
    // lambda = 2(1-2a)(a-1), see the rotation eigenfunction).
    double cutoff_lambda = 0.0;
    bool has_cutoff_mode = false;
    if (spec.fold == fold_round) {
        double k = 1.0 / std::sqrt(p.alpha);
        if (std::fabs(k - std::round(k)) < 1e-9) {
            has_cutoff_mode = true;
            cutoff_lambda = round_lambda(p, int(std::round(k)));
        }
    } else {
        has_cutoff_mode = true;
        cutoff_lambda = 2.0 * (1.0 - 2.0 * p.alpha) * (p.alpha - 1.0);
    }

    SlowModeReport rep;
    rep.exact_resonance = has_cutoff_mode;
    rep.min_margin = 1e300;
    int K = -1;
    bool bracketed = false;
    for (std::size_t j = 0; j < spec.betas_plus.size(); ++j) {
        double err = spec.lambda_errors.empty() ? 0.0 : spec.lambda_errors[j];
        double band = 100.0 * err + 1e-11;
        bool at_cutoff = has_cutoff_mode && std::fabs(spec.lambdas[j] - cutoff_lambda) < band;
        double margin = std::fabs(spec.betas_plus[j] - cutoff);
        if (at_cutoff) {
            bracketed = true;  // the cutoff itself brackets the count
            continue;          // analytically excluded: beta^+ = 1-2a, not < 1-2a
        }
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin < 10.0 * err) rep.near_resonant = true;
        if (spec.betas_plus[j] < cutoff)
            K = int(j);
        else
            bracketed = true;
    }
    if (!bracketed)
        throw solver_error("j_max too small: the slow-mode cutoff was not bracketed");
    if (K < 0) throw solver_error("no slow modes found (unexpected: K >= 2 always)");
    rep.K = K;
    return rep;
}

// ---- PairedSpace ------------------------------------------------------------

PairedSpace::PairedSpace(const FlowParams& params, const PeriodicGrid& h, int stencil_order)
    : params_(params), h_(h), n_(h.n), stencil_order_(stencil_order) {
    const double dt = 2.0 * M_PI / n_;
    weight_.resize(n_);
    h_pow_.resize(n_);
    sin_.resize(n_);
    cos_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        if (!(h[i] > 0.0)) throw validation_error("paired space needs h > 0");
        weight_[i] = std::pow(h[i], -1.0 / params.alpha) * dt;
        h_pow_[i] = std::pow(h[i], 1.0 / params.alpha);
        sin_[i] = std::sin(h.theta(i));
        cos_[i] = std::cos(h.theta(i));
    }
    p_.f1 = h;
    p_.f2 = PeriodicGrid(n_);
    for (int i = 0; i < n_; ++i) p_.f2[i] = -2.0 * params.alpha * h[i];
    p_norm0_ = inner0(p_, p_);
    if (!(p_norm0_ < 0.0))
        throw solver_error("(h, -2a h) must have negative <,>_0 norm for alpha < 1/4");
}

std::vector<double> PairedSpace::minus_id_plus_d2(const std::vector<double>& f) const {
    auto d2 = apply_d2(f, stencil_order_);
    std::vector<double> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = -(f[i] + d2[i]);
    return out;
}

double PairedSpace::inner0(const PairedFunction& f, const PairedFunction& g) const {
    if (f.f1.n != n_ || g.f1.n != n_ || f.f2.n != n_ || g.f2.n != n_)
        throw validation_error("paired inner product: mismatched grids");
    // int (-f1 g1 + f1' g1') = -int f1 (g1 + g1''), by parts; using the same
    // discrete D2 as the eigenproblem keeps the eigenbasis exactly orthogonal.
    auto mg = minus_id_plus_d2(g.f1.values);
    const double dt = 2.0 * M_PI / n_;
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += f.f1[i] * mg[i] * dt + weight_[i] * f.f2[i] * g.f2[i];
    return acc;
}

double PairedSpace::inner(const PairedFunction& f, const PairedFunction& g) const {
    double base = inner0(f, g);
    double fp = inner0(f, p_), gp = inner0(g, p_);
    auto corr = [&](const PairedFunction& u, const std::vector<double>& trig) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i) acc += weight_[i] * (u.f1[i] + u.f2[i]) * trig[i];
        return acc;
    };
    return base + 2.0 * fp * gp / (-p_norm0_) + corr(f, sin_) * corr(g, sin_) +
           corr(f, cos_) * corr(g, cos_);
}

PairedFunction PairedSpace::apply_system_operator(const PairedFunction& f) const {
    PairedFunction out;
    out.f1 = f.f2;
    out.f2 = PeriodicGrid(n_);
    auto d2 = apply_d2(f.f1.values, stencil_order_);
    for (int i = 0; i < n_; ++i)
        out.f2[i] = -h_pow_[i] * (f.f1[i] + d2[i]) - f.f2[i];
    return out;
}

double PairedSpace::l2h_inner(const std::vector<double>& f, const std::vector<double>& g) const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += weight_[i] * f[i] * g[i];
    return acc;
}

}  // namespace soliton
