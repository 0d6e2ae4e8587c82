#include "soliton/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "soliton/numerics.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

namespace {

// derivative on a possibly non-uniform sample triple
double deriv3(const std::vector<double>& s, const std::vector<double>& f, std::size_t i) {
    if (i == 0) return (f[1] - f[0]) / (s[1] - s[0]);
    if (i + 1 == s.size()) return (f[i] - f[i - 1]) / (s[i] - s[i - 1]);
    double hl = s[i] - s[i - 1], hr = s[i + 1] - s[i];
    return (f[i + 1] * hl * hl - f[i - 1] * hr * hr + f[i] * (hr * hr - hl * hl)) /
           (hl * hr * (hl + hr));
}

int check_hypotheses(const Trajectory& t, double lambda, double sigma, double slack) {
    // interior samples only: centered differences carry an O(h^2 |f'''|)
    // error, bounded through the inequalities by h^2 (1+lambda+3sigma)^3 tot
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (t.x[i] < -slack || t.y[i] < -slack || t.z[i] < -slack) return int(i);
        double tot = t.x[i] + t.y[i] + t.z[i];
        double h = 0.5 * (t.s[i + 1] - t.s[i - 1]);
        double rate = 1.0 + lambda + 3.0 * sigma;
        double tol = slack * (1.0 + lambda + sigma) * (1.0 + tot) +
                     h * h * rate * rate * rate * tot;
        double xp = deriv3(t.s, t.x, i);
        double yp = deriv3(t.s, t.y, i);
        double zp = deriv3(t.s, t.z, i);
        if (xp - lambda * t.x[i] < -sigma * (t.y[i] + t.z[i]) - tol) return int(i);
        if (std::fabs(yp) > sigma * tot + tol) return int(i);
        if (zp + lambda * t.z[i] > sigma * (t.x[i] + t.y[i]) + tol) return int(i);
    }
    return -1;
}

}  // namespace

MzReport merle_zaag_classify(const Trajectory& t, double lambda, double sigma,
                             double threshold, double slack) {
    if (t.size() < 8) throw validation_error("trajectory too short to classify");
    MzReport rep;
    rep.first_violation = check_hypotheses(t, lambda, sigma, slack);
    if (rep.first_violation >= 0) {
        rep.cls = MzClass::HypothesesViolated;
        return rep;
    }
    std::size_t lo = t.size() - std::max<std::size_t>(4, t.size() / 5);
    double rn = 0.0, rs = 0.0;
    int n = 0;
    for (std::size_t i = lo; i < t.size(); ++i) {
        rn += (t.x[i] + t.z[i]) / std::max(t.y[i], 1e-300);
        rs += (t.x[i] + t.y[i]) / std::max(t.z[i], 1e-300);
        ++n;
    }
    rep.tail_ratio_neutral = rn / n;
    rep.tail_ratio_stable = rs / n;
    if (rep.tail_ratio_neutral < threshold && rep.tail_ratio_neutral < rep.tail_ratio_stable)
        rep.cls = MzClass::NeutralDominates;
    else if (rep.tail_ratio_stable < threshold &&
             rep.tail_ratio_stable < rep.tail_ratio_neutral)
        rep.cls = MzClass::StableDominates;
    else
        throw solver_error("tail ratios do not separate; lengthen the trajectory");
    return rep;
}

MzBound quantitative_mz_bound(const Trajectory& t, double lambda, double sigma,
                              double epsilon, double L) {
    if (check_hypotheses(t, lambda, sigma, 1e-7) >= 0)
        throw validation_error("trajectory violates the differential inequalities");
    for (std::size_t i = 0; i < t.size(); ++i) {
        double tot = t.x[i] + t.y[i] + t.z[i];
        if (!(tot > 0.0 && tot < epsilon))
            throw validation_error("trajectory violates 0 < x+y+z < epsilon");
    }
    MzBound out;
    out.margin = 1e300;
    const double tail = 4.0 * epsilon * std::exp(-lambda * L / 4.0);
    bool any = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::fabs(t.s[i]) > L / 2.0) continue;
        any = true;
        double bound = 8.0 * sigma / lambda * t.y[i] + tail;
        out.margin = std::min(out.margin, bound - (t.x[i] + t.z[i]));
    }
    if (!any) throw validation_error("no samples inside [-L/2, L/2]");
    out.ok = out.margin >= 0.0;
    return out;
}

namespace {

// smooth random coefficient in [lo, hi] as a short sine series
struct SmoothCoeff {
    double c[4], w[4], ph[4], lo, hi;
    double operator()(double s) const {
        double v = 0.0;
        for (int m = 0; m < 4; ++m) v += c[m] * std::sin(w[m] * s + ph[m]);
        // v in [-1, 1] by construction of c; map to [lo, hi]
        return lo + (hi - lo) * 0.5 * (v + 1.0);
    }
};

SmoothCoeff make_coeff(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SmoothCoeff sc;
    sc.lo = lo;
    sc.hi = hi;
    double norm = 0.0;
    for (int m = 0; m < 4; ++m) {
        sc.c[m] = uni(rng) - 0.5;
        norm += std::fabs(sc.c[m]);
        sc.w[m] = 0.2 + 1.5 * uni(rng);
        sc.ph[m] = 2.0 * M_PI * uni(rng);
    }
    for (int m = 0; m < 4; ++m) sc.c[m] /= norm;
    return sc;
}

}  // namespace

Trajectory random_mz_system(double lambda, double sigma, double L, double epsilon, int n,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SmoothCoeff a1 = make_coeff(rng, 0.0, 1.0);
    SmoothCoeff a2 = make_coeff(rng, -1.0, 1.0);
    SmoothCoeff a3 = make_coeff(rng, 0.0, 1.0);

    Trajectory t;
    t.s.resize(n);
    t.x.assign(n, 0.0);
    t.y.assign(n, 0.0);
    t.z.assign(n, 0.0);
    const double h = 2.0 * L / (n - 1);
    for (int i = 0; i < n; ++i) t.s[i] = -L + i * h;

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double y0 = 0.55 + 0.3 * uni(rng);
    const double z0 = 0.05 + 0.2 * uni(rng);

    // fixed-point sweeps: y, z forward given x; x backward from x(L) = 0
    auto rk4 = [](double v, double s, double h_step, auto rhs) {
        double k1 = rhs(s, v);
        double k2 = rhs(s + h_step / 2, v + h_step / 2 * k1);
        double k3 = rhs(s + h_step / 2, v + h_step / 2 * k2);
        double k4 = rhs(s + h_step, v + h_step * k3);
        return v + h_step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    };
    auto lin = [](const std::vector<double>& f, const Trajectory& t, double s) {
        double fi = (s - t.s.front()) / (t.s[1] - t.s[0]);
        int i = std::clamp(int(std::floor(fi)), 0, int(f.size()) - 2);
        double w = fi - i;
        return f[i] * (1 - w) + f[i + 1] * w;
    };

    for (int sweep = 0; sweep < 4; ++sweep) {
        t.y[0] = y0;
        t.z[0] = z0;
        for (int i = 0; i + 1 < n; ++i) {
            auto rhs_y = [&](double s, double v) {
                return sigma * a2(s) * (lin(t.x, t, s) + v + lin(t.z, t, s));
            };
            auto rhs_z = [&](double s, double v) {
                return -lambda * v + sigma * a3(s) * (lin(t.x, t, s) + lin(t.y, t, s));
            };
            t.y[i + 1] = rk4(t.y[i], t.s[i], h, rhs_y);
            t.z[i + 1] = rk4(t.z[i], t.s[i], h, rhs_z);
        }
        t.x[n - 1] = 0.0;
        for (int i = n - 1; i > 0; --i) {
            auto rhs_x = [&](double s, double v) {
                return lambda * v - sigma * a1(s) * (lin(t.y, t, s) + lin(t.z, t, s));
            };
            t.x[i - 1] = rk4(t.x[i], t.s[i], -h, rhs_x);
        }
        for (int i = 0; i < n; ++i) t.x[i] = std::max(t.x[i], 0.0);
    }

    double peak = 0.0;
    for (int i = 0; i < n; ++i) peak = std::max(peak, t.x[i] + t.y[i] + t.z[i]);
    double scale = 0.9 * epsilon / peak;
    for (int i = 0; i < n; ++i) {
        t.x[i] *= scale;
        t.y[i] *= scale;
        t.z[i] *= scale;
    }
    return t;
}

// ---- neutral system ----------------------------------------------------------

NeutralCoefficients neutral_coefficients(int k) {
    if (k < 3) throw validation_error("neutral system needs integer k >= 3");
    NeutralCoefficients nc;
    nc.k = k;
    nc.alpha = 1.0 / (double(k) * k);
    const double a = nc.alpha;
    nc.M = std::pow(2.0 * a, -a) * std::pow(1.0 - 2.0 * a, 2.0 - a);

    FlowParams p = derive_params(a);
    auto betas = [&](int j) { return jacobi_exponents_for(round_lambda(p, j)); };
    std::tie(nc.beta0p, nc.beta0m) = betas(0);
    std::tie(nc.betakp, nc.betakm) = betas(k);
    std::tie(nc.beta2kp, nc.beta2km) = betas(2 * k);

    const double inv = 1.0 / a - 1.0;
    nc.a = nc.M * nc.M * inv * (double(k) * k - 4.0) /
           (3.0 * (1.0 - 2.0 * a) * (nc.betakp - nc.betakm));
    nc.c0_slave = nc.M * inv / (4.0 * (1.0 - 2.0 * a));
    nc.q_slave = nc.M * inv / (4.0 * (1.0 - 2.0 * a) * (1.0 - 4.0));
    return nc;
}

namespace {

struct NeutralOde {
    NeutralCoefficients nc;

    void operator()(const std::vector<double>& v, std::vector<double>& dv, double) const {
        const double a = nc.alpha;
        const double one2a = 1.0 - 2.0 * a;
        const double inv = 1.0 / a - 1.0;
        const double c0p = v[0], c0m = v[1], ck = v[2], sk = v[3];
        const double c2kp = v[4], c2km = v[5], s2kp = v[6], s2km = v[7];
        const double rho = ck * ck + sk * sk;

        const double F0 = nc.M * inv / (2.0 * (nc.beta0p - nc.beta0m));
        const double F2 = nc.M * inv / (2.0 * (nc.beta2kp - nc.beta2km));
        const double gk = nc.betakp - nc.betakm;
        const double cubic = 3.0 * nc.M * nc.M * inv * (1.0 / 3.0 - 2.0 / (3.0 * a)) /
                             (4.0 * one2a * gk);

        // j = 0 pair: both rates stable, verbatim orientation
        dv[0] = (nc.beta0p - one2a) * c0p + F0 * rho;
        dv[1] = (nc.beta0m - one2a) * c0m - F0 * rho;

        // j = 2k pairs: the + rate points away from the slaved manifold, so
        // that equation is negated as a whole (slaved value unchanged)
        const double X = ck * ck - sk * sk, Y = 2.0 * ck * sk;
        dv[4] = -((nc.beta2kp - one2a) * c2kp + F2 * X);
        dv[5] = (nc.beta2km - one2a) * c2km - F2 * X;
        dv[6] = -((nc.beta2kp - one2a) * s2kp + F2 * Y);
        dv[7] = (nc.beta2km - one2a) * s2km - F2 * Y;

        // neutral pair on the decaying branch (negated verbatim equations)
        const double c0 = c0p + c0m, c2k = c2kp + c2km, s2k = s2kp + s2km;
        const double four_a = 1.0 - 4.0 / a;
        dv[2] = nc.M / gk * (2.0 * ck * c0 + four_a * (ck * c2k + sk * s2k)) +
                cubic * (ck * ck * ck + ck * sk * sk);
        dv[3] = nc.M / gk * (2.0 * sk * c0 + four_a * (s2k * ck - c2k * sk)) +
                cubic * (sk * sk * sk + sk * ck * ck);
    }
};

}  // namespace

NeutralTrajectory integrate_neutral_system(int k, const NeutralState& init, double s_max,
                                           int n_samples) {
    if (!(init.rho() > 0.0)) throw validation_error("initial neutral energy rho must be > 0");
    if (init.rho() > 1e-2 * (1.0 + 1e-9))
        throw validation_error("initial rho must be <= 1e-2 (small-data regime)");

    NeutralTrajectory traj;
    traj.coeffs = neutral_coefficients(k);
    traj.sign_note =
        "stabilized decaying-branch orientation: fast equations with outward linear rates "
        "and the two neutral equations are negated (slaved values preserved); the raw "
        "orientation gives rho' = +a rho^2 and blows up in finite s";

    NeutralOde ode{traj.coeffs};
    OdeSystem sys = [&ode](const std::vector<double>& x, std::vector<double>& dx, double t) {
        ode(x, dx, t);
    };

    std::vector<double> v = {init.c0p, init.c0m, init.ck,   init.sk,
                             init.c2kp, init.c2km, init.s2kp, init.s2km};
    double s = 0.0;
    traj.s.reserve(n_samples + 1);
    for (int i = 0; i <= n_samples; ++i) {
        double target = s_max * double(i) / n_samples;
        if (i > 0) integrate_to(sys, v, s, target, 1e-11);
        s = target;
        NeutralState st{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
        double rho = st.rho();
        if (!(rho > 1e-300) || rho > 1.0)
            throw solver_error("rho left (0, 1]: underflow or blow-up at s = " +
                               std::to_string(s));
        traj.s.push_back(s);
        traj.states.push_back(st);
        traj.rho.push_back(rho);
    }
    return traj;
}

NeutralState random_neutral_state(int k, double rho0, std::uint64_t seed) {
    (void)k;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    NeutralState st;
    double phase = M_PI * uni(rng);
    st.ck = std::sqrt(rho0) * std::cos(phase);
    st.sk = std::sqrt(rho0) * std::sin(phase);
    const double amp = std::sqrt(rho0) / 10.0;
    st.c0p = amp * uni(rng);
    st.c0m = amp * uni(rng);
    st.c2kp = amp * uni(rng);
    st.c2km = amp * uni(rng);
    st.s2kp = amp * uni(rng);
    st.s2km = amp * uni(rng);
    return st;
}

Trajectory NeutralTrajectory::xyz() const {
    Trajectory t;
    t.s = s;
    t.x.resize(s.size());
    t.y.resize(s.size());
    t.z.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const NeutralState& st = states[i];
        t.x[i] = std::hypot(st.c2kp, st.s2kp);
        t.y[i] = std::sqrt(rho[i]);
        t.z[i] = std::fabs(st.c0p) + std::fabs(st.c0m) + std::hypot(st.c2km, st.s2km);
    }
    return t;
}

SlavingReport slaving_relations_check(const NeutralTrajectory& t) {
    const NeutralCoefficients& nc = t.coeffs;
    const double a = nc.alpha;
    const double one2a = 1.0 - 2.0 * a;

    SlavingReport rep;
    FlowParams p = derive_params(a);
    for (int j = 0; j <= 3 * nc.k; ++j) {
        auto [bp, bm] = jacobi_exponents_for(round_lambda(p, j));
        double lhs = (bp - one2a) * (bm - one2a);
        double rhs = 2.0 * one2a * (1.0 - a * double(j) * j);
        rep.identity_defect = std::max(rep.identity_defect, std::fabs(lhs - rhs));
    }

    // tail averages of the slaving ratios
    std::size_t lo = t.s.size() - std::max<std::size_t>(4, t.s.size() / 5);
    double c0r = 0.0, qr = 0.0;
    int n = 0;
    for (std::size_t i = lo; i < t.s.size(); ++i) {
        const NeutralState& st = t.states[i];
        double rho = t.rho[i];
        double c0 = st.c0p + st.c0m;
        double Q = (st.c2kp + st.c2km) * (st.ck * st.ck - st.sk * st.sk) +
                   (st.s2kp + st.s2km) * (2.0 * st.ck * st.sk);
        c0r += c0 / rho;
        qr += Q / (rho * rho);
        ++n;
    }
    rep.c0_ratio = c0r / n;
    rep.q_ratio = qr / n;
    rep.c0_expected = nc.c0_slave;
    rep.q_expected = nc.q_slave;

    // fitted decay coefficient: 1/rho is asymptotically a_fit * s + const
    std::vector<double> ss, inv;
    for (std::size_t i = t.s.size() / 2; i < t.s.size(); ++i) {
        ss.push_back(t.s[i]);
        inv.push_back(1.0 / t.rho[i]);
    }
    rep.a_fit = fit_line(ss, inv).slope;
    rep.srho_end = t.s.back() * t.rho.back();
    return rep;
}

}  // namespace soliton
