#include "soliton/exterior.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/numerics.hpp"

namespace soliton {

namespace {

// integral_0^D e^(-b t) t^k dt for k = 0, 1, 2; series near b D = 0.
void exp_moments(double b, double D, double& m0, double& m1, double& m2) {
    const double x = b * D;
    if (std::fabs(x) < 1e-3) {
        m0 = D * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
        m1 = D * D * (0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0);
        m2 = D * D * D * (1.0 / 3.0 - x / 4.0 + x * x / 10.0 - x * x * x / 36.0);
        return;
    }
    const double e = std::exp(-x);
    m0 = (1.0 - e) / b;
    m1 = (1.0 - (1.0 + x) * e) / (b * b);
    m2 = (2.0 - (2.0 + 2.0 * x + x * x) * e) / (b * b * b);
}

// integral over one cell of e^(-b tau) p(tau) dtau, p the quadratic with
// p(0) = v0, p(D) = v1, p(2D) = v2 (one-sided) -- or centered variant below.
double cell_integral_forward(double b, double D, double v0, double v1, double v2) {
    double m0, m1, m2;
    exp_moments(b, D, m0, m1, m2);
    double d1 = (-3.0 * v0 + 4.0 * v1 - v2) / (2.0 * D);
    double d2 = (v0 - 2.0 * v1 + v2) / (D * D);
    return v0 * m0 + d1 * m1 + 0.5 * d2 * m2;
}

// p(0) = v0, p(D) = vp, p(-D) = vm
double cell_integral_centered(double b, double D, double v0, double vp, double vm) {
    double m0, m1, m2;
    exp_moments(b, D, m0, m1, m2);
    double d1 = (vp - vm) / (2.0 * D);
    double d2 = (vp - 2.0 * v0 + vm) / (D * D);
    return v0 * m0 + d1 * m1 + 0.5 * d2 * m2;
}

// stable h^(1/a) [ (1+x)^(1/a) - 1 - x/a ]
double pow_remainder(double h_pow, double x, double inv_a) {
    if (std::fabs(x) < 1e-5) {
        return h_pow * inv_a * (inv_a - 1.0) * x * x *
               (0.5 + (inv_a - 2.0) * x / 6.0);
    }
    return h_pow * (std::expm1(inv_a * std::log1p(x)) - x * inv_a);
}

}  // namespace

ExteriorField zero_field(const StripGrid& grid) {
    ExteriorField f;
    f.grid = grid;
    f.w.assign(grid.size(), 0.0);
    f.w_s.assign(grid.size(), 0.0);
    return f;
}

ExteriorWorkspace::ExteriorWorkspace(const ShrinkerProfile& prof, const StripGrid& grid,
                                     int stencil_order)
    : params_(prof.params), grid_(grid), n_(grid.n_theta) {
    if (grid.s_max - grid.s_min < 3.0)
        throw validation_error("exterior strip needs a span of at least 3 in s");
    spec_ = eigen_spectrum(prof, n_, n_ / 2, stencil_order);

    const double a = params_.alpha;
    h_.resize(n_);
    h_tt_.resize(n_);
    h_pow_.resize(n_);
    h_pow1_.resize(n_);
    hom_coeff_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        double h = spec_.h[i];
        h_[i] = h;
        h_tt_[i] = 2.0 * a * (1.0 - 2.0 * a) * std::pow(h, (a - 1.0) / a) - h;
        h_pow_[i] = std::pow(h, 1.0 / a);
        h_pow1_[i] = std::pow(h, 1.0 / a - 1.0);
        hom_coeff_[i] = (h_[i] + h_tt_[i]) / (1.0 - 2.0 * a);
    }
}

std::vector<double> ExteriorWorkspace::to_modes(const std::vector<double>& values) const {
    std::vector<double> c(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i)
            acc += values[i] * spec_.eigenfunctions[j][i] * spec_.weight[i];
        c[j] = acc;
    }
    return c;
}

std::vector<double> ExteriorWorkspace::slice_coefficients(const ExteriorField& f,
                                                          int i_s) const {
    std::vector<double> slice(n_);
    for (int i = 0; i < n_; ++i) slice[i] = f.at(i_s, i);
    return to_modes(slice);
}

std::vector<double> ExteriorWorkspace::nonlinear_error(const ExteriorField& w) const {
    const double a = params_.alpha;
    const double inv_a = 1.0 / a;
    const double one2a = 1.0 - 2.0 * a;
    std::vector<double> E(grid_.size(), 0.0);
    std::vector<double> slice(n_), wtt(n_);
    for (int is = 0; is < grid_.n_s; ++is) {
        const double s = grid_.s(is);
        const double e1 = std::exp(one2a * s);
        for (int i = 0; i < n_; ++i) slice[i] = w.at(is, i);
        wtt = spectral_second_derivative(slice);
        for (int i = 0; i < n_; ++i) {
            double A = w.ds_at(is, i) / e1;           // w_s / e^((1-2a)s)
            double Ss_rel = h_[i] + A;                // S_s / e^((1-2a)s)
            if (!(Ss_rel > 0.0))
                throw solver_error("non-graphical state: S_s <= 0 at s = " +
                                   std::to_string(s));
            double w_wtt = slice[i] + wtt[i];
            double SStt = e1 * hom_coeff_[i] + w_wtt;  // S + S_tt
            if (!(SStt > 0.0))
                throw solver_error("convexity lost: S + S_tt <= 0 at s = " +
                                   std::to_string(s));
            double t1 = -inv_a * h_pow1_[i] * A * w_wtt;
            double t2 = -pow_remainder(h_pow_[i], A / h_[i], inv_a) * SStt;
            double y = std::exp(-4.0 * a * s) * Ss_rel * Ss_rel;
            double bracket = std::expm1((2.0 - 1.0 / (2.0 * a)) * std::log1p(y));
            double t3 = -std::pow(Ss_rel, inv_a) * SStt * bracket;
            E[std::size_t(is) * n_ + i] = t1 + t2 + t3;
        }
    }
    return E;
}

ExteriorField ExteriorWorkspace::linear_solve_H0(const std::vector<double>& g, int m,
                                                 double* tail_budget) const {
    const int ns = grid_.n_s;
    const double D = grid_.ds();
    if (m < 0 || m > n_) throw validation_error("mode split m out of range");

    // per-mode coefficients g_j(s)
    std::vector<std::vector<double>> gj(n_, std::vector<double>(ns));
    {
        std::vector<double> slice(n_);
        for (int is = 0; is < ns; ++is) {
            for (int i = 0; i < n_; ++i) slice[i] = g[std::size_t(is) * n_ + i];
            auto c = to_modes(slice);
            for (int j = 0; j < n_; ++j) gj[j][is] = c[j];
        }
    }

    double global_tail = 0.0, global_kmax = 0.0, global_gmax = 0.0;
    for (int j = 0; j < n_; ++j)
        for (int is = 0; is < ns; ++is) global_gmax = std::max(global_gmax, std::fabs(gj[j][is]));
    std::vector<std::vector<double>> wj(n_, std::vector<double>(ns, 0.0));
    std::vector<std::vector<double>> wpj(n_, std::vector<double>(ns, 0.0));
    std::vector<double> K(ns, 0.0);

    for (int j = 0; j < n_; ++j) {
        const double bp = spec_.betas_plus[j];
        const double bm = spec_.betas_minus[j];
        const auto& gc = gj[j];

        if (j >= m) {
            // K(r) = int_r^inf e^(bp (r-t)) g_j(t) dt: marched downward with an
            // analytic tail for the truncated upper end. Over the cell
            // [s_i, s_{i+1}] the integrand is e^(-bp tau) g(s_i + tau); the
            // quadratic through (gc[i], gc[i+1]) plus a third neighbor is
            // integrated against the kernel exactly.
            // Analytic tail for the truncated upper end, with the local decay
            // rate fitted from the last samples. The budget records the spread
            // of the tail under two fit windows: that is the model error, not
            // the tail itself (which is an O(1) part of K at the top slice).
            double tail = 0.0, tail_alt = 0.0;
            double gn = gc[ns - 1];
            auto tail_with = [&](int back) {
                if (gn == 0.0 || gc[ns - 1 - back] == 0.0 ||
                    (gn > 0.0) != (gc[ns - 1 - back] > 0.0))
                    return 0.0;
                double rate = std::log(std::fabs(gn / gc[ns - 1 - back])) / (back * D);
                return (bp - rate > 0.2) ? gn / (bp - rate) : 0.0;
            };
            tail = tail_with(5);
            tail_alt = tail_with(10);
            K[ns - 1] = tail;
            for (int i = ns - 2; i >= 0; --i) {
                double local = (i >= 1)
                                   ? cell_integral_centered(bp, D, gc[i], gc[i + 1], gc[i - 1])
                                   : cell_integral_forward(bp, D, gc[0], gc[1], gc[2]);
                K[i] = std::exp(-bp * D) * K[i + 1] + local;
                global_kmax = std::max(global_kmax, std::fabs(K[i]));
            }
            global_tail = std::max(global_tail, std::fabs(tail - tail_alt));
        } else {
            // K(r) = int_R^r e^(bp (r-t)) g_j(t) dt: marched upward; over
            // [s_i, s_{i+1}] the integrand is e^(bp tau) g(s_{i+1} - tau).
            K[0] = 0.0;
            for (int i = 0; i + 1 < ns; ++i) {
                double local =
                    (i + 2 < ns)
                        ? cell_integral_centered(-bp, D, gc[i + 1], gc[i], gc[i + 2])
                        : cell_integral_forward(-bp, D, gc[i + 1], gc[i], gc[i - 1]);
                K[i + 1] = std::exp(bp * D) * K[i] + local;
            }
        }

        // outer integral: w_j(s) = sign * int_R^s e^(bm (s-r)) K(r) dr with
        // sign = -1 above the split and +1 below; kernel e^(-(-bm) tau) with
        // tau = s_{i+1} - r.
        const double sign = (j >= m) ? -1.0 : 1.0;
        std::vector<double>& w = wj[j];
        std::vector<double>& wp = wpj[j];
        w[0] = 0.0;
        for (int i = 0; i + 1 < ns; ++i) {
            double local = (i + 2 < ns)
                               ? cell_integral_centered(-bm, D, K[i + 1], K[i], K[i + 2])
                               : cell_integral_forward(-bm, D, K[i + 1], K[i], K[i - 1]);
            w[i + 1] = std::exp(bm * D) * w[i] + sign * local;
        }
        // exact derivative of the double-integral representation
        for (int i = 0; i < ns; ++i) wp[i] = bm * w[i] + sign * K[i];
    }

    if (tail_budget) {
        double scale = std::max(global_kmax, global_gmax);
        *tail_budget = (scale > 0.0) ? global_tail / scale : 0.0;
    }

    ExteriorField out = zero_field(grid_);
    for (int is = 0; is < ns; ++is) {
        for (int i = 0; i < n_; ++i) {
            double acc = 0.0, accp = 0.0;
            for (int j = 0; j < n_; ++j) {
                acc += wj[j][is] * spec_.eigenfunctions[j][i];
                accp += wpj[j][is] * spec_.eigenfunctions[j][i];
            }
            out.at(is, i) = acc;
            out.ds_at(is, i) = accp;
        }
    }
    return out;
}

double weighted_norm(const ExteriorField& f, double gamma, int order) {
    const StripGrid& g = f.grid;
    const int ns = g.n_s, n = g.n_theta;
    const double D = g.ds();

    // derivative fields as needed
    std::vector<std::vector<double>> wt(order >= 1 ? ns : 0), wtt(order >= 2 ? ns : 0),
        wst(order >= 2 ? ns : 0);
    std::vector<double> slice(n);
    for (int is = 0; is < ns; ++is) {
        for (int i = 0; i < n; ++i) slice[i] = f.at(is, i);
        if (order >= 1) wt[is] = spectral_derivative(slice);
        if (order >= 2) wtt[is] = spectral_second_derivative(slice);
        if (order >= 2) {
            for (int i = 0; i < n; ++i) slice[i] = f.ds_at(is, i);
            wst[is] = spectral_derivative(slice);
        }
    }
    auto wss_at = [&](int is, int i) {
        auto v = [&](int k) { return f.ds_at(k, i); };
        if (is >= 2 && is + 2 < ns)
            return (v(is - 2) - 8 * v(is - 1) + 8 * v(is + 1) - v(is + 2)) / (12 * D);
        if (is + 1 < ns && is >= 1) return (v(is + 1) - v(is - 1)) / (2 * D);
        if (is + 1 < ns) return (v(is + 1) - v(is)) / D;
        return (v(is) - v(is - 1)) / D;
    };

    const int K1 = std::max(1, int(std::lround(1.0 / D)));
    double sup = 0.0;
    bool any = false;
    for (int ic = 0; ic < ns; ++ic) {
        if (ic - K1 < 0 || ic + K1 >= ns) continue;
        any = true;
        double local = 0.0;
        for (int is = ic - K1; is <= ic + K1; ++is) {
            for (int i = 0; i < n; ++i) {
                double m = std::fabs(f.at(is, i));
                if (order >= 1) {
                    m = std::max(m, std::fabs(f.ds_at(is, i)));
                    m = std::max(m, std::fabs(wt[is][i]));
                }
                if (order >= 2) {
                    m = std::max(m, std::fabs(wss_at(is, i)));
                    m = std::max(m, std::fabs(wst[is][i]));
                    m = std::max(m, std::fabs(wtt[is][i]));
                }
                local = std::max(local, m);
            }
        }
        sup = std::max(sup, std::exp(-gamma * g.s(ic)) * local);
    }
    if (!any) throw validation_error("strip too short for the windowed weighted norm");
    return sup;
}

double ExteriorWorkspace::bootstrap_gamma() const {
    double gamma = 1.0 - 6.0 * params_.alpha;
    int m = mode_split_for(gamma);
    double lo = (m == 0) ? spec_.betas_minus[0] : spec_.betas_plus[m - 1];
    double hi = spec_.betas_plus[m];
    double w = hi - lo;
    gamma = std::clamp(gamma, lo + 0.02 * w, hi - 0.02 * w);
    return gamma;
}

int ExteriorWorkspace::mode_split_for(double gamma) const {
    if (!(gamma > spec_.betas_minus[0]))
        throw validation_error("gamma below beta_0^-: not in any spectral gap");
    for (int j = 0; j < n_; ++j)
        if (spec_.betas_plus[j] > gamma) return j;
    throw validation_error("gamma above every beta^+: not in any spectral gap");
}

ExteriorField ExteriorWorkspace::jacobi_field(const JacobiSeed& seed) const {
    if (seed.mode < 0 || seed.mode >= n_) throw validation_error("seed mode out of range");
    ExteriorField f = zero_field(grid_);
    const double bp = spec_.betas_plus[seed.mode];
    for (int is = 0; is < grid_.n_s; ++is) {
        double e = seed.amplitude * std::exp(bp * grid_.s(is));
        for (int i = 0; i < n_; ++i) {
            f.at(is, i) = e * spec_.eigenfunctions[seed.mode][i];
            f.ds_at(is, i) = bp * e * spec_.eigenfunctions[seed.mode][i];
        }
    }
    return f;
}

ExteriorSolution ExteriorWorkspace::fixed_point(const ExteriorSolution* g_base,
                                                const std::optional<JacobiSeed>& u0,
                                                int max_steps) const {
    ExteriorSolution sol;
    sol.R = grid_.s_min;
    sol.total = zero_field(grid_);
    sol.Lhat.assign(grid_.size(), 0.0);

    double gamma2 = bootstrap_gamma();
    if (g_base) {
        if (g_base->total.grid.n_s != grid_.n_s || g_base->total.grid.n_theta != n_ ||
            g_base->total.grid.s_min != grid_.s_min)
            throw validation_error("base solution lives on a different strip");
        sol.total = g_base->total;
        sol.Lhat = g_base->Lhat;
        gamma2 = g_base->gamma2;
    }
    if (!(gamma2 < 1.0 - 2.0 * params_.alpha))
        throw validation_error("base decay exponent must satisfy gamma2 < 1-2a");

    int m;
    double gamma1;
    if (u0 && u0->amplitude != 0.0) {
        double gamma3 = spec_.betas_plus[u0->mode];
        if (!(gamma3 < 1.0 - 2.0 * params_.alpha - 1e-9))
            throw validation_error("seed mode is not slowly decaying (beta^+ >= 1-2a)");
        ExteriorField jac = jacobi_field(*u0);
        for (std::size_t q = 0; q < jac.w.size(); ++q) {
            sol.total.w[q] += jac.w[q];
            sol.total.w_s[q] += jac.w_s[q];
        }
        // first index of the repeated-beta block of the seeded mode
        int m0 = u0->mode;
        while (m0 > 0 && std::fabs(spec_.betas_plus[m0 - 1] - gamma3) < 1e-9) --m0;
        double beta_before = (m0 == 0) ? spec_.betas_minus[0] : spec_.betas_plus[m0 - 1];
        double eps = std::min({2.0 * params_.alpha,
                               0.5 * (1.0 - 2.0 * params_.alpha - gamma2),
                               0.5 * (gamma3 - beta_before)});
        gamma1 = gamma3 - eps;
        m = m0;
        gamma2 = std::max(gamma2, gamma3);
    } else {
        gamma1 = bootstrap_gamma();
        m = mode_split_for(gamma1);
        gamma2 = std::max(gamma2, gamma1);
    }
    sol.gamma1 = gamma1;
    sol.mode_split = m;
    sol.gamma2 = gamma2;

    double prev_norm = -1.0;
    for (int k = 0; k < max_steps; ++k) {
        std::vector<double> forcing = nonlinear_error(sol.total);
        for (std::size_t q = 0; q < forcing.size(); ++q) forcing[q] -= sol.Lhat[q];

        double tail = 0.0;
        ExteriorField u = linear_solve_H0(forcing, m, &tail);
        sol.tail_budget = std::max(sol.tail_budget, tail);

        double nu = weighted_norm(u, gamma1, 2);
        if (prev_norm > 0.0) sol.ratios.push_back(nu / prev_norm);
        prev_norm = nu;

        for (std::size_t q = 0; q < u.w.size(); ++q) {
            sol.total.w[q] += u.w[q];
            sol.total.w_s[q] += u.w_s[q];
            sol.Lhat[q] += forcing[q];
        }
        sol.final_increment = nu;
        if (nu < 1e-10) {
            sol.converged = true;
            break;
        }
        // non-contraction after the burn-in step: report failure upward
        if (sol.ratios.size() >= 1 && sol.ratios.back() > 0.5 && k >= 2) return sol;
    }
    return sol;
}

double ExteriorWorkspace::support_residual(const ExteriorField& w) const {
    const double a = params_.alpha;
    const double one2a = 1.0 - 2.0 * a;
    const double q = 1.0 / (2.0 * a) - 2.0;
    const int ns = grid_.n_s;
    const double D = grid_.ds();

    double sup = 0.0;
    std::vector<double> S(n_), Stt(n_);
    for (int is = 2; is + 2 < ns; ++is) {
        double s = grid_.s(is);
        if (s < grid_.s_min + 1.0 || s > grid_.s_max - 1.0) continue;
        double e1 = std::exp(one2a * s);
        double l = std::exp(s);
        for (int i = 0; i < n_; ++i) S[i] = e1 * h_[i] / one2a + w.at(is, i);
        Stt = spectral_second_derivative(S);
        for (int i = 0; i < n_; ++i) {
            double Ss = e1 * h_[i] + w.ds_at(is, i);
            double wss = (w.ds_at(is - 2, i) - 8 * w.ds_at(is - 1, i) +
                          8 * w.ds_at(is + 1, i) - w.ds_at(is + 2, i)) /
                         (12 * D);
            double Sss = one2a * e1 * h_[i] + wss;
            double Sl = Ss / l;
            double Sll = (Sss - Ss) / (l * l);
            if (!(S[i] > 0.0 && S[i] + Stt[i] > 0.0 && Sl > 0.0))
                throw solver_error("convexity/graph violation at s = " + std::to_string(s) +
                                   ", theta index " + std::to_string(i));
            double res = S[i] + Stt[i] +
                         std::pow(1.0 + 1.0 / (Sl * Sl), q) / (Sl * Sl * Sl * Sl) * Sll;
            sup = std::max(sup, std::fabs(res) / std::pow(l, one2a));
        }
    }
    return sup;
}

ExteriorWorkspace::ModeFit ExteriorWorkspace::extract_mode_coefficient(
    const ExteriorField& w1, const ExteriorField& w2, int j) const {
    if (j < 0 || j >= n_) throw validation_error("mode index out of range");
    const int ns = grid_.n_s;
    std::vector<double> diff(n_), ss, cs;
    double scale = 0.0;
    std::vector<double> cj(ns);
    for (int is = 0; is < ns; ++is) {
        for (int i = 0; i < n_; ++i) diff[i] = w1.at(is, i) - w2.at(is, i);
        auto c = to_modes(diff);
        cj[is] = c[j];
        for (int i = 0; i < n_; ++i) scale = std::max(scale, std::fabs(diff[i]));
    }
    ModeFit fit;
    const int lo = 2 * ns / 3;
    double cmax = 0.0;
    for (int is = lo; is < ns; ++is) cmax = std::max(cmax, std::fabs(cj[is]));
    if (cmax < 1e-12 * std::max(scale, 1e-300)) {
        fit.below_noise = true;
        return fit;
    }
    for (int is = lo; is < ns; ++is) {
        ss.push_back(grid_.s(is));
        cs.push_back(cj[is]);
    }
    auto la = fit_log_amplitude(ss, cs, spec_.betas_plus[j]);
    if (la.amplitude == 0.0) {
        fit.below_noise = true;
        return fit;
    }
    fit.amplitude = la.amplitude;
    fit.fit_rms = la.rms;
    return fit;
}

double support_residual_of_S(const StripGrid& grid, const std::vector<double>& S_values,
                             double alpha) {
    const double q = 1.0 / (2.0 * alpha) - 2.0;
    const double one2a = 1.0 - 2.0 * alpha;
    const int ns = grid.n_s, n = grid.n_theta;
    const double D = grid.ds();
    auto at = [&](int is, int i) { return S_values[std::size_t(is) * n + i]; };

    double sup = 0.0;
    std::vector<double> S(n), Stt(n);
    for (int is = 2; is + 2 < ns; ++is) {
        double s = grid.s(is);
        if (s < grid.s_min + 1.0 || s > grid.s_max - 1.0) continue;
        double l = std::exp(s);
        for (int i = 0; i < n; ++i) S[i] = at(is, i);
        Stt = spectral_second_derivative(S);
        for (int i = 0; i < n; ++i) {
            double Ss = (at(is - 2, i) - 8 * at(is - 1, i) + 8 * at(is + 1, i) -
                         at(is + 2, i)) /
                        (12 * D);
            double Sss = (-at(is - 2, i) + 16 * at(is - 1, i) - 30 * at(is, i) +
                          16 * at(is + 1, i) - at(is + 2, i)) /
                         (12 * D * D);
            double Sl = Ss / l;
            double Sll = (Sss - Ss) / (l * l);
            if (!(Sl > 0.0)) throw solver_error("S_l <= 0 in support_residual_of_S");
            double res = S[i] + Stt[i] +
                         std::pow(1.0 + 1.0 / (Sl * Sl), q) / (Sl * Sl * Sl * Sl) * Sll;
            sup = std::max(sup, std::fabs(res) / std::pow(l, one2a));
        }
    }
    return sup;
}

BootstrapResult bootstrap_exterior(const ShrinkerProfile& prof, double R_init, double span,
                                   int n_s, int n_theta, double R_budget) {
    double R = R_init;
    int attempts = 0;
    std::string last_issue;
    while (R <= R_budget) {
        ++attempts;
        try {
            StripGrid grid(R, R + span, n_s, n_theta);
            ExteriorWorkspace ws(prof, grid);
            ExteriorSolution sol = ws.fixed_point(nullptr, std::nullopt);
            bool ratios_ok = sol.converged;
            for (std::size_t i = 0; i < sol.ratios.size() && ratios_ok; ++i)
                if (sol.ratios[i] > 0.5 + 1e-9) ratios_ok = false;
            if (ratios_ok) {
                BootstrapResult out;
                out.solution = std::move(sol);
                out.profile = prof;
                out.R = R;
                out.attempts = attempts;
                return out;
            }
            last_issue = sol.converged ? "contraction ratio exceeded 1/2" : "no convergence";
        } catch (const solver_error& err) {
            last_issue = err.what();
        }
        R *= 2.0;
    }
    throw solver_error("exterior bootstrap failed up to R = " + std::to_string(R_budget) +
                       " (" + last_issue + ")");
}

}  // namespace soliton
