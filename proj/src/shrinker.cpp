#include "soliton/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/numerics.hpp"

namespace soliton {

double DualPotential::value(double t) const {
    const double a = alpha;
    const double q = 2.0 * a / (1.0 - 2.0 * a);
    return 0.5 * (c * std::pow(t, 2.0 * (1.0 - 2.0 * a)) - t * t / (4.0 * a * a) - q * q);
}

double DualPotential::derivative(double t) const {
    const double a = alpha;
    return c * (1.0 - 2.0 * a) * std::pow(t, 1.0 - 4.0 * a) - t / (4.0 * a * a);
}

double DualPotential::second_derivative(double t) const {
    const double a = alpha;
    return c * (1.0 - 2.0 * a) * (1.0 - 4.0 * a) * std::pow(t, -4.0 * a) - 1.0 / (4.0 * a * a);
}

ShrinkerProfile round_shrinker(const FlowParams& params, int n) {
    ShrinkerProfile prof;
    prof.params = params;
    prof.fold = fold_round;
    prof.h = PeriodicGrid(n, params.c_alpha);
    prof.construction = Construction::RoundClosedForm;
    prof.residual_sup = shrinker_residual(params, prof.h);
    return prof;
}

TangencyPotential tangency_potential(const FlowParams& params) {
    const double a = params.alpha;
    TangencyPotential tp;
    tp.t_inf = 2.0 * a * std::sqrt(2.0 * a / (1.0 - 2.0 * a));
    tp.c_inf = 2.0 * a / ((1.0 - 2.0 * a) * (1.0 - 2.0 * a)) *
               std::pow(tp.t_inf, -2.0 * (1.0 - 2.0 * a));

    DualPotential pot{a, tp.c_inf, 0.0, 0.0};
    if (std::fabs(pot.value(tp.t_inf)) > 1e-10 || std::fabs(pot.derivative(tp.t_inf)) > 1e-10)
        throw solver_error("tangency closed form failed its h=h'=0 certificate");
    return tp;
}

DualPotential make_dual_potential(const FlowParams& params, double c) {
    const double a = params.alpha;
    TangencyPotential tp = tangency_potential(params);
    if (!(c > tp.c_inf))
        throw validation_error("dual potential needs c > c_inf (empty or degenerate window)");

    DualPotential pot{a, c, 0.0, 0.0};
    // single interior maximum of h_c
    const double t_peak = std::pow(4.0 * a * a * c * (1.0 - 2.0 * a), 1.0 / (4.0 * a));
    if (!(pot.value(t_peak) > 0.0))
        throw solver_error("dual potential window is empty although c > c_inf");

    auto f = [&pot](double t) { return pot.value(t); };
    double t_left = t_peak;
    while (pot.value(t_left) > 0.0) t_left *= 0.5;
    pot.t_lo = find_root(f, t_left, t_peak, 1e-14 * t_peak, "t_lo of dual potential");
    double t_right = t_peak;
    while (pot.value(t_right) > 0.0) t_right *= 2.0;
    pot.t_hi = find_root(f, t_peak, t_right, 1e-14 * t_right, "t_hi of dual potential");
    return pot;
}

double period_integral(const DualPotential& pot, double rel_tol) {
    if (!(pot.t_lo > 0.0 && pot.t_hi > pot.t_lo))
        throw validation_error("period integral needs a valid potential window");
    const double a = pot.alpha;
    const double t_peak = std::pow(4.0 * a * a * pot.c * (1.0 - 2.0 * a), 1.0 / (4.0 * a));

    // Substitution t = t_lo + u^2 turns dt/sqrt(2 h_c) into an analytic
    // integrand 2u du / sqrt(2 h_c(t_lo + u^2)); same from the right end.
    // Close to a simple zero the raw formula for h_c loses all digits to
    // cancellation (values ~ eps * |terms|), so within a small fraction of
    // the window the shifted potential is evaluated from its Taylor model
    // h'(t0) d + h''(t0) d^2 / 2, whose coefficients are cancellation-safe.
    const double width = pot.t_hi - pot.t_lo;
    auto shifted = [&](double t0, double d) {
        if (std::fabs(d) < 1e-4 * width)
            return pot.derivative(t0) * d + 0.5 * pot.second_derivative(t0) * d * d;
        return pot.value(t0 + d) - pot.value(t0);
    };
    auto left = [&](double u) {
        return 2.0 * u / std::sqrt(2.0 * shifted(pot.t_lo, u * u));
    };
    auto right = [&](double u) {
        return 2.0 * u / std::sqrt(2.0 * shifted(pot.t_hi, -(u * u)));
    };
    double I = integrate_gk(left, 0.0, std::sqrt(t_peak - pot.t_lo), rel_tol) +
               integrate_gk(right, 0.0, std::sqrt(pot.t_hi - t_peak), rel_tol);
    if (!std::isfinite(I)) throw solver_error("period integral diverged");
    return I;
}

DualPotential dual_potential_for_fold(const FlowParams& params, int k) {
    if (k == fold_round)
        throw validation_error("dual_potential_for_fold takes a finite fold");
    FoldSet folds = classify_shrinkers(params);
    if (!folds.contains(k)) {
        std::ostringstream msg;
        msg << k << "-fold does not exist at alpha = " << params.alpha
            << " (pi/k <= pi*sqrt(alpha): the period integral never reaches pi/" << k << ")";
        throw validation_error(msg.str());
    }

    const double target = M_PI / k;
    TangencyPotential tp = tangency_potential(params);
    auto I_of_c = [&](double c) {
        return period_integral(make_dual_potential(params, c), 1e-11) - target;
    };
    // I_c increases from pi*sqrt(alpha) toward pi/2; bracket upward.
    double c_lo = tp.c_inf * (1.0 + 1e-7);
    double c_hi = tp.c_inf * 2.0;
    int guard = 0;
    while (I_of_c(c_hi) < 0.0) {
        c_hi *= 2.0;
        if (++guard > 60) throw solver_error("period-integral bracket not found");
    }
    double c_k = find_root(I_of_c, c_lo, c_hi, 1e-13 * c_hi, "c_k with I_c = pi/k");
    return make_dual_potential(params, c_k);
}

PeriodicGrid reconstruct_dual_angle_profile(const DualPotential& pot, int k, int n) {
    validate_grid_size(n);
    // Oscillator at zero energy: g'' = h_c'(g), g(0) = t_lo, g'(0) = 0, so
    // that g'^2 = 2 h_c(g) along the orbit.
    OdeSystem sys = [&pot](const std::vector<double>& x, std::vector<double>& dx, double) {
        dx[0] = x[1];
        dx[1] = pot.derivative(x[0]);
    };
    PeriodicGrid g(n);
    std::vector<double> state = {pot.t_lo, 0.0};
    g[0] = state[0];
    const double dtheta = 2.0 * M_PI / n;
    for (int i = 1; i < n; ++i) {
        integrate_to(sys, state, (i - 1) * dtheta, i * dtheta, 1e-12);
        if (!std::isfinite(state[0]))
            throw solver_error("dual profile integration failed near a turning point");
        g[i] = state[0];
    }
    (void)k;
    return g;
}

namespace {

// Right-hand side of h'' = 2a(1-2a) h^((a-1)/a) - h.
struct ShrinkerOde {
    double a;
    bool undershoot = false;
    void operator()(const std::vector<double>& x, std::vector<double>& dx, double) {
        double h = x[0];
        if (h <= 1e-12) {
            // trial left the admissible region; freeze it (classified undershoot)
            undershoot = true;
            dx[0] = 0.0;
            dx[1] = 0.0;
            return;
        }
        dx[0] = x[1];
        dx[1] = 2.0 * a * (1.0 - 2.0 * a) * std::pow(h, (a - 1.0) / a) - x[0];
    }
};

// Angular half-period: theta at which h' first returns to zero starting from
// the well minimum (h(0) = eta < c_alpha, h'(0) = 0). Returns a large value
// if the trial under-shoots.
double half_period(const FlowParams& params, double eta) {
    ShrinkerOde ode{params.alpha};
    OdeSystem sys = [&ode](const std::vector<double>& x, std::vector<double>& dx, double t) {
        ode(x, dx, t);
    };
    std::vector<double> state = {eta, 0.0};
    double t = 0.0;
    const double dt_cap = 0.02;
    // March with a capped step so the h'-sign crossing is bracketed tightly.
    while (t < 8.0) {
        std::vector<double> prev = state;
        double t_next = t + dt_cap;
        integrate_to(sys, state, t, t_next, 1e-12);
        if (ode.undershoot) return 10.0;
        if (state[1] <= 0.0 && t > 0.0) {
            // bisect the crossing inside [t, t_next]
            double lo = t, hi = t_next;
            for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
                double mid = 0.5 * (lo + hi);
                std::vector<double> trial = prev;
                integrate_to(sys, trial, t, mid, 1e-12);
                if (trial[1] <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        t = t_next;
    }
    return 10.0;  // never turned: treat as longer than any admissible target
}

}  // namespace

ShrinkerProfile shoot_shrinker(const FlowParams& params, int k, int n) {
    validate_grid_size(n);
    if (k == fold_round)
        throw validation_error("fold infinity is represented in closed form, not by shooting");
    FoldSet folds = classify_shrinkers(params);
    if (!folds.contains(k)) {
        std::ostringstream msg;
        msg << k << "-fold shrinker does not exist at alpha = " << params.alpha;
        throw validation_error(msg.str());
    }

    const double target = M_PI / k;
    auto defect = [&](double eta) { return half_period(params, eta) - target; };

    // Near c_alpha the half-period is pi*sqrt(alpha) < pi/k; it grows as the
    // orbit amplitude grows, so scan downward for the other bracket end.
    double eta_hi = params.c_alpha * (1.0 - 1e-9);
    double eta_lo = 0.5 * params.c_alpha;
    double scanned_to = eta_lo;
    int guard = 0;
    while (defect(eta_lo) < 0.0) {
        eta_lo *= 0.5;
        scanned_to = eta_lo;
        if (++guard > 40) {
            std::ostringstream msg;
            msg << "shooting bracket not found: scanned h(0) in [" << scanned_to << ", "
                << eta_hi << "]";
            throw solver_error(msg.str());
        }
    }
    double eta = find_root(defect, eta_lo, eta_hi, 1e-13 * params.c_alpha, "shooting on h(0)");

    // Full-circle integration through every grid node; periodicity of the
    // result is the genuine certificate that the shot landed.
    ShrinkerOde ode{params.alpha};
    OdeSystem sys = [&ode](const std::vector<double>& x, std::vector<double>& dx, double t) {
        ode(x, dx, t);
    };
    PeriodicGrid h(n);
    std::vector<double> state = {eta, 0.0};
    h[0] = state[0];
    const double dtheta = 2.0 * M_PI / n;
    for (int i = 1; i < n; ++i) {
        integrate_to(sys, state, (i - 1) * dtheta, i * dtheta, 1e-12);
        h[i] = state[0];
    }
    if (ode.undershoot) throw solver_error("undershoot while sampling the shot profile");

    ShrinkerProfile prof;
    prof.params = params;
    prof.fold = k;
    prof.h = h;
    prof.construction = Construction::Shooting;
    prof.residual_sup = shrinker_residual(params, h);

    for (int i = 0; i < n; ++i)
        if (!(h[i] > 0.0)) throw solver_error("shot profile is not positive");
    auto htt = spectral_second_derivative(h.values);
    for (int i = 0; i < n; ++i)
        if (!(h[i] + htt[i] > 0.0))
            throw solver_error("shot profile violates strict convexity (h + h_tt <= 0)");
    return prof;
}

double shrinker_residual(const FlowParams& params, const PeriodicGrid& h) {
    const double a = params.alpha;
    auto htt = spectral_second_derivative(h.values);
    double sup = 0.0;
    for (int i = 0; i < h.n; ++i) {
        if (!(h[i] > 0.0)) throw validation_error("shrinker residual needs h > 0");
        double r = h[i] + htt[i] - 2.0 * a * (1.0 - 2.0 * a) * std::pow(h[i], (a - 1.0) / a);
        sup = std::max(sup, std::fabs(r));
    }
    return sup;
}

double period_defect(const ShrinkerProfile& profile, int k) {
    const int n = profile.h.n;
    const double shift = 2.0 * M_PI / k;
    double defect = 0.0;
    if (n % k == 0) {
        const int d = n / k;
        for (int i = 0; i < n; ++i)
            defect = std::max(defect, std::fabs(profile.h[(i + d) % n] - profile.h[i]));
        return defect;
    }
    TrigInterpolant interp(profile.h.values);
    for (int i = 0; i < n; ++i)
        defect = std::max(defect,
                          std::fabs(interp.eval(profile.h.theta(i) + shift) - profile.h[i]));
    return defect;
}

double dual_profile_from_support(const FlowParams& params, double h_value) {
    const double a = params.alpha;
    return 2.0 * a / (1.0 - 2.0 * a) * std::pow(h_value, 1.0 / (2.0 * a));
}

}  // namespace soliton
