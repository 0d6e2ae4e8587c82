#include <cmath>

#include "doctest.h"
#include "soliton/numerics.hpp"
#include "soliton/params.hpp"
#include "soliton/shrinker.hpp"

using namespace soliton;

TEST_CASE("round shrinker is the constant c_alpha with vanishing residual") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = round_shrinker(p, 128);
    CHECK(prof.h[0] == doctest::Approx(std::pow(0.16, 0.1)).epsilon(1e-14));
    CHECK(prof.residual_sup < 1e-13);

    ShrinkerProfile prof5 = round_shrinker(derive_params(0.05), 128);
    CHECK(prof5.h[0] == doctest::Approx(std::pow(0.09, 0.05)).epsilon(1e-14));
    CHECK(prof5.h[0] == doctest::Approx(0.886570).epsilon(1e-6));
}

TEST_CASE("perturbed profile is flagged by the residual detector") {
    FlowParams p = derive_params(0.1);
    PeriodicGrid h(128, p.c_alpha);
    for (int i = 0; i < h.n; ++i) h[i] += 0.01 * std::cos(h.theta(i));
    CHECK(shrinker_residual(p, h) > 1e-3);
}

// Independent oracle for the tangency pair: for each c the potential has a
// single interior critical point t*(c); c_inf is the root of c -> h_c(t*(c)).
static double tangency_c_by_2d_rootfind(const FlowParams& p) {
    auto peak_value = [&](double c) {
        DualPotential pot{p.alpha, c, 0.0, 0.0};
        double a = p.alpha;
        double t_peak = std::pow(4.0 * a * a * c * (1.0 - 2.0 * a), 1.0 / (4.0 * a));
        // cross-check the critical point with a root-find on h_c'
        double t_star = find_root([&](double t) { return pot.derivative(t); }, 0.25 * t_peak,
                                  4.0 * t_peak, 1e-14 * t_peak, "t*(c)");
        return pot.value(t_star);
    };
    double lo = 1.0, hi = 1.0;
    while (peak_value(lo) > 0.0) lo *= 0.5;
    while (peak_value(hi) < 0.0) hi *= 2.0;
    return find_root(peak_value, lo, hi, 1e-12, "c_inf oracle");
}

TEST_CASE("tangency potential: closed forms vs 2d root-finding oracle") {
    FlowParams p = derive_params(0.1);
    TangencyPotential tp = tangency_potential(p);
    CHECK(tp.t_inf == doctest::Approx(0.1).epsilon(1e-14));  // 2*0.1*sqrt(0.2/0.8)
    CHECK(tp.c_inf == doctest::Approx(12.441).epsilon(1e-4));
    CHECK(tp.c_inf == doctest::Approx(tangency_c_by_2d_rootfind(p)).epsilon(1e-9));
}

TEST_CASE("h'' at the tangency point equals -1/alpha (finite-difference oracle)") {
    for (double a : {0.05, 0.1, 0.2}) {
        FlowParams p = derive_params(a);
        TangencyPotential tp = tangency_potential(p);
        DualPotential pot{a, tp.c_inf, 0.0, 0.0};
        double d = 1e-4 * tp.t_inf;
        double fd = (pot.value(tp.t_inf + d) - 2.0 * pot.value(tp.t_inf) +
                     pot.value(tp.t_inf - d)) / (d * d);
        CHECK(fd == doctest::Approx(-1.0 / a).epsilon(1e-6));
        CHECK(pot.second_derivative(tp.t_inf) == doctest::Approx(-1.0 / a).epsilon(1e-12));
    }
}

TEST_CASE("period integral approaches pi*sqrt(alpha) at the tangency") {
    FlowParams p = derive_params(0.1);
    TangencyPotential tp = tangency_potential(p);
    const double limit = M_PI * std::sqrt(0.1);
    // small-oscillation limit pi / sqrt(-h''(t_inf)) with h'' = -1/alpha
    std::vector<double> offs, vals;
    for (int j = 3; j <= 6; ++j) {
        double c = tp.c_inf * (1.0 + std::pow(10.0, -j));
        double I = period_integral(make_dual_potential(p, c));
        offs.push_back(std::pow(10.0, -j));
        vals.push_back(I);
        CHECK(std::fabs(I - limit) < 2e-3);
    }
    // linear extrapolation in (c - c_inf) sharpens the limit
    auto fit = fit_line(offs, vals);
    CHECK(fit.intercept == doctest::Approx(limit).epsilon(1e-6));
    CHECK(std::fabs(vals.back() - limit) < 1e-4);
}

TEST_CASE("dual potential for folds: defining property I_c = pi/k") {
    FlowParams p1 = derive_params(0.1);
    DualPotential c3 = dual_potential_for_fold(p1, 3);
    CHECK(std::fabs(period_integral(c3) - M_PI / 3.0) < 1e-8);
    CHECK(c3.c > tangency_potential(p1).c_inf);
    MESSAGE("regression c_3(alpha=0.1) = ", doctest::toString(c3.c));

    FlowParams p2 = derive_params(0.05);
    DualPotential c4 = dual_potential_for_fold(p2, 4);
    CHECK(std::fabs(period_integral(c4) - M_PI / 4.0) < 1e-8);
}

TEST_CASE("frozen regressions for the fold potentials") {
    CHECK(dual_potential_for_fold(derive_params(0.1), 3).c ==
          doctest::Approx(15.0614162324895).epsilon(1e-8));
    CHECK(dual_potential_for_fold(derive_params(0.05), 3).c ==
          doctest::Approx(124.595023081681).epsilon(1e-8));
    CHECK(dual_potential_for_fold(derive_params(0.05), 4).c ==
          doctest::Approx(66.4260990620811).epsilon(1e-8));
}

TEST_CASE("quadrature convergence: tighter tolerance shifts I_c by < 1e-9") {
    FlowParams p = derive_params(0.1);
    DualPotential pot = dual_potential_for_fold(p, 3);
    CHECK(std::fabs(period_integral(pot, 1e-10) - period_integral(pot, 1e-13)) < 1e-9);
}

TEST_CASE("fold-existence boundary") {
    FlowParams p = derive_params(0.1);
    CHECK_THROWS_AS(dual_potential_for_fold(p, 4), validation_error);  // 16 > 1/0.1

    // window collapse as alpha -> 1/9 from below with k = 3
    FlowParams pb = derive_params(1.0 / 9.0 - 1e-6);
    DualPotential pot = dual_potential_for_fold(pb, 3);
    TangencyPotential tp = tangency_potential(pb);
    CHECK((pot.c / tp.c_inf - 1.0) < 1e-2);
    CHECK((pot.t_hi - pot.t_lo) / tp.t_inf < 0.2);
}

TEST_CASE("dual angle profile solves eq-odeg and matches the window") {
    FlowParams p = derive_params(0.1);
    DualPotential pot = dual_potential_for_fold(p, 3);
    const int n = 768;  // divisible by 2k: turning points land on nodes
    PeriodicGrid g = reconstruct_dual_angle_profile(pot, 3, n);

    CHECK(g.min() == doctest::Approx(pot.t_lo).epsilon(1e-9));
    CHECK(g.max() == doctest::Approx(pot.t_hi).epsilon(1e-7));

    // 2pi/3 periodicity
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        defect = std::max(defect, std::fabs(g[(i + n / 3) % n] - g[i]));
    CHECK(defect < 1e-8);

    // Residual of the dual homogeneous ODE with spectral derivatives. The
    // coefficient of g'^2 is (1/2a - 1): that is what det D^2(r^(1/2a) g) =
    // r^(1/a-4) gives, and the only version consistent with g' = sqrt(2h(g))
    // and the h-equation.
    const double a = p.alpha;
    auto gt = spectral_derivative(g.values);
    auto gtt = spectral_second_derivative(g.values);
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = g[i] / (2.0 * a) * (gtt[i] + g[i] / (2.0 * a)) -
                   (1.0 / (2.0 * a) - 1.0) * gt[i] * gt[i] - 2.0 * a / (1.0 - 2.0 * a);
        sup = std::max(sup, std::fabs(r));
    }
    CHECK(sup < 1e-6);
    // energy relation g'^2 = 2 h_c(g) holds along the orbit
    double esup = 0.0;
    for (int i = 0; i < n; ++i)
        esup = std::max(esup, std::fabs(gt[i] * gt[i] - 2.0 * pot.value(g[i])));
    CHECK(esup < 1e-8);
}

TEST_CASE("window ratio decreases with fold number (alpha = 0.05)") {
    FlowParams p = derive_params(0.05);
    DualPotential c3 = dual_potential_for_fold(p, 3);
    DualPotential c4 = dual_potential_for_fold(p, 4);
    CHECK(c3.t_hi / c3.t_lo > c4.t_hi / c4.t_lo);
    CHECK(c3.c > c4.c);
}

TEST_CASE("shooting: 3-fold profile at alpha = 0.1") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 768);

    CHECK(prof.residual_sup < 1e-8);
    CHECK(period_defect(prof, 3) < 1e-8);
    CHECK(prof.h.min() > 0.0);
    CHECK(prof.h.min() < p.c_alpha);
    CHECK(prof.h.max() > p.c_alpha);

    CHECK_THROWS_AS(shoot_shrinker(p, 4, 512), validation_error);
    CHECK_THROWS_AS(shoot_shrinker(p, fold_round, 512), validation_error);
}

TEST_CASE("cross-validation of shooting against the dual construction") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 768);
    DualPotential pot = dual_potential_for_fold(p, 3);

    // Polar duality sends the support extrema to the dual window endpoints:
    // t = (2a/(1-2a)) h^(1/(2a)); in particular the extrema ratios satisfy
    // max h / min h = (t_hi/t_lo)^(2a).
    double ratio_h = prof.h.max() / prof.h.min();
    double ratio_t = pot.t_hi / pot.t_lo;
    CHECK(ratio_h == doctest::Approx(std::pow(ratio_t, 2.0 * p.alpha)).epsilon(1e-4));
    CHECK(dual_profile_from_support(p, prof.h.min()) == doctest::Approx(pot.t_lo).epsilon(1e-4));
    CHECK(dual_profile_from_support(p, prof.h.max()) == doctest::Approx(pot.t_hi).epsilon(1e-4));

    // round case: transport reproduces t_inf from c_alpha
    TangencyPotential tp = tangency_potential(p);
    CHECK(dual_profile_from_support(p, p.c_alpha) == doctest::Approx(tp.t_inf).epsilon(1e-12));
}

TEST_CASE("shrinker curvature identity on the shot profile") {
    // kappa^(a/(1-a)) = (2a(1-2a))^(a/(a-1)) <X, nu> with kappa = 1/(h+h'')
    // and <X, nu> = h is algebraically the shrinker ODE; check it directly.
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 512);
    auto htt = spectral_second_derivative(prof.h.values);
    const double a = p.alpha;
    double lam = std::pow(2.0 * a * (1.0 - 2.0 * a), a / (a - 1.0));
    for (int i = 0; i < prof.h.n; i += 7) {
        double kappa = 1.0 / (prof.h[i] + htt[i]);
        CHECK(std::pow(kappa, a / (1.0 - a)) ==
              doctest::Approx(lam * prof.h[i]).epsilon(1e-7));
    }
}
