#include <cmath>

#include "doctest.h"
#include "soliton/numerics.hpp"
#include "soliton/params.hpp"

using namespace soliton;

TEST_CASE("derived constants at alpha = 0.1") {
    FlowParams p = derive_params(0.1);
    CHECK(p.m == 3);  // 9 < 10 <= 16
    CHECK(p.c_alpha == doctest::Approx(std::pow(0.16, 0.1)).epsilon(1e-14));
    CHECK(p.beta_plus_0 == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(p.beta_minus_0 == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(p.growth_exponent_graph == doctest::Approx(1.25));
    CHECK(p.growth_exponent_dual == doctest::Approx(5.0));
}

TEST_CASE("beta roots solve beta^2 + beta + 2a(1-2a) = 0") {
    for (double a : {0.01, 0.05, 0.1, 0.15, 0.2, 0.24}) {
        FlowParams p = derive_params(a);
        double q = 2.0 * a * (1.0 - 2.0 * a);
        CHECK(std::fabs(p.beta_plus_0 * p.beta_plus_0 + p.beta_plus_0 + q) < 1e-14);
        CHECK(std::fabs(p.beta_minus_0 * p.beta_minus_0 + p.beta_minus_0 + q) < 1e-14);
        CHECK(std::fabs(p.beta_plus_0 + p.beta_minus_0 + 1.0) < 1e-14);
        CHECK(std::fabs(p.beta_plus_0 * p.beta_minus_0 - q) < 1e-14);
    }
}

TEST_CASE("alpha validation") {
    CHECK_THROWS_AS(derive_params(-0.1), validation_error);
    CHECK_THROWS_AS(derive_params(0.0), validation_error);
    CHECK_THROWS_AS(derive_params(0.3), validation_error);
    CHECK_THROWS_AS(derive_params(0.25), validation_error);
    CHECK_THROWS_WITH_AS(derive_params(0.25),
                         doctest::Contains("affine-critical"), validation_error);
}

TEST_CASE("shrinker classification table") {
    CHECK(classify_shrinkers(derive_params(0.12)).folds == std::vector<int>{fold_round});
    CHECK(classify_shrinkers(derive_params(0.1)).folds == std::vector<int>{fold_round, 3});
    FoldSet s = classify_shrinkers(derive_params(0.05));
    CHECK(s.folds == std::vector<int>{fold_round, 3, 4});
    CHECK(s.size() == 3);  // = m - 1 with m = 4
}

TEST_CASE("classification sweep: |FoldSet| = m - 1 and m non-increasing") {
    int last_m = 1000;
    for (double a = 0.005; a < 0.24; a += 0.0025) {
        FlowParams p = derive_params(a);
        FoldSet s = classify_shrinkers(p);
        CHECK(int(s.size()) == p.m - 1);
        CHECK(p.m <= last_m);
        CHECK(double(p.m) * p.m < 1.0 / a);
        CHECK(double(p.m + 1) * (p.m + 1) >= 1.0 / a);
        last_m = p.m;
    }
}

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(PeriodicGrid(6), validation_error);
    CHECK_THROWS_AS(PeriodicGrid(9), validation_error);
    CHECK_NOTHROW(PeriodicGrid(8));
    CHECK_THROWS_AS(StripGrid(0.0, 1.0, 8, 16), validation_error);
    CHECK_THROWS_AS(StripGrid(1.0, 0.0, 32, 16), validation_error);
    StripGrid g(2.0, 10.0, 33, 16);
    CHECK(g.ds() == doctest::Approx(0.25));
    CHECK(g.s(32) == doctest::Approx(10.0));
}

TEST_CASE("config parsing") {
    Config cfg = Config::parse("# comment\n n = 512 \n tol_residual=1e-8\nname = run1\n");
    CHECK(cfg.get_int("n", 0) == 512);
    CHECK(cfg.get_double("tol_residual", 0.0) == doctest::Approx(1e-8));
    CHECK(cfg.get_double("missing", 2.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS(Config::parse("badline\n"), validation_error);
    CHECK_THROWS_AS(cfg.get_double("name", 0.0), validation_error);
}

TEST_CASE("spectral differentiation is exact on resolved trig polynomials") {
    const int n = 64;
    std::vector<double> f(n), d1(n), d2(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * i / n;
        f[i] = std::sin(3.0 * t) + 0.5 * std::cos(5.0 * t) + 2.0;
        d1[i] = 3.0 * std::cos(3.0 * t) - 2.5 * std::sin(5.0 * t);
        d2[i] = -9.0 * std::sin(3.0 * t) - 12.5 * std::cos(5.0 * t);
    }
    auto g1 = spectral_derivative(f);
    auto g2 = spectral_second_derivative(f);
    for (int i = 0; i < n; ++i) {
        CHECK(g1[i] == doctest::Approx(d1[i]).epsilon(1e-11));
        CHECK(g2[i] == doctest::Approx(d2[i]).epsilon(1e-11));
    }
}

TEST_CASE("spectral derivative annihilates constants exactly") {
    std::vector<double> f(512, 3.7);
    for (double v : spectral_second_derivative(f)) CHECK(std::fabs(v) < 1e-13);
    for (double v : spectral_derivative(f)) CHECK(std::fabs(v) < 1e-13);
}

TEST_CASE("cumulative integral is 4th order") {
    auto run = [](int n) {
        std::vector<double> f(n);
        double h = 1.0 / (n - 1);
        for (int i = 0; i < n; ++i) f[i] = std::exp(i * h);
        return std::fabs(cumulative_integral(f, h).back() - (std::exp(1.0) - 1.0));
    };
    double e1 = run(65), e2 = run(129);
    CHECK(e1 < 1e-8);
    CHECK(e2 < e1 / 12.0);  // ~16x for 4th order
}

TEST_CASE("trig interpolant hits nodes and interpolates smoothly") {
    const int n = 32;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * i / n;
        f[i] = std::exp(std::sin(t));
    }
    TrigInterpolant ti(f);
    for (int i = 0; i < n; ++i)
        CHECK(ti.eval(2.0 * M_PI * i / n) == doctest::Approx(f[i]).epsilon(1e-12));
    CHECK(ti.eval(0.1234) == doctest::Approx(std::exp(std::sin(0.1234))).epsilon(1e-9));
}

TEST_CASE("root finder and ODE integrator sanity") {
    double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14, "sqrt2");
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    OdeSystem expgrow = [](const std::vector<double>& x, std::vector<double>& dx, double) {
        dx[0] = x[0];
    };
    std::vector<double> state = {1.0};
    integrate_to(expgrow, state, 0.0, 1.0, 1e-12);
    CHECK(state[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("two-power and log-amplitude fits recover planted coefficients") {
    std::vector<double> x, y;
    for (double t = 10.0; t <= 100.0; t *= 1.1) {
        x.push_back(t);
        y.push_back(2.5 * std::pow(t, 0.8) - 0.7 * std::pow(t, 0.4));
    }
    auto fit = fit_two_powers(x, y, 0.8, 0.4);
    CHECK(fit.c0 == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(fit.c1 == doctest::Approx(-0.7).epsilon(1e-9));

    std::vector<double> s, c;
    for (double t = 0.0; t < 3.0; t += 0.25) {
        s.push_back(t);
        c.push_back(-1.25 * std::exp(-0.3 * t));
    }
    auto la = fit_log_amplitude(s, c, -0.3);
    CHECK(la.amplitude == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(la.rms < 1e-12);
}
