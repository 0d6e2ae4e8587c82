#include <cmath>
#include <random>

#include "doctest.h"
#include "soliton/numerics.hpp"
#include "soliton/params.hpp"
#include "soliton/shrinker.hpp"
#include "soliton/spectrum.hpp"

using namespace soliton;

TEST_CASE("assembled problem: A symmetric, W positive, W scalar for round h") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = round_shrinker(p, 64);
    auto prob = assemble_weighted_eigenproblem(p, prof.h);
    CHECK((prob.A - prob.A.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(prob.W_diag.minCoeff() > 0.0);
    CHECK((prob.W_diag.array() - prob.W_diag(0)).abs().maxCoeff() < 1e-15);

    ShrinkerProfile shot = shoot_shrinker(p, 3, 64);
    auto prob3 = assemble_weighted_eigenproblem(p, shot.h);
    CHECK((prob3.A - prob3.A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(prob3.W_diag.minCoeff() > 0.0);
}

TEST_CASE("round spectrum matches the closed form 2a(1-2a)(1-j^2)") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = round_shrinker(p, 512);
    Spectrum spec = eigen_spectrum(prof, 512, 8);

    // expected head with multiplicities: j = 0 once, j >= 1 twice
    std::vector<double> expected = {0.16, 0.0, 0.0, -0.48, -0.48, -1.28, -1.28,
                                    -2.4, -2.4, -3.84, -3.84};
    for (std::size_t j = 0; j < expected.size(); ++j)
        CHECK(std::fabs(spec.lambdas[j] - expected[j]) < 1e-6);

    // closed form for j <= 8 within the convergence model (4th order stencil)
    Spectrum fine = eigen_spectrum_refined(prof, 512, 10);
    for (int j = 0; j <= 8; ++j) {
        double lam = round_lambda(p, j);
        int idx = (j == 0) ? 0 : 2 * j - 1;
        CHECK(std::fabs(fine.lambdas[idx] - lam) < 1e-7);
        CHECK(std::fabs(fine.lambdas[idx + (j == 0 ? 0 : 1)] - lam) < 1e-7);
    }
}

TEST_CASE("lambda_0 = 2a(1-2a) with eigenfunction parallel to h") {
    FlowParams p = derive_params(0.1);
    for (int fold : {fold_round, 3}) {
        ShrinkerProfile prof =
            (fold == fold_round) ? round_shrinker(p, 256) : shoot_shrinker(p, 3, 256);
        Spectrum spec = eigen_spectrum(prof, 256, 6);
        CHECK(std::fabs(spec.lambdas[0] - 0.16) < 1e-7);
        // alignment |<phi_0, h>|/(|phi_0||h|) = 1
        double hp = spec.l2h_inner(spec.eigenfunctions[0], spec.h.values);
        double hh = spec.l2h_inner(spec.h.values, spec.h.values);
        CHECK(std::fabs(hp * hp / hh - 1.0) < 1e-9);  // phi_0 is unit-norm
        // lambda_1 = lambda_2 = 0 spanned by cos/sin
        CHECK(std::fabs(spec.lambdas[1]) < 1e-8);
        CHECK(std::fabs(spec.lambdas[2]) < 1e-8);
    }
}

TEST_CASE("3-fold profile has the simple h'-eigenvalue 2(1-2a)(a-1)") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 512);
    Spectrum spec = eigen_spectrum_refined(prof, 512, 8);

    const double target = 2.0 * (1.0 - 2.0 * p.alpha) * (p.alpha - 1.0);  // -1.44
    int hits = 0, idx = -1;
    for (std::size_t j = 0; j < spec.lambdas.size(); ++j)
        if (std::fabs(spec.lambdas[j] - target) < 1e-4) {
            ++hits;
            idx = int(j);
        }
    CHECK(hits == 1);  // simple
    CHECK(std::fabs(spec.lambdas[idx] - target) < 1e-7);

    // eigenfunction parallel to h'
    auto hprime = spectral_derivative(spec.h.values);
    double num = spec.l2h_inner(spec.eigenfunctions[idx], hprime);
    double den = std::sqrt(spec.l2h_inner(hprime, hprime));
    CHECK(std::fabs(std::fabs(num) / den - 1.0) < 1e-6);

    // and its beta^+ is exactly the cutoff 1 - 2a
    auto [bp, bm] = jacobi_exponents_for(target);
    CHECK(bp == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("jacobi exponent examples") {
    // alpha = 0.1, round, mode family j = 3
    auto [bp3, bm3] = jacobi_exponents_for(round_lambda(derive_params(0.1), 3));
    CHECK(bp3 == doctest::Approx(-0.5 + std::sqrt(6.12) / 2.0).epsilon(1e-14));
    CHECK(bp3 == doctest::Approx(0.736932).epsilon(1e-5));

    // alpha = 1/9: beta_3^+ = 7/9 = 1 - 2 alpha exactly (analytic table)
    FlowParams p9 = derive_params(1.0 / 9.0);
    auto [bp, bm] = jacobi_exponents_for(round_lambda(p9, 3));
    CHECK(std::fabs(bp - 7.0 / 9.0) < 1e-10);
    CHECK(std::fabs(bp - (1.0 - 2.0 * p9.alpha)) < 1e-10);

    // beta_0 from the spectrum equals the derived params
    FlowParams p = derive_params(0.1);
    Spectrum spec = eigen_spectrum(round_shrinker(p, 128), 128, 4);
    CHECK(spec.betas_plus[0] == doctest::Approx(p.beta_plus_0).epsilon(1e-10));
    CHECK(spec.betas_minus[0] == doctest::Approx(p.beta_minus_0).epsilon(1e-10));
}

TEST_CASE("slow mode counts: K+1 = 7 round and K+1 = 5 three-fold at alpha = 0.1") {
    FlowParams p = derive_params(0.1);

    Spectrum round_spec = eigen_spectrum_refined(round_shrinker(p, 256), 256, 8);
    SlowModeReport r1 = slow_mode_count(round_spec);
    CHECK(r1.K + 1 == 7);  // 2m + 1 with m = 3
    CHECK_FALSE(r1.exact_resonance);

    Spectrum fold_spec = eigen_spectrum_refined(shoot_shrinker(p, 3, 256), 256, 8);
    SlowModeReport r2 = slow_mode_count(fold_spec);
    CHECK(r2.K + 1 == 5);  // 2j - 1 with j = 3
    CHECK(r2.exact_resonance);  // the h'-mode sits exactly at the cutoff

    // stability under grid doubling
    SlowModeReport r1d = slow_mode_count(eigen_spectrum_refined(round_shrinker(p, 512), 512, 8));
    SlowModeReport r2d = slow_mode_count(eigen_spectrum_refined(shoot_shrinker(p, 3, 512), 512, 8));
    CHECK(r1d.K == r1.K);
    CHECK(r2d.K == r2.K);
}

TEST_CASE("K >= 2 for every alpha (beta_1^+ = beta_2^+ = 0 < 1-2a)") {
    for (double a : {0.03, 0.08, 0.1, 0.15, 0.22}) {
        FlowParams p = derive_params(a);
        Spectrum spec = eigen_spectrum_refined(round_shrinker(p, 128), 128, 10);
        CHECK(slow_mode_count(spec).K >= 2);
    }
}

TEST_CASE("round K+1 = 2m+1 across alphas") {
    for (double a : {0.02, 0.05, 0.08, 0.13, 0.2}) {
        FlowParams p = derive_params(a);
        int jmax = p.m + 4;
        Spectrum spec = eigen_spectrum_refined(round_shrinker(p, 256), 256, jmax);
        CHECK(slow_mode_count(spec).K + 1 == 2 * p.m + 1);
    }
}

TEST_CASE("cutoff bracketing failure is reported") {
    FlowParams p = derive_params(0.1);
    Spectrum spec = eigen_spectrum(round_shrinker(p, 64), 64, 1);  // only 3 modes kept
    CHECK_THROWS_AS(slow_mode_count(spec), solver_error);
}

TEST_CASE("eigenvalue convergence is O(n^-2) or better") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 512);
    Spectrum s128 = eigen_spectrum(prof, 128, 6);
    Spectrum s256 = eigen_spectrum(prof, 256, 6);
    Spectrum s512 = eigen_spectrum(prof, 512, 6);
    for (int j = 0; j < 10; ++j) {
        double d1 = std::fabs(s128.lambdas[j] - s256.lambdas[j]);
        double d2 = std::fabs(s256.lambdas[j] - s512.lambdas[j]);
        if (d1 > 1e-12) CHECK(d2 < d1 / 3.9);  // at least 2nd order (4th in practice)
    }
}

// ---- paired inner product ----------------------------------------------------

TEST_CASE("paired inner product: zero, positivity, Lemma 2.6 constants") {
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 128);
    PairedSpace space(p, prof.h);
    const int n = 128;

    PairedFunction zero{PeriodicGrid(n, 0.0), PeriodicGrid(n, 0.0)};
    CHECK(space.inner(zero, zero) == 0.0);

    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    auto random_pair = [&]() {
        PairedFunction f{PeriodicGrid(n), PeriodicGrid(n)};
        // random smooth periodic data (finite Fourier series)
        for (int m = 0; m <= 6; ++m) {
            double a1 = gauss(rng), b1 = gauss(rng), a2 = gauss(rng), b2 = gauss(rng);
            for (int i = 0; i < n; ++i) {
                double t = f.f1.theta(i);
                f.f1[i] += a1 * std::cos(m * t) + b1 * std::sin(m * t);
                f.f2[i] += a2 * std::cos(m * t) + b2 * std::sin(m * t);
            }
        }
        return f;
    };

    const double C_right = std::sqrt(std::max(1.0, 1.0 / (1.0 - 4.0 * p.alpha)));
    // constructive constant for the left inequality (rank-one corrections
    // bounded by Cauchy-Schwarz; see the module notes)
    std::vector<double> s(n), c(n);
    for (int i = 0; i < n; ++i) {
        s[i] = std::sin(prof.h.theta(i));
        c[i] = std::cos(prof.h.theta(i));
    }
    double C_left = std::sqrt(1.0 / (1.0 - 4.0 * p.alpha) + space.l2h_inner(s, s) +
                              space.l2h_inner(c, c));

    for (int trial = 0; trial < 25; ++trial) {
        PairedFunction f = random_pair();
        CHECK(space.inner(f, f) > 0.0);  // positive definite

        double g_l2 = space.l2h_norm(f.f2.values);
        CHECK(g_l2 <= C_right * space.norm(f) * (1.0 + 1e-9));

        PairedFunction zg{PeriodicGrid(n, 0.0), f.f2};
        CHECK(space.norm(zg) <= C_left * g_l2 * (1.0 + 1e-9));
    }
}

TEST_CASE("system operator is self-adjoint and the eigenpairs are orthogonal") {
    // The correction directions (h, -2a h), (sin, 0), (cos, 0) are continuum
    // eigenvectors with O(dtheta^4) discrete defects, so the 1e-8 orthogonality
    // target needs a resolved grid.
    FlowParams p = derive_params(0.1);
    ShrinkerProfile prof = shoot_shrinker(p, 3, 512);
    PairedSpace space(p, prof.h);
    Spectrum spec = eigen_spectrum(prof, 512, 10);
    const int n = 512;

    // (phi_j, beta_j^{+-} phi_j) mutually <,>_h-orthogonal
    auto pair_of = [&](int j, bool plus) {
        PairedFunction f{PeriodicGrid(n), PeriodicGrid(n)};
        double beta = plus ? spec.betas_plus[j] : spec.betas_minus[j];
        for (int i = 0; i < n; ++i) {
            f.f1[i] = spec.eigenfunctions[j][i];
            f.f2[i] = beta * spec.eigenfunctions[j][i];
        }
        return f;
    };
    for (int j = 0; j < 6; ++j) {
        for (int l = 0; l < 6; ++l) {
            for (bool pj : {true, false}) {
                for (bool pl : {true, false}) {
                    if (j == l && pj == pl) continue;
                    PairedFunction u = pair_of(j, pj), v = pair_of(l, pl);
                    double ip = space.inner(u, v);
                    double scale = space.norm(u) * space.norm(v);
                    CHECK(std::fabs(ip) < 1e-8 * scale);
                }
            }
        }
    }

    // |<Lu, v> - <u, Lv>| < 1e-8 |u||v| on random smooth pairs
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        PairedFunction u{PeriodicGrid(n), PeriodicGrid(n)}, v{PeriodicGrid(n), PeriodicGrid(n)};
        for (int m = 0; m <= 5; ++m) {
            double cu[4] = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
            double cv[4] = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
            for (int i = 0; i < n; ++i) {
                double t = u.f1.theta(i);
                u.f1[i] += cu[0] * std::cos(m * t) + cu[1] * std::sin(m * t);
                u.f2[i] += cu[2] * std::cos(m * t) + cu[3] * std::sin(m * t);
                v.f1[i] += cv[0] * std::cos(m * t) + cv[1] * std::sin(m * t);
                v.f2[i] += cv[2] * std::cos(m * t) + cv[3] * std::sin(m * t);
            }
        }
        PairedFunction Lu = space.apply_system_operator(u);
        PairedFunction Lv = space.apply_system_operator(v);
        double defect = std::fabs(space.inner(Lu, v) - space.inner(u, Lv));
        CHECK(defect < 1e-8 * space.norm(u) * space.norm(v));
    }

    // eigen-pair relation: mathcal-L (phi, beta phi) = beta (phi, beta phi)
    PairedFunction e3 = pair_of(3, true);
    PairedFunction Le3 = space.apply_system_operator(e3);
    for (int i = 0; i < n; i += 13) {
        CHECK(Le3.f1[i] == doctest::Approx(spec.betas_plus[3] * e3.f1[i]).epsilon(1e-7));
        CHECK(Le3.f2[i] == doctest::Approx(spec.betas_plus[3] * e3.f2[i]).epsilon(1e-7));
    }
}

TEST_CASE("mismatched grids are rejected") {
    FlowParams p = derive_params(0.1);
    PairedSpace space(p, round_shrinker(p, 64).h);
    PairedFunction bad{PeriodicGrid(64, 1.0), PeriodicGrid(128, 1.0)};
    CHECK_THROWS_AS(space.inner(bad, bad), validation_error);
}
