// ODE-lemma verifiers and the resonant neutral-mode coefficient system.
//
// The trichotomy lemma takes non-negative x, y, z with
//   x' >= lambda x - sigma (y+z),  |y'| <= sigma (x+y+z),  z' <= -lambda z + sigma (x+y)
// and forces either x+z = o(y) or x+y = o(z); its quantitative variant bounds
// x+z <= (8 sigma/lambda) y + 4 eps e^(-lambda L/4) on the middle window.
//
// At alpha = 1/k^2 the mode beta_k^+ = 1-2a is exactly neutral and the eight
// coefficients (c0^+-, ck^+, sk^+, c2k^+-, s2k^+-) close into a model system
// whose slaved dynamics is rho' = -+ a rho^2 with
//   a = M^2 (1/a - 1)(k^2 - 4) / (3 (1-2a)(beta_k^+ - beta_k^-)),
//   M = (2a)^(-a) (1-2a)^(2-a).
// This integrator runs the stabilized decaying-branch orientation: equations
// whose linear rate points away from the slaved manifold are negated as a
// whole (which preserves every slaved value), and the two neutral equations
// run down the rho' = -a rho^2 branch, so s * rho(s) -> 1/a. The raw
// orientation (rho' = +a rho^2, finite-time blow-up of the model) is recorded
// in the sign note for reproduction purposes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "soliton/params.hpp"

namespace soliton {

struct Trajectory {
    std::vector<double> s, x, y, z;
    std::size_t size() const { return s.size(); }
};

enum class MzClass { NeutralDominates, StableDominates, HypothesesViolated };

struct MzReport {
    MzClass cls = MzClass::HypothesesViolated;
    double tail_ratio_neutral = 0.0;  // mean (x+z)/y over the tail window
    double tail_ratio_stable = 0.0;   // mean (x+y)/z
    int first_violation = -1;
};

MzReport merle_zaag_classify(const Trajectory& t, double lambda, double sigma,
                             double threshold = 0.2, double slack = 1e-7);

struct MzBound {
    bool ok = false;
    double margin = 0.0;  // min over [-L/2, L/2] of bound - (x+z)
};

// Checks the hypotheses discretely on [-L, L] (including 0 < x+y+z < eps)
// and evaluates the bound on the middle window.
MzBound quantitative_mz_bound(const Trajectory& t, double lambda, double sigma,
                              double epsilon, double L);

// Seeded linear system satisfying the hypotheses: smooth random coefficients
// a1, a3 in [0, 1], a2 in [-1, 1]; y, z marched forward, x solved backward
// from x(L) = 0 by a fixed-point sweep; everything rescaled below epsilon.
Trajectory random_mz_system(double lambda, double sigma, double L, double epsilon,
                            int n, std::uint64_t seed);

// ---- neutral-mode coefficient system ----------------------------------------

struct NeutralState {
    double c0p = 0, c0m = 0;        // j = 0 pair
    double ck = 0, sk = 0;          // neutral pair (cos/sin k theta, beta_k^+)
    double c2kp = 0, c2km = 0;      // j = 2k pairs
    double s2kp = 0, s2km = 0;

    double rho() const { return ck * ck + sk * sk; }
};

struct NeutralCoefficients {
    int k = 0;
    double alpha = 0.0;
    double M = 0.0;
    double beta0p = 0, beta0m = 0, betakp = 0, betakm = 0, beta2kp = 0, beta2km = 0;
    double a = 0.0;         // decay coefficient of rho' = -a rho^2
    double c0_slave = 0.0;  // c0 / rho      -> M (1/a-1) / (4 (1-2a))
    double q_slave = 0.0;   // Q / rho^2     -> M (1/a-1) / (4 (1-2a)(1-4))
};

NeutralCoefficients neutral_coefficients(int k);

struct NeutralTrajectory {
    NeutralCoefficients coeffs;
    std::vector<double> s;
    std::vector<NeutralState> states;
    std::vector<double> rho;
    std::string sign_note;

    // norms feeding the trichotomy classifier: y = sqrt(rho) (neutral),
    // x = fast modes above the cutoff, z = fast modes below it
    Trajectory xyz() const;
};

NeutralTrajectory integrate_neutral_system(int k, const NeutralState& init, double s_max,
                                           int n_samples = 2000);

// Initial state with |non-neutral coefficients| <= sqrt(rho0)/10.
NeutralState random_neutral_state(int k, double rho0, std::uint64_t seed);

struct SlavingReport {
    double identity_defect = 0.0;  // max_j |(b_j^+ -(1-2a))(b_j^- -(1-2a)) - 2(1-2a)(1-a j^2)|
    double c0_ratio = 0.0, c0_expected = 0.0;
    double q_ratio = 0.0, q_expected = 0.0;
    double a_fit = 0.0;       // slope of 1/rho over the tail
    double srho_end = 0.0;    // s * rho at the last sample
};

SlavingReport slaving_relations_check(const NeutralTrajectory& t);

}  // namespace soliton
