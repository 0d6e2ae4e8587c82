// Linearized operator L phi = h^(1/a) (phi + phi_theta_theta) on L^2_h with
// <f,g>_h = int f g h^(-1/a) dtheta, its discrete spectrum, the Jacobi
// exponents beta_j^+- (roots of beta^2 + beta + lambda_j = 0), the slow-mode
// count K = max{ j : beta_j^+ < 1-2a }, and the paired inner product that
// makes the first-order system operator self-adjoint.

#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "soliton/params.hpp"
#include "soliton/shrinker.hpp"

namespace soliton {

// A phi = lambda W phi with A = (D2 + I) dtheta symmetric and W the diagonal
// positive weight h^(-1/a) dtheta; symmetric-definite generalized pair.
struct WeightedEigenproblem {
    Eigen::MatrixXd A;
    Eigen::VectorXd W_diag;
};

// stencil_order 2 = classic 3-point second difference, 4 = 5-point (default;
// the round-case eigenvalue tolerances need better than O(n^-2)).
WeightedEigenproblem assemble_weighted_eigenproblem(const FlowParams& params,
                                                    const PeriodicGrid& h,
                                                    int stencil_order = 4);

struct Spectrum {
    FlowParams params;
    int fold = fold_round;
    PeriodicGrid h;                      // profile samples on the solve grid
    std::vector<double> lambdas;         // descending, multiplicity kept
    std::vector<std::vector<double>> eigenfunctions;  // L2_h-orthonormal
    std::vector<double> betas_plus, betas_minus;
    std::vector<double> lambda_errors;   // per-index |lambda_n - lambda_2n|, if refined
    int K = -1;
    int stencil_order = 4;

    std::vector<double> weight;          // w_i = h^(-1/a) dtheta
    double l2h_inner(const std::vector<double>& f, const std::vector<double>& g) const;
};

// Top (2 j_max + 1) eigenpairs of the discrete problem on an n-point grid
// (the profile is resampled trigonometrically if its grid differs).
Spectrum eigen_spectrum(const ShrinkerProfile& prof, int n, int j_max,
                        int stencil_order = 4);

// Same, but solved at n and 2n: eigenvalues Richardson-extrapolated and
// lambda_errors filled so the K-count can apply its tolerance band.
Spectrum eigen_spectrum_refined(const ShrinkerProfile& prof, int n, int j_max,
                                int stencil_order = 4);

// beta^+- = -1/2 +- sqrt(1 - 4 lambda)/2 (real: lambda <= 2a(1-2a) < 1/4).
std::pair<double, double> jacobi_exponents_for(double lambda);
void jacobi_exponents(Spectrum& spec);

// Round-case closed forms: lambda_j = 2a(1-2a)(1-j^2) with cos/sin pairs.
double round_lambda(const FlowParams& params, int j);

struct SlowModeReport {
    int K = 0;
    bool near_resonant = false;   // some beta_j^+ within the tolerance band of 1-2a
    bool exact_resonance = false; // cutoff mode present analytically
    double min_margin = 0.0;      // distance of the closest counted/excluded mode
};

// Counts K with the convention that indices repeat per multiplicity. Exact
// cutoff modes are excluded analytically, never by floating-point equality:
// for the round profile beta_k^+ = 1-2a happens iff alpha = 1/k^2; for a
// k-fold profile the h'-mode (lambda = 2(1-2a)(a-1)) sits exactly at the
// cutoff. Throws if j_max was too small to bracket the cutoff.
SlowModeReport slow_mode_count(const Spectrum& spec);

// ---- paired space of Definition 2.5 ----------------------------------------

struct PairedFunction {
    PeriodicGrid f1, f2;  // (w, w_s)
};

// <f,g>_0 = int -f1 g1 + f1' g1' + h^(-1/a) f2 g2, discretized with the same
// symmetric stencil as the eigenproblem (so the eigenpairs are orthogonal to
// machine precision), plus the rank-one corrections that make it positive
// definite: the (h, -2a h) direction and the sin/cos directions.
class PairedSpace {
  public:
    PairedSpace(const FlowParams& params, const PeriodicGrid& h, int stencil_order = 4);

    double inner0(const PairedFunction& f, const PairedFunction& g) const;
    double inner(const PairedFunction& f, const PairedFunction& g) const;
    double norm(const PairedFunction& f) const { return std::sqrt(inner(f, f)); }

    // mathcal-L (w1, w2) = (w2, -h^(1/a)(w1 + w1'') - w2)
    PairedFunction apply_system_operator(const PairedFunction& f) const;

    double l2h_inner(const std::vector<double>& f, const std::vector<double>& g) const;
    double l2h_norm(const std::vector<double>& f) const { return std::sqrt(l2h_inner(f, f)); }

    const std::vector<double>& weight() const { return weight_; }
    int n() const { return n_; }

  private:
    std::vector<double> minus_id_plus_d2(const std::vector<double>& f) const;

    FlowParams params_;
    PeriodicGrid h_;
    int n_ = 0;
    int stencil_order_ = 4;
    std::vector<double> weight_;      // h^(-1/a) dtheta
    std::vector<double> h_pow_;       // h^(1/a)
    std::vector<double> sin_, cos_;
    PairedFunction p_;                // (h, -2a h)
    double p_norm0_ = 0.0;            // <p, p>_0 (negative for alpha < 1/4)
};

// Resamples periodic data onto n points by trigonometric interpolation.
PeriodicGrid resample_profile(const PeriodicGrid& h, int n);

}  // namespace soliton
