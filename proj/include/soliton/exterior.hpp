// Translator solver on exterior strips {s >= R} x S^1, working in the ansatz
//
//   S(e^s, theta) = e^((1-2a)s)/(1-2a) h(theta) + w(s, theta),
//
// where w solves  hat-L w := w_ss + h^(1/a)(w + w_tt) + w_s = E(w)  with the
// nonlinear error E(w) of the support-function equation. The linearization
// diagonalizes in the L^2_h eigenbasis; mode j responds through the Jacobi
// exponents beta_j^+-, and hat-L is inverted mode-wise by the double-integral
// solution operator H0 (vanishing data at s = R, decay selected above the
// mode split m). A Picard iteration u_{k+1} = H0(E(T_k) - hat-L T_k)
// contracts once R is large enough; increments are tracked in gamma-weighted
// C^2 grid norms.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soliton/params.hpp"
#include "soliton/shrinker.hpp"
#include "soliton/spectrum.hpp"

namespace soliton {

struct ExteriorField {
    StripGrid grid;
    std::vector<double> w;    // row-major [i_s * n_theta + i_t]
    std::vector<double> w_s;  // exact s-derivative carried alongside

    double at(int i_s, int i_t) const { return w[std::size_t(i_s) * grid.n_theta + i_t]; }
    double& at(int i_s, int i_t) { return w[std::size_t(i_s) * grid.n_theta + i_t]; }
    double ds_at(int i_s, int i_t) const { return w_s[std::size_t(i_s) * grid.n_theta + i_t]; }
    double& ds_at(int i_s, int i_t) { return w_s[std::size_t(i_s) * grid.n_theta + i_t]; }
};

ExteriorField zero_field(const StripGrid& grid);

// sup over interior window centers of e^(-gamma s') * (C^order norm on
// [s'-1, s'+1] x S^1), with grid derivatives (exact w_s, spectral in theta,
// finite differences for w_ss).
double weighted_norm(const ExteriorField& f, double gamma, int order);

struct JacobiSeed {
    int mode = 0;        // eigen index (repeated-eigenvalue ordering)
    double amplitude = 0.0;
};

// An exterior solution together with the data the next construction stage
// needs: hat-L T = E(T) holds at convergence, so Lhat stores E(T).
struct ExteriorSolution {
    ExteriorField total;          // w = g_base + u0 + sum u_k
    std::vector<double> Lhat;     // pointwise hat-L of total (= E(total))
    double gamma2 = 0.0;          // weighted decay exponent of the total
    double R = 0.0;

    std::vector<double> ratios;   // ||u_{k+1}|| / ||u_k||, k >= 0
    double gamma1 = 0.0;          // norm exponent used for the ratios
    int mode_split = 0;
    bool converged = false;
    double final_increment = 0.0;
    double tail_budget = 0.0;     // largest relative inner-integral tail
};

class ExteriorWorkspace {
  public:
    ExteriorWorkspace(const ShrinkerProfile& prof, const StripGrid& grid,
                      int stencil_order = 4);

    const Spectrum& spectrum() const { return spec_; }
    const StripGrid& grid() const { return grid_; }
    const FlowParams& params() const { return params_; }

    // E(w) evaluated pointwise from (w, w_s); throws on a non-graphical state
    // (S_s <= 0) and checks S + S_tt > 0.
    std::vector<double> nonlinear_error(const ExteriorField& w) const;

    // Mode-wise inverse of hat-L with zero boundary data at s = R; modes
    // j >= m use the decaying double integral, j < m integrate from R.
    // Returns the solution with its exact s-derivative; *tail_budget reports
    // the largest relative tail added for the truncated upper integrals.
    ExteriorField linear_solve_H0(const std::vector<double>& g, int m,
                                  double* tail_budget = nullptr) const;

    // Picard iteration from T_0 = g_base + u0 (either may be empty). Throws
    // solver_error when the contraction fails at this R.
    ExteriorSolution fixed_point(const ExteriorSolution* g_base,
                                 const std::optional<JacobiSeed>& u0,
                                 int max_steps = 60) const;

    // sup over the interior strip of |S + S_tt + (1+S_l^-2)^(1/(2a)-2) S_l^-4 S_ll|
    // normalized by l^(1-2a), with S = homogeneous + w.
    double support_residual(const ExteriorField& w) const;

    // L^2_h projection of (w1 - w2) onto mode j per slice, then a log-scale
    // amplitude fit of a e^(beta_j^+ s) on the last third of the strip.
    struct ModeFit {
        double amplitude = 0.0;
        double fit_rms = 0.0;
        bool below_noise = false;
    };
    ModeFit extract_mode_coefficient(const ExteriorField& w1, const ExteriorField& w2,
                                     int j) const;

    // Jacobi field a phi_j e^(beta_j^+ s) as a grid field (exact derivative).
    ExteriorField jacobi_field(const JacobiSeed& seed) const;

    // per-slice eigen coefficients and back
    std::vector<double> to_modes(const std::vector<double>& values) const;
    std::vector<double> slice_coefficients(const ExteriorField& f, int i_s) const;

    // bootstrap decay exponent (1-6a nudged strictly inside its spectral gap)
    double bootstrap_gamma() const;
    // gap data for a target exponent: first mode index with beta^+ > gamma
    int mode_split_for(double gamma) const;

  private:
    FlowParams params_;
    StripGrid grid_;
    Spectrum spec_;
    int n_ = 0;                      // n_theta
    std::vector<double> h_, h_tt_;   // profile and exact h''
    std::vector<double> h_pow_;      // h^(1/a)
    std::vector<double> h_pow1_;     // h^(1/a - 1)
    std::vector<double> hom_coeff_;  // (h + h_tt)/(1-2a) = 2a h^((a-1)/a)
};

// Standalone residual of the support-function PDE for a raw S-field sampled
// on a strip in (s, theta) (s-derivatives by finite differences, spectral in
// theta); used for cross-module checks of radial fields.
double support_residual_of_S(const StripGrid& grid, const std::vector<double>& S_values,
                             double alpha);

// Convenience: bootstrap with automatic doubling of R until the contraction
// ratios drop below 1/2 from the second increment onward.
struct BootstrapResult {
    ExteriorSolution solution;
    ShrinkerProfile profile;
    double R = 0.0;
    int attempts = 0;
};
BootstrapResult bootstrap_exterior(const ShrinkerProfile& prof, double R_init, double span,
                                   int n_s, int n_theta, double R_budget = 64.0);

}  // namespace soliton
