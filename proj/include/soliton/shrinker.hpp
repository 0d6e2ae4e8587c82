// Shrinking solitons of the alpha/(1-alpha) curve shortening flow, built two
// independent ways and certified by the residual of the shrinker ODE
//
//     h + h_theta_theta = 2a(1-2a) h^((a-1)/a).
//
// Route 1 (primal): shoot the ODE in the support function h(theta).
// Route 2 (dual):   the homogeneous dual profile g(theta) solves
//     g'' = h_c'(g),  g' = sqrt(2 h_c(g)),
// where 2 h_c(t) = c t^(2(1-2a)) - t^2/(4a^2) - (2a/(1-2a))^2 and the
// fold number is pinned by the period integral I_c = pi/k.

#pragma once

#include "soliton/params.hpp"

namespace soliton {

enum class Construction { Shooting, DualPotential, RoundClosedForm };

struct ShrinkerProfile {
    FlowParams params;
    int fold = fold_round;  // fold_round for the circle, else k >= 3
    PeriodicGrid h;
    Construction construction = Construction::RoundClosedForm;
    double residual_sup = 0.0;
};

// One-well potential window of the dual homogeneous ODE.
struct DualPotential {
    double alpha = 0.0;
    double c = 0.0;
    double t_lo = 0.0, t_hi = 0.0;  // the two positive zeros of h_c

    double value(double t) const;              // h_c(t)
    double derivative(double t) const;         // h_c'(t)
    double second_derivative(double t) const;  // h_c''(t)
};

// Constant profile h = c_alpha; ODE residual vanishes identically.
ShrinkerProfile round_shrinker(const FlowParams& params, int n = 512);

// Tangency parameters: smallest c with {h_c >= 0} nonempty, and the touching
// point. Closed forms t_inf = 2a sqrt(2a/(1-2a)), c_inf = 2a/(1-2a)^2 *
// t_inf^(-2(1-2a)); the pair is verified to satisfy h=h'=0 to 1e-10.
struct TangencyPotential {
    double c_inf = 0.0;
    double t_inf = 0.0;
};
TangencyPotential tangency_potential(const FlowParams& params);

// Builds the potential window for a given c > c_inf (root-finds t_lo, t_hi).
DualPotential make_dual_potential(const FlowParams& params, double c);

// I_c = integral over {h_c > 0} of dt / sqrt(2 h_c). Endpoint inverse-sqrt
// singularities removed by t = t_lo + u^2 (and mirrored at t_hi).
double period_integral(const DualPotential& pot, double rel_tol = 1e-10);

// Solves I_c = pi/k for c on (c_inf, inf); requires k in the fold set.
DualPotential dual_potential_for_fold(const FlowParams& params, int k);

// Angular profile of the dual homogeneous solution: integrates g'' = h_c'(g)
// from (t_lo, 0); 2pi/k-periodic when I_c = pi/k.
PeriodicGrid reconstruct_dual_angle_profile(const DualPotential& pot, int k, int n = 512);

// Shooting construction of the k-fold support function. Bisects on h(0) so
// the half-well has angular length exactly pi/k, then integrates the full
// circle and certifies the residual and strict convexity.
ShrinkerProfile shoot_shrinker(const FlowParams& params, int k, int n = 512);

// sup_theta |h + h_theta_theta - 2a(1-2a) h^((a-1)/a)| with spectral
// differentiation in theta.
double shrinker_residual(const FlowParams& params, const PeriodicGrid& h);

// max_i |h(theta_i + 2pi/k) - h(theta_i)| via trigonometric interpolation.
double period_defect(const ShrinkerProfile& profile, int k);

// Pointwise dual transport for extrema cross-checks: a homogeneous graph with
// level support h corresponds to the dual angular profile
// (2a/(1-2a)) h(theta)^(1/(2a)) (gauge of the polar body).
double dual_profile_from_support(const FlowParams& params, double h_value);

}  // namespace soliton
