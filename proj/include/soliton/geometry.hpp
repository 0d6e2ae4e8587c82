// Convex-function utilities on 2D grids: discrete Legendre conjugate (exact
// lower-hull transform with local quadratic refinement), level-set support
// functions, blow-down rescaling, the dual Monge-Ampere residual, and the
// entropy J_v(x) = (Delta v)(x_i x_j v_ij)^(4a-1) with its closed forms.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "soliton/params.hpp"
#include "soliton/shrinker.hpp"

namespace soliton {

struct ConvexSample {
    int nx = 0, ny = 0;
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    std::vector<double> values;        // row-major, x fastest
    std::vector<std::uint8_t> valid;   // 1 = sample usable

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    double at(int i, int j) const { return values[std::size_t(j) * nx + i]; }
    double& at(int i, int j) { return values[std::size_t(j) * nx + i]; }
    bool is_valid(int i, int j) const { return valid[std::size_t(j) * nx + i] != 0; }
    void set_valid(int i, int j, bool v) { valid[std::size_t(j) * nx + i] = v ? 1 : 0; }
};

// Samples fn(x, y) on the grid; every node valid.
ConvexSample make_sample(int nx, int ny, double x_min, double x_max, double y_min,
                         double y_max, const std::function<double(double, double)>& fn);

// Homogeneous lift r^kappa g(theta) of an angular profile (trig-interpolated).
ConvexSample lift_homogeneous(const PeriodicGrid& g, double kappa, int n, double half_width);

// Most negative second difference along grid lines, scaled by 1/dx^2
// (>= -tol on discretely convex input).
double convexity_defect(const ConvexSample& u);

// Discrete Legendre conjugate u*(s) = max over valid samples of <s,x> - u(x),
// evaluated on the given dual grid by two 1D lower-hull passes (exact for the
// discrete max; O(N) per line). With refine, a local parabola through the
// argmax neighbors sharpens the O(dx^2) sup error to ~O(dx^3), which keeps
// second differences of the conjugate usable. Dual nodes whose argmax touches
// the sample boundary are marked invalid.
ConvexSample legendre_conjugate(const ConvexSample& u, int ns_x, int ns_y, double sx_min,
                                double sx_max, double sy_min, double sy_max,
                                bool refine = true);

// O(N^2) reference conjugate for coarse-grid tests.
ConvexSample naive_conjugate(const ConvexSample& u, int ns_x, int ns_y, double sx_min,
                             double sx_max, double sy_min, double sy_max);

// Support function of the (marching-squares) level curve {u = l}; the sup
// over extracted points is itself the convexification. Throws if the level
// set touches the sampled boundary.
PeriodicGrid level_support_function(const ConvexSample& u, double l, int n_theta);

// u_lambda(x) = lambda^(-kappa) u(lambda x) resampled on the same grid
// (kappa = 1/(1-2a) primal side, 1/(2a) dual side). Nodes with lambda x
// outside the sample are marked invalid; throws if nothing remains.
ConvexSample blow_down(const ConvexSample& u, double lambda, double kappa);

enum class DualRhs {
    Translator,   // det D^2 v = (1 + |x|^2)^(1/(2a) - 2)
    Homogeneous,  // det D^2 v = |x|^(1/a - 4)
};

struct ResidualReport {
    double sup = 0.0;   // relative to the RHS
    double l2 = 0.0;
    int count = 0;      // evaluated nodes
};

// Centered-difference Monge-Ampere residual on the valid interior (away from
// the origin by >= 2 cells).
ResidualReport dual_equation_residual(const ConvexSample& v, double alpha,
                                      DualRhs rhs = DualRhs::Translator, int fd_order = 2);

struct EntropyField {
    int nx = 0, ny = 0;
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    std::vector<double> J;
    std::vector<std::uint8_t> valid;
    double j_min = 0.0, j_max = 0.0, j_mean = 0.0;
    int count = 0;
};

// Pointwise J; origin masked by two cells plus the stencil margin. fd_order 4
// by default: with the dual growth exponent 1/(2a) the 2nd-order Hessian
// noise exceeds the constancy tolerances on any grid that fits in memory.
EntropyField entropy_J_field(const ConvexSample& v, double alpha, int fd_order = 4,
                             double r_mask = 0.0);

// J of the fold-k homogeneous dual via eq-hh: c (1-2a) ((1-2a)/(4a^2))^(4a-1),
// with c = c_k from the period integral or c_inf for the circle.
double entropy_J_closed_form(const FlowParams& params, int fold);

// Same number through the tangency route (t_inf/(4a^2)) ((1-2a) t_inf /
// (4a^2))^(4a-1); agreement of the two routes is a cross-check.
double entropy_J_round_tangency_form(const FlowParams& params);

}  // namespace soliton
