// Shared numerical utilities: periodic spectral differentiation, high-order
// cumulative quadrature on uniform grids, adaptive ODE integration, bracketed
// root finding, small least-squares fits.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace soliton {

// ---- periodic spectral differentiation -------------------------------------
// Exact on trigonometric polynomials resolved by the grid (period 2 pi,
// even n). Implemented as circulant kernels (Trefethen's matrices).

std::vector<double> spectral_derivative(const std::vector<double>& values);
std::vector<double> spectral_second_derivative(const std::vector<double>& values);

// Trigonometric interpolant of uniform periodic samples (period 2 pi, even n);
// exact at the nodes, spectrally accurate for smooth data.
struct TrigInterpolant {
    explicit TrigInterpolant(const std::vector<double>& samples);
    double eval(double theta) const;

    int n = 0;
    std::vector<double> a, b;  // cosine / sine coefficients, k = 0 .. n/2
};

// ---- cumulative quadrature --------------------------------------------------
// I[i] = integral of the sampled function from x[0] to x[i] on a uniform grid
// with spacing h; 4th order (local cubic on each cell).
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

// Definite integral over the whole uniform grid, 4th order.
double integrate_uniform(const std::vector<double>& f, double h);

// ---- adaptive quadrature ----------------------------------------------------
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol);

// ---- bracketed root finding -------------------------------------------------
// Requires f(lo) and f(hi) of opposite sign; refines to |hi-lo| <= tol.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol, const std::string& what);

// ---- adaptive ODE integration (RKF78 behind the scenes) ---------------------
using OdeSystem = std::function<void(const std::vector<double>&, std::vector<double>&, double)>;

// Integrates state from t0 to t1 (either direction), hitting t1 exactly.
void integrate_to(const OdeSystem& sys, std::vector<double>& state, double t0,
                  double t1, double tol);

// Same, but aborts as soon as stop(state, t) turns true; returns the time
// reached. The state at return is the last accepted step (not interpolated).
double integrate_until(const OdeSystem& sys, std::vector<double>& state, double t0,
                       double t_limit, double tol,
                       const std::function<bool(const std::vector<double>&, double)>& stop);

// ---- least squares ----------------------------------------------------------
// Fits y ~ c0 * pow(x, p0) + c1 * pow(x, p1); returns {c0, c1, condition}.
struct TwoPowerFit {
    double c0 = 0.0, c1 = 0.0;
    double condition = 0.0;  // 2x2 normal-equation condition estimate
};
TwoPowerFit fit_two_powers(const std::vector<double>& x, const std::vector<double>& y,
                           double p0, double p1);

// Fits ln|y| ~ ln a + beta * x with beta fixed; returns {a(sign restored), rms}.
struct LogAmplitudeFit {
    double amplitude = 0.0;
    double rms = 0.0;
};
LogAmplitudeFit fit_log_amplitude(const std::vector<double>& x, const std::vector<double>& y,
                                  double beta);

// Ordinary least squares line y ~ a + b x; returns {a, b}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ---- misc -------------------------------------------------------------------
// Runs fn(i) for i in [0, n). Honors SOLITON_LAB_THREADS (default 1); writes
// must target disjoint slots so results do not depend on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace soliton
