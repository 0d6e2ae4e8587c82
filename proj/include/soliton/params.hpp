// Flow parameters, derived constants, grids, and the shrinker
// classification table shared by every other module.
//
// All quantities live in the sub-affine-critical window alpha in (0, 1/4):
//   m       : largest integer with m^2 < 1/alpha
//   c_alpha : (2 alpha (1-2 alpha))^alpha, the constant support function of
//             the round shrinker
//   beta0^+- : roots of beta^2 + beta + 2 alpha (1-2 alpha) = 0, i.e. the
//             Jacobi exponents of the lowest mode, beta0^+ = -2a, beta0^- = 2a-1.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace soliton {

// Thrown on bad user input (exit code 2 at the CLI).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iteration/root-finder/integrator fails (exit code 3).
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FlowParams {
    double alpha = 0.0;
    int m = 0;                            // largest m with m^2 < 1/alpha
    double c_alpha = 0.0;                 // (2a(1-2a))^a
    double beta_plus_0 = 0.0;             // -2a
    double beta_minus_0 = 0.0;            // 2a-1
    double growth_exponent_graph = 0.0;   // 1/(1-2a)
    double growth_exponent_dual = 0.0;    // 1/(2a)

    double one_minus_2a() const { return 1.0 - 2.0 * alpha; }
};

// Validates alpha in the open interval (0, 1/4) and fills every derived
// constant. The endpoints get a distinct "critical exponent" message: the
// analysis degenerates there (1-4a divisors, affine-critical ellipse family).
FlowParams derive_params(double alpha);

// Finite fold numbers use k >= 3; the circle is represented by fold == 0.
inline constexpr int fold_round = 0;

struct FoldSet {
    int m = 0;
    std::vector<int> folds;  // {0, 3, 4, ..., m}; 0 is the circle

    bool contains(int fold) const;
    // m - 1 by Andrews' classification
    std::size_t size() const { return folds.size(); }
};

FoldSet classify_shrinkers(const FlowParams& params);

// Uniform samples of a 2pi-periodic function, theta_i = 2 pi i / n.
struct PeriodicGrid {
    int n = 0;
    std::vector<double> values;

    PeriodicGrid() = default;
    explicit PeriodicGrid(int n_samples);
    PeriodicGrid(int n_samples, double constant);

    double theta(int i) const { return 2.0 * M_PI * i / n; }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    double min() const;
    double max() const;
};

// Checks n >= 8 and even; throws validation_error otherwise.
void validate_grid_size(int n);

// Uniform tensor grid on [s_min, s_max] x S^1.
struct StripGrid {
    double s_min = 0.0, s_max = 0.0;
    int n_s = 0, n_theta = 0;

    StripGrid() = default;
    StripGrid(double smin, double smax, int ns, int ntheta);

    double ds() const { return (s_max - s_min) / (n_s - 1); }
    double dtheta() const { return 2.0 * M_PI / n_theta; }
    double s(int i) const { return s_min + i * ds(); }
    double theta(int j) const { return 2.0 * M_PI * j / n_theta; }
    std::size_t size() const { return std::size_t(n_s) * n_theta; }
};

// key = value text config for default grid sizes and tolerances.
// Lines starting with '#' and blank lines are ignored.
struct Config {
    std::map<std::string, std::string> entries;

    static Config load(const std::string& path);
    static Config parse(const std::string& text);

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
};

}  // namespace soliton
