#include "soliton/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "soliton/params.hpp"

namespace soliton {

namespace {

// Circulant kernel application with the sample mean removed first: a
// derivative kernel annihilates constants exactly, and subtracting the mean
// keeps the cancellation error proportional to the oscillation amplitude
// instead of the full function value.
std::vector<double> apply_circulant(const std::vector<double>& kernel,
                                    const std::vector<double>& f) {
    const int n = int(f.size());
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= n;
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = f[i] - mean;

    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d) {
            int j = i + d;
            if (j >= n) j -= n;
            acc += kernel[d] * g[j];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace

std::vector<double> spectral_derivative(const std::vector<double>& values) {
    const int n = int(values.size());
    validate_grid_size(n);
    const double h = 2.0 * M_PI / n;
    std::vector<double> kernel(n, 0.0);
    for (int d = 1; d < n; ++d) {
        double sign = (d % 2 == 0) ? -1.0 : 1.0;
        kernel[d] = 0.5 * sign / std::tan(0.5 * d * h);
    }
    // kernel[d] multiplies f[i+d]; the matrix entry D[i][j] with j-i=d
    // equals 0.5 (-1)^{d+1} cot(dh/2), antisymmetric as it must be.
    return apply_circulant(kernel, values);
}

std::vector<double> spectral_second_derivative(const std::vector<double>& values) {
    const int n = int(values.size());
    validate_grid_size(n);
    const double h = 2.0 * M_PI / n;
    std::vector<double> kernel(n, 0.0);
    kernel[0] = -M_PI * M_PI / (3.0 * h * h) - 1.0 / 6.0;
    for (int d = 1; d < n; ++d) {
        double sign = (d % 2 == 0) ? -1.0 : 1.0;  // -(-1)^d
        double s = std::sin(0.5 * d * h);
        kernel[d] = sign * 0.5 / (s * s);
    }
    return apply_circulant(kernel, values);
}

TrigInterpolant::TrigInterpolant(const std::vector<double>& samples) : n(int(samples.size())) {
    validate_grid_size(n);
    const int half = n / 2;
    a.assign(half + 1, 0.0);
    b.assign(half + 1, 0.0);
    for (int k = 0; k <= half; ++k) {
        double ca = 0.0, cb = 0.0;
        for (int j = 0; j < n; ++j) {
            double th = 2.0 * M_PI * k * j / n;
            ca += samples[j] * std::cos(th);
            cb += samples[j] * std::sin(th);
        }
        a[k] = 2.0 * ca / n;
        b[k] = 2.0 * cb / n;
    }
}

double TrigInterpolant::eval(double theta) const {
    const int half = n / 2;
    double acc = 0.5 * a[0];
    // trig recurrence on cos/sin(k theta)
    double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = c1, sk = s1;
    for (int k = 1; k < half; ++k) {
        acc += a[k] * ck + b[k] * sk;
        double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    acc += 0.5 * a[half] * ck;  // Nyquist term
    return acc;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const int n = int(f.size());
    std::vector<double> I(n, 0.0);
    if (n < 4) throw validation_error("cumulative_integral needs >= 4 samples");
    // Cell [i, i+1] integrated by the cubic through the 4 nearest samples.
    auto cell = [&](int i) {
        if (i == 0)
            return h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        if (i == n - 2)
            return h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
        return h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    };
    for (int i = 0; i + 1 < n; ++i) I[i + 1] = I[i] + cell(i);
    return I;
}

double integrate_uniform(const std::vector<double>& f, double h) {
    return cumulative_integral(f, h).back();
}

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    double v = gauss_kronrod<double, 31>::integrate(f, a, b, 12, rel_tol, &error);
    return v;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol, const std::string& what) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw solver_error("root bracket invalid for " + what + ": f(" + std::to_string(lo) +
                           ")=" + std::to_string(flo) + ", f(" + std::to_string(hi) +
                           ")=" + std::to_string(fhi));
    std::uintmax_t max_iter = 200;
    auto stop = [tol](double a, double b) { return std::fabs(b - a) <= tol; };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, max_iter);
    return 0.5 * (r.first + r.second);
}

namespace {

namespace odeint = boost::numeric::odeint;
using stepper_t = odeint::runge_kutta_fehlberg78<std::vector<double>>;

struct SysAdapter {
    const OdeSystem* sys;
    void operator()(const std::vector<double>& x, std::vector<double>& dxdt, double t) const {
        (*sys)(x, dxdt, t);
    }
};

}  // namespace

void integrate_to(const OdeSystem& sys, std::vector<double>& state, double t0,
                  double t1, double tol) {
    if (t0 == t1) return;
    auto stepper = odeint::make_controlled<stepper_t>(tol, tol);
    double dt = (t1 - t0) / 64.0;
    odeint::integrate_adaptive(stepper, SysAdapter{&sys}, state, t0, t1, dt);
}

double integrate_until(const OdeSystem& sys, std::vector<double>& state, double t0,
                       double t_limit, double tol,
                       const std::function<bool(const std::vector<double>&, double)>& stop) {
    auto stepper = odeint::make_controlled<stepper_t>(tol, tol);
    const double dir = (t_limit >= t0) ? 1.0 : -1.0;
    double t = t0;
    double dt = dir * std::min(std::fabs(t_limit - t0) / 64.0, 0.1);
    SysAdapter f{&sys};
    while (dir * (t_limit - t) > 0.0) {
        if (dir * (t + dt - t_limit) > 0.0) dt = t_limit - t;
        auto res = stepper.try_step(f, state, t, dt);
        if (res == odeint::fail) continue;  // dt was shrunk, retry
        if (stop(state, t)) return t;
    }
    return t;
}

TwoPowerFit fit_two_powers(const std::vector<double>& x, const std::vector<double>& y,
                           double p0, double p1) {
    double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = std::pow(x[i], p0), v = std::pow(x[i], p1);
        a00 += u * u;
        a01 += u * v;
        a11 += v * v;
        b0 += u * y[i];
        b1 += v * y[i];
    }
    double det = a00 * a11 - a01 * a01;
    if (det <= 0.0) throw solver_error("two-power fit is singular");
    TwoPowerFit fit;
    fit.c0 = (a11 * b0 - a01 * b1) / det;
    fit.c1 = (a00 * b1 - a01 * b0) / det;
    double tr = a00 + a11;
    // ratio of eigenvalues of the 2x2 normal matrix
    double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    fit.condition = (tr + disc) / std::max(tr - disc, 1e-300);
    return fit;
}

LogAmplitudeFit fit_log_amplitude(const std::vector<double>& x, const std::vector<double>& y,
                                  double beta) {
    // All y must share one sign; otherwise the amplitude is indistinguishable
    // from the noise floor and we report 0.
    LogAmplitudeFit fit;
    bool pos = y.front() > 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0 || (y[i] > 0.0) != pos) return fit;
        acc += std::log(std::fabs(y[i])) - beta * x[i];
    }
    double ln_a = acc / double(y.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double r = std::log(std::fabs(y[i])) - beta * x[i] - ln_a;
        ss += r * r;
    }
    fit.amplitude = (pos ? 1.0 : -1.0) * std::exp(ln_a);
    fit.rms = std::sqrt(ss / double(y.size()));
    return fit;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = n * sxx - sx * sx;
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int threads = 1;
    if (const char* env = std::getenv("SOLITON_LAB_THREADS")) {
        threads = std::max(1, std::atoi(env));
        threads = std::min<int>(threads, std::max(1u, std::thread::hardware_concurrency()));
    }
    if (threads == 1 || n < 2 * threads) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace soliton
