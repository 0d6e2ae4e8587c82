#include "soliton/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "soliton/numerics.hpp"

namespace soliton {

ConvexSample make_sample(int nx, int ny, double x_min, double x_max, double y_min,
                         double y_max, const std::function<double(double, double)>& fn) {
    if (nx < 4 || ny < 4) throw validation_error("convex sample needs at least 4x4 nodes");
    if (!(x_min < x_max && y_min < y_max)) throw validation_error("bad sample bounds");
    ConvexSample u;
    u.nx = nx;
    u.ny = ny;
    u.x_min = x_min;
    u.x_max = x_max;
    u.y_min = y_min;
    u.y_max = y_max;
    u.values.resize(std::size_t(nx) * ny);
    u.valid.assign(std::size_t(nx) * ny, 1);
    parallel_for(ny, [&](int j) {
        double yv = u.y(j);
        for (int i = 0; i < nx; ++i) u.at(i, j) = fn(u.x(i), yv);
    });
    return u;
}

ConvexSample lift_homogeneous(const PeriodicGrid& g, double kappa, int n, double half_width) {
    TrigInterpolant ti(g.values);
    return make_sample(n, n, -half_width, half_width, -half_width, half_width,
                       [&](double x, double y) {
                           double r = std::hypot(x, y);
                           if (r == 0.0) return 0.0;
                           return std::pow(r, kappa) * ti.eval(std::atan2(y, x));
                       });
}

double convexity_defect(const ConvexSample& u) {
    double worst = 0.0;
    for (int j = 0; j < u.ny; ++j)
        for (int i = 1; i + 1 < u.nx; ++i)
            if (u.is_valid(i - 1, j) && u.is_valid(i, j) && u.is_valid(i + 1, j))
                worst = std::min(worst, (u.at(i - 1, j) - 2 * u.at(i, j) + u.at(i + 1, j)) /
                                            (u.dx() * u.dx()));
    for (int j = 1; j + 1 < u.ny; ++j)
        for (int i = 0; i < u.nx; ++i)
            if (u.is_valid(i, j - 1) && u.is_valid(i, j) && u.is_valid(i, j + 1))
                worst = std::min(worst, (u.at(i, j - 1) - 2 * u.at(i, j) + u.at(i, j + 1)) /
                                            (u.dy() * u.dy()));
    return worst;
}

namespace {

struct Llt1D {
    std::vector<double> value;
    std::vector<int> argmax;  // original sample index, -1 where invalid
};

// f*(s) = max_i (s x_i - f_i) over the valid samples, for ascending queries,
// via the lower convex hull; optional quadratic refinement of the argmax cell.
Llt1D llt_1d(const std::vector<double>& x, const std::vector<double>& f,
             const std::vector<std::uint8_t>& ok, const std::vector<double>& s, bool refine) {
    const int n = int(x.size());
    std::vector<int> hull;
    hull.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!ok[i]) continue;
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull.back();
            // pop b if it lies on or above the chord a -> i
            if ((f[b] - f[a]) * (x[i] - x[a]) - (f[i] - f[a]) * (x[b] - x[a]) >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    Llt1D out;
    out.value.assign(s.size(), 0.0);
    out.argmax.assign(s.size(), -1);
    if (hull.size() < 2) return out;

    std::size_t j = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        while (j + 1 < hull.size() &&
               s[k] * (x[hull[j + 1]] - x[hull[j]]) >= f[hull[j + 1]] - f[hull[j]])
            ++j;
        int i0 = hull[j];
        if (j == 0 || j == hull.size() - 1) continue;  // sup at the boundary
        double best = s[k] * x[i0] - f[i0];
        if (refine && i0 > 0 && i0 + 1 < n && ok[i0 - 1] && ok[i0 + 1]) {
            double dl = x[i0] - x[i0 - 1], dr = x[i0 + 1] - x[i0];
            double d1 = (f[i0 + 1] - f[i0 - 1]) / (dl + dr);
            double d2 = 2.0 * (dr * f[i0 - 1] - (dl + dr) * f[i0] + dl * f[i0 + 1]) /
                        (dl * dr * (dl + dr));
            if (d2 > 1e-300) {
                double step = (s[k] - d1) / d2;
                step = std::clamp(step, -dl, dr);
                best = s[k] * (x[i0] + step) -
                       (f[i0] + d1 * step + 0.5 * d2 * step * step);
            }
        }
        out.value[k] = best;
        out.argmax[k] = i0;
    }
    return out;
}

std::vector<double> grid_nodes(int n, double lo, double hi) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

ConvexSample legendre_conjugate(const ConvexSample& u, int ns_x, int ns_y, double sx_min,
                                double sx_max, double sy_min, double sy_max, bool refine) {
    auto xs = grid_nodes(u.nx, u.x_min, u.x_max);
    auto ys = grid_nodes(u.ny, u.y_min, u.y_max);
    auto sxs = grid_nodes(ns_x, sx_min, sx_max);
    auto sys = grid_nodes(ns_y, sy_min, sy_max);

    // pass 1: conjugate in x2 for each x1-column -> v(x1, sy)
    std::vector<double> v(std::size_t(u.nx) * ns_y);
    std::vector<std::uint8_t> vok(std::size_t(u.nx) * ns_y, 0);
    parallel_for(u.nx, [&](int i) {
        std::vector<double> f(u.ny);
        std::vector<std::uint8_t> ok(u.ny);
        for (int j = 0; j < u.ny; ++j) {
            f[j] = u.at(i, j);
            ok[j] = u.valid[std::size_t(j) * u.nx + i];
        }
        Llt1D r = llt_1d(ys, f, ok, sys, refine);
        for (int k = 0; k < ns_y; ++k) {
            v[std::size_t(k) * u.nx + i] = r.value[k];
            vok[std::size_t(k) * u.nx + i] = (r.argmax[k] >= 0) ? 1 : 0;
        }
    });

    // pass 2: conjugate in x1 of -v for each sy-row
    ConvexSample out;
    out.nx = ns_x;
    out.ny = ns_y;
    out.x_min = sx_min;
    out.x_max = sx_max;
    out.y_min = sy_min;
    out.y_max = sy_max;
    out.values.resize(std::size_t(ns_x) * ns_y);
    out.valid.assign(std::size_t(ns_x) * ns_y, 0);
    parallel_for(ns_y, [&](int k) {
        std::vector<double> f(u.nx);
        std::vector<std::uint8_t> ok(u.nx);
        for (int i = 0; i < u.nx; ++i) {
            f[i] = -v[std::size_t(k) * u.nx + i];
            ok[i] = vok[std::size_t(k) * u.nx + i];
        }
        Llt1D r = llt_1d(xs, f, ok, sxs, refine);
        for (int m = 0; m < ns_x; ++m) {
            out.values[std::size_t(k) * ns_x + m] = r.value[m];
            out.valid[std::size_t(k) * ns_x + m] = (r.argmax[m] >= 0) ? 1 : 0;
        }
    });
    return out;
}

ConvexSample naive_conjugate(const ConvexSample& u, int ns_x, int ns_y, double sx_min,
                             double sx_max, double sy_min, double sy_max) {
    ConvexSample out;
    out.nx = ns_x;
    out.ny = ns_y;
    out.x_min = sx_min;
    out.x_max = sx_max;
    out.y_min = sy_min;
    out.y_max = sy_max;
    out.values.resize(std::size_t(ns_x) * ns_y);
    out.valid.assign(std::size_t(ns_x) * ns_y, 1);
    parallel_for(ns_y, [&](int k) {
        double sy = out.y(k);
        for (int m = 0; m < ns_x; ++m) {
            double sx = out.x(m);
            double best = -1e300;
            for (int j = 0; j < u.ny; ++j)
                for (int i = 0; i < u.nx; ++i)
                    if (u.is_valid(i, j))
                        best = std::max(best, sx * u.x(i) + sy * u.y(j) - u.at(i, j));
            out.values[std::size_t(k) * ns_x + m] = best;
        }
    });
    return out;
}

PeriodicGrid level_support_function(const ConvexSample& u, double l, int n_theta) {
    validate_grid_size(n_theta);
    std::vector<double> px, py;
    bool touches_boundary = false;
    for (int j = 0; j + 1 < u.ny; ++j) {
        for (int i = 0; i + 1 < u.nx; ++i) {
            if (!(u.is_valid(i, j) && u.is_valid(i + 1, j) && u.is_valid(i, j + 1) &&
                  u.is_valid(i + 1, j + 1)))
                continue;
            double c00 = u.at(i, j) - l, c10 = u.at(i + 1, j) - l;
            double c01 = u.at(i, j + 1) - l, c11 = u.at(i + 1, j + 1) - l;
            auto edge = [&](double a, double b, double xa, double ya, double xb, double yb) {
                if ((a < 0.0) == (b < 0.0) || a == b) return;
                double t = a / (a - b);
                px.push_back(xa + t * (xb - xa));
                py.push_back(ya + t * (yb - ya));
                if (i == 0 || j == 0 || i + 2 == u.nx || j + 2 == u.ny) touches_boundary = true;
            };
            edge(c00, c10, u.x(i), u.y(j), u.x(i + 1), u.y(j));
            edge(c00, c01, u.x(i), u.y(j), u.x(i), u.y(j + 1));
            edge(c10, c11, u.x(i + 1), u.y(j), u.x(i + 1), u.y(j + 1));
            edge(c01, c11, u.x(i), u.y(j + 1), u.x(i + 1), u.y(j + 1));
        }
    }
    if (px.empty()) throw validation_error("level set is empty on the sampled domain");
    if (touches_boundary)
        throw validation_error("level set touches the sampled boundary; enlarge the domain");

    PeriodicGrid S(n_theta);
    for (int k = 0; k < n_theta; ++k) {
        double c = std::cos(S.theta(k)), s = std::sin(S.theta(k));
        double best = -1e300;
        for (std::size_t q = 0; q < px.size(); ++q)
            best = std::max(best, c * px[q] + s * py[q]);
        S[k] = best;
    }
    return S;
}

namespace {

// Catmull-Rom in 1D through 4 consecutive samples, t in [0,1] between p1, p2.
double catmull_rom(double p0, double p1, double p2, double p3, double t) {
    double a = 2 * p1;
    double b = p2 - p0;
    double c = 2 * p0 - 5 * p1 + 4 * p2 - p3;
    double d = -p0 + 3 * p1 - 3 * p2 + p3;
    return 0.5 * (a + b * t + c * t * t + d * t * t * t);
}

}  // namespace

ConvexSample blow_down(const ConvexSample& u, double lambda, double kappa) {
    if (!(lambda > 0.0)) throw validation_error("blow_down needs lambda > 0");
    ConvexSample out = u;
    const double scale = std::pow(lambda, -kappa);
    int alive = 0;
    for (int j = 0; j < u.ny; ++j) {
        for (int i = 0; i < u.nx; ++i) {
            double X = lambda * u.x(i), Y = lambda * u.y(j);
            double fi = (X - u.x_min) / u.dx();
            double fj = (Y - u.y_min) / u.dy();
            int i0 = int(std::floor(fi)), j0 = int(std::floor(fj));
            double ti = fi - i0, tj = fj - j0;
            // snap to exact nodes (integer lambda on aligned grids)
            if (std::fabs(ti) < 1e-9 && std::fabs(tj) < 1e-9 && i0 >= 0 && i0 < u.nx &&
                j0 >= 0 && j0 < u.ny && u.is_valid(i0, j0)) {
                out.at(i, j) = scale * u.at(i0, j0);
                out.set_valid(i, j, true);
                ++alive;
                continue;
            }
            if (i0 < 1 || i0 + 2 >= u.nx || j0 < 1 || j0 + 2 >= u.ny) {
                out.set_valid(i, j, false);
                continue;
            }
            bool ok = true;
            for (int b = -1; b <= 2 && ok; ++b)
                for (int a = -1; a <= 2 && ok; ++a) ok = u.is_valid(i0 + a, j0 + b);
            if (!ok) {
                out.set_valid(i, j, false);
                continue;
            }
            double rows[4];
            for (int b = -1; b <= 2; ++b)
                rows[b + 1] = catmull_rom(u.at(i0 - 1, j0 + b), u.at(i0, j0 + b),
                                          u.at(i0 + 1, j0 + b), u.at(i0 + 2, j0 + b), ti);
            out.at(i, j) = scale * catmull_rom(rows[0], rows[1], rows[2], rows[3], tj);
            out.set_valid(i, j, true);
            ++alive;
        }
    }
    if (alive < 25) throw validation_error("blow_down exhausted the sampled domain");
    return out;
}

namespace {

struct HessianField {
    std::vector<double> xx, yy, xy;
    std::vector<std::uint8_t> ok;
    int margin = 0;
};

HessianField hessian(const ConvexSample& v, int fd_order) {
    if (fd_order != 2 && fd_order != 4)
        throw validation_error("finite-difference order must be 2 or 4");
    const int nx = v.nx, ny = v.ny;
    const double hx = v.dx(), hy = v.dy();
    const std::size_t n = std::size_t(nx) * ny;
    HessianField H;
    H.xx.assign(n, 0.0);
    H.yy.assign(n, 0.0);
    H.xy.assign(n, 0.0);
    H.ok.assign(n, 0);
    const int m = (fd_order == 2) ? 1 : 2;
    H.margin = 2 * m;  // the cross derivative takes two passes

    auto V = [&](int i, int j) { return v.at(i, j); };

    std::vector<double> dx1(n, 0.0);  // first pass for the cross term
    for (int j = 0; j < ny; ++j)
        for (int i = m; i < nx - m; ++i) {
            double d = (fd_order == 2)
                           ? (V(i + 1, j) - V(i - 1, j)) / (2 * hx)
                           : (V(i - 2, j) - 8 * V(i - 1, j) + 8 * V(i + 1, j) - V(i + 2, j)) /
                                 (12 * hx);
            dx1[std::size_t(j) * nx + i] = d;
        }

    for (int j = H.margin; j < ny - H.margin; ++j) {
        for (int i = H.margin; i < nx - H.margin; ++i) {
            bool ok = true;
            for (int b = -H.margin; b <= H.margin && ok; ++b)
                for (int a = -H.margin; a <= H.margin && ok; ++a)
                    ok = v.is_valid(i + a, j + b);
            if (!ok) continue;
            std::size_t id = std::size_t(j) * nx + i;
            if (fd_order == 2) {
                H.xx[id] = (V(i + 1, j) - 2 * V(i, j) + V(i - 1, j)) / (hx * hx);
                H.yy[id] = (V(i, j + 1) - 2 * V(i, j) + V(i, j - 1)) / (hy * hy);
                H.xy[id] = (dx1[id + nx] - dx1[id - nx]) / (2 * hy);
            } else {
                H.xx[id] = (-V(i + 2, j) + 16 * V(i + 1, j) - 30 * V(i, j) + 16 * V(i - 1, j) -
                            V(i - 2, j)) /
                           (12 * hx * hx);
                H.yy[id] = (-V(i, j + 2) + 16 * V(i, j + 1) - 30 * V(i, j) + 16 * V(i, j - 1) -
                            V(i, j - 2)) /
                           (12 * hy * hy);
                H.xy[id] = (dx1[id - 2 * std::size_t(nx)] - 8 * dx1[id - nx] + 8 * dx1[id + nx] -
                            dx1[id + 2 * std::size_t(nx)]) /
                           (12 * hy);
            }
            H.ok[id] = 1;
        }
    }
    return H;
}

}  // namespace

ResidualReport dual_equation_residual(const ConvexSample& v, double alpha, DualRhs rhs,
                                      int fd_order) {
    HessianField H = hessian(v, fd_order);
    const double cell = std::max(v.dx(), v.dy());
    ResidualReport rep;
    double sum_sq = 0.0;
    for (int j = 0; j < v.ny; ++j) {
        for (int i = 0; i < v.nx; ++i) {
            std::size_t id = std::size_t(j) * v.nx + i;
            if (!H.ok[id]) continue;
            double x = v.x(i), y = v.y(j);
            double r2 = x * x + y * y;
            if (r2 < 4.0 * cell * cell) continue;  // 2-cell origin mask
            double det = H.xx[id] * H.yy[id] - H.xy[id] * H.xy[id];
            double target = (rhs == DualRhs::Translator)
                                ? std::pow(1.0 + r2, 1.0 / (2.0 * alpha) - 2.0)
                                : std::pow(r2, 0.5 * (1.0 / alpha - 4.0));
            double rel = (det - target) / target;
            rep.sup = std::max(rep.sup, std::fabs(rel));
            sum_sq += rel * rel;
            ++rep.count;
        }
    }
    rep.l2 = rep.count ? std::sqrt(sum_sq / rep.count) : 0.0;
    return rep;
}

EntropyField entropy_J_field(const ConvexSample& v, double alpha, int fd_order,
                             double r_mask) {
    HessianField H = hessian(v, fd_order);
    const double cell = std::max(v.dx(), v.dy());
    const double r_min = std::max(r_mask, 2.0 * cell);

    EntropyField out;
    out.nx = v.nx;
    out.ny = v.ny;
    out.x_min = v.x_min;
    out.x_max = v.x_max;
    out.y_min = v.y_min;
    out.y_max = v.y_max;
    out.J.assign(std::size_t(v.nx) * v.ny, 0.0);
    out.valid.assign(std::size_t(v.nx) * v.ny, 0);
    out.j_min = 1e300;
    out.j_max = -1e300;
    double sum = 0.0;
    for (int j = 0; j < v.ny; ++j) {
        for (int i = 0; i < v.nx; ++i) {
            std::size_t id = std::size_t(j) * v.nx + i;
            if (!H.ok[id]) continue;
            double x = v.x(i), y = v.y(j);
            if (x * x + y * y < r_min * r_min) continue;
            double lap = H.xx[id] + H.yy[id];
            double radial = x * x * H.xx[id] + 2.0 * x * y * H.xy[id] + y * y * H.yy[id];
            if (!(radial > 0.0))
                throw solver_error("non-positive radial Hessian form x_i x_j v_ij at (" +
                                   std::to_string(x) + ", " + std::to_string(y) + ")");
            double J = lap * std::pow(radial, 4.0 * alpha - 1.0);
            out.J[id] = J;
            out.valid[id] = 1;
            out.j_min = std::min(out.j_min, J);
            out.j_max = std::max(out.j_max, J);
            sum += J;
            ++out.count;
        }
    }
    if (out.count == 0) throw validation_error("entropy field has no evaluable nodes");
    out.j_mean = sum / out.count;
    return out;
}

double entropy_J_closed_form(const FlowParams& params, int fold) {
    const double a = params.alpha;
    double c;
    if (fold == fold_round) {
        c = tangency_potential(params).c_inf;
    } else {
        c = dual_potential_for_fold(params, fold).c;  // validates existence
    }
    return c * (1.0 - 2.0 * a) * std::pow((1.0 - 2.0 * a) / (4.0 * a * a), 4.0 * a - 1.0);
}

double entropy_J_round_tangency_form(const FlowParams& params) {
    const double a = params.alpha;
    const double t = tangency_potential(params).t_inf;
    return t / (4.0 * a * a) *
           std::pow((1.0 - 2.0 * a) * t / (4.0 * a * a), 4.0 * a - 1.0);
}

}  // namespace soliton
