#ifndef BURRWEIBULL_OPTIMIZE_HPP
#define BURRWEIBULL_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

// Unconstrained minimizers for the fitting layer: a deterministic
// Nelder-Mead simplex search followed by a BFGS polish with backtracking
// line search. Dimensions here are 2 or 4, so dense matrix work is cheap.

namespace bw::detail {

struct MinimizeResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

// Non-finite objective values rank as +inf so the simplex retreats from
// invalid regions instead of propagating NaN.
inline double sanitize(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

template <typename F>
MinimizeResult nelder_mead(const F& f, const std::vector<double>& x0,
                           int max_iter = 2000, double x_tol = 1e-9,
                           double f_tol = 1e-12) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x0[i] != 0.0)
            simplex[i + 1][i] *= 1.05;
        else
            simplex[i + 1][i] = 0.00025;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = sanitize(f(simplex[i]));

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[order[i]];
            f2[i] = fv[order[i]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    sort_simplex();

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        double x_spread = 0.0, f_spread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                x_spread = std::max(x_spread, std::abs(simplex[i][j] - simplex[0][j]));
            f_spread = std::max(f_spread, std::abs(fv[i] - fv[0]));
        }
        if (x_spread <= x_tol && f_spread <= f_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& cj : centroid) cj /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (centroid[j] - simplex[n][j]);
            return p;
        };

        auto xr = blend(1.0);
        const double fr = sanitize(f(xr));
        if (fr < fv[0]) {
            auto xe = blend(2.0);
            const double fe = sanitize(f(xe));
            if (fe < fr) {
                simplex[n] = std::move(xe);
                fv[n] = fe;
            } else {
                simplex[n] = std::move(xr);
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = std::move(xr);
            fv[n] = fr;
        } else {
            const bool outside = fr < fv[n];
            auto xc = blend(outside ? 0.5 : -0.5);
            const double fc = sanitize(f(xc));
            if (fc < (outside ? fr : fv[n])) {
                simplex[n] = std::move(xc);
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    fv[i] = sanitize(f(simplex[i]));
                }
            }
        }
        sort_simplex();
    }
    return {simplex[0], fv[0], iter};
}

// BFGS on the inverse Hessian with Armijo backtracking. `g` must return the
// gradient; non-finite trial points are rejected by the line search.
template <typename F, typename G>
MinimizeResult bfgs(const F& f, const G& g, const std::vector<double>& x0,
                    int max_iter = 300, double grad_tol = 1e-8) {
    const std::size_t n = x0.size();
    std::vector<double> x = x0;
    double fx = sanitize(f(x));
    if (!std::isfinite(fx)) return {x, fx, 0};
    std::vector<double> grad = g(x);
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;

    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double vi : v) m = std::max(m, std::abs(vi));
        return m;
    };
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(),
                           [](double vi) { return std::isfinite(vi); });
    };
    if (!finite(grad)) return {x, fx, 0};

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (inf_norm(grad) <= grad_tol * std::max(1.0, std::abs(fx))) break;

        std::vector<double> d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i] -= H[i][j] * grad[j];
        }
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += d[i] * grad[i];
        if (!(slope < 0.0)) {
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                d[i] = -grad[i];
            }
            slope = 0.0;
            for (std::size_t i = 0; i < n; ++i) slope -= grad[i] * grad[i];
            if (!(slope < 0.0)) break;
        }

        double step = 1.0;
        std::vector<double> x_new(n);
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
            f_new = sanitize(f(x_new));
            if (f_new <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> grad_new = g(x_new);
        if (!finite(grad_new)) {
            x = x_new;
            fx = f_new;
            ++iter;
            break;
        }

        std::vector<double> s(n), y(n);
        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = grad_new[i] - grad[i];
            sy += s[i] * y[i];
            ss += s[i] * s[i];
            yy += y[i] * y[i];
        }
        if (sy > 1e-10 * std::sqrt(ss * yy)) {
            const double rho = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i][j] * y[j];
            }
            double yHy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yHy += y[i] * Hy[i];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i][j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                               rho * (Hy[i] * s[j] + s[i] * Hy[j]);
                }
            }
        }
        x = std::move(x_new);
        fx = f_new;
        grad = std::move(grad_new);
    }
    return {x, fx, iter};
}

}  // namespace bw::detail

#endif  // BURRWEIBULL_OPTIMIZE_HPP
