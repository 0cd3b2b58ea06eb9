#ifndef BURRWEIBULL_QUANTILE_HPP
#define BURRWEIBULL_QUANTILE_HPP

#include <cmath>
#include <limits>
#include <sstream>

#include "distribution.hpp"
#include "errors.hpp"
#include "params.hpp"

// Quantile evaluation by safeguarded root finding. The cdf has no closed
// inverse; the solver brackets the root and polishes it with Brent's method.

namespace bw {

struct QuantileSolveReport {
    double x = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

namespace detail {

// Residual whose root is the u-quantile. The plain cdf residual loses all
// precision when u is within an ulp of 1, so the log-survival form takes
// over there; both are increasing in x and negative below the root.
class QuantileResidual {
public:
    QuantileResidual(const BwParams& p, double u)
        : p_(p), u_(u), log_form_(u > 1.0 - 1e-8) {
        if (log_form_) target_log_sf_ = std::log1p(-u);
    }

    double operator()(double x) const {
        if (log_form_) return target_log_sf_ - log_survival(p_, x);
        return cdf(p_, x) - u_;
    }

private:
    BwParams p_;
    double u_;
    bool log_form_;
    double target_log_sf_ = 0.0;
};

} // namespace detail

// Smallest x with cdf(p, x) >= u, for u in [0, 1). The result satisfies
// |cdf(p, x) - u| <= 1e-10.
inline QuantileSolveReport solve_quantile(const BwParams& p, double u) {
    if (!(std::isfinite(u) && u >= 0.0 && u < 1.0)) {
        std::ostringstream os;
        os << "quantile level must lie in [0, 1), got " << u;
        throw DomainError(os.str());
    }
    QuantileSolveReport rep;
    if (u == 0.0) {
        return rep;
    }

    const detail::QuantileResidual res(p, u);

    // The Weibull factor alone gives cdf_W <= cdf, so the pure Weibull
    // quantile lands at or above the BW quantile: an upper anchor.
    double hi = p.lambda * std::pow(-std::log1p(-u), 1.0 / p.beta);
    double f_hi = res(hi);
    int expansions = 0;
    while (f_hi < 0.0) {
        hi *= 2.0;
        f_hi = res(hi);
        if (++expansions > 200) {
            throw ConvergenceError("quantile bracket expansion exhausted 200 doublings");
        }
    }
    double lo = hi;
    double f_lo = f_hi;
    int halvings = 0;
    while (f_lo > 0.0) {
        lo *= 0.5;
        f_lo = res(lo);
        if (++halvings > 200) {
            throw ConvergenceError("quantile bracket halving exhausted 200 steps");
        }
    }
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;
    rep.iterations = expansions + halvings;

    if (f_lo == 0.0) {
        rep.x = lo;
        return rep;
    }
    if (f_hi == 0.0) {
        rep.x = hi;
        rep.residual = 0.0;
        return rep;
    }

    // Brent: inverse quadratic / secant with a bisection safeguard.
    double a = lo, b = hi, fa = f_lo, fb = f_hi;
    double c = a, fc = fa, d = b - a, e = d;
    constexpr double res_tol = 1e-10;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        // The absolute term must shrink with the root: quantiles can sit at
        // 1e-10 or below where the cdf slope is ~1e6, and a fixed 1e-12 floor
        // would stop the solver with a residual far above res_tol.
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5e-12 * std::min(std::abs(b), 1.0);
        const double xm = 0.5 * (c - b);
        ++rep.iterations;
        if (std::abs(fb) <= res_tol || std::abs(xm) <= tol1) {
            rep.x = b;
            rep.residual = fb;
            return rep;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double pq, qq;
            if (a == c) {
                pq = 2.0 * xm * s;
                qq = 1.0 - s;
            } else {
                const double q = fa / fc;
                const double r = fb / fc;
                pq = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) qq = -qq;
            pq = std::abs(pq);
            if (2.0 * pq < std::min(3.0 * xm * qq - std::abs(tol1 * qq), std::abs(e * qq))) {
                e = d;
                d = pq / qq;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = res(b);
    }
    throw ConvergenceError("quantile root polish exceeded its iteration budget");
}

inline double quantile(const BwParams& p, double u) {
    return solve_quantile(p, u).x;
}

inline double median(const BwParams& p) {
    return quantile(p, 0.5);
}

} // namespace bw

#endif
