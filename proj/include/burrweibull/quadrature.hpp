#ifndef BURRWEIBULL_QUADRATURE_HPP
#define BURRWEIBULL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "errors.hpp"

// Adaptive Gauss-Kronrod quadrature. A 15-point rule scores each segment;
// the segment with the largest error estimate is bisected until the global
// estimate meets tolerance. Semi-infinite integrals are reduced to finite
// segments with a power substitution at the origin (tames x^(a-1) endpoint
// singularities) and a rational stretch for the tail.

namespace bw {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_segments = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int segments = 0;
};

namespace detail {

// Nodes and weights of the 15-point Kronrod rule and its embedded 7-point
// Gauss rule (QUADPACK dqk15 tables).
inline constexpr double gk15_xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk15_wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double result;
    double abserr;
};

template <typename F>
GkEstimate gk15(const F& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    const double fc = f(centr);
    double resg = fc * gk15_wg[3];
    double resk = fc * gk15_wgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 1; j <= 3; ++j) {
        const int jtw = 2 * j;
        const double absc = hlgth * gk15_xgk[jtw - 1];
        const double fval1 = f(centr - absc);
        const double fval2 = f(centr + absc);
        fv1[jtw - 1] = fval1;
        fv2[jtw - 1] = fval2;
        resg += gk15_wg[j - 1] * (fval1 + fval2);
        resk += gk15_wgk[jtw - 1] * (fval1 + fval2);
        resabs += gk15_wgk[jtw - 1] * (std::abs(fval1) + std::abs(fval2));
    }
    for (int j = 1; j <= 4; ++j) {
        const int jtwm1 = 2 * j - 1;
        const double absc = hlgth * gk15_xgk[jtwm1 - 1];
        const double fval1 = f(centr - absc);
        const double fval2 = f(centr + absc);
        fv1[jtwm1 - 1] = fval1;
        fv2[jtwm1 - 1] = fval2;
        resk += gk15_wgk[jtwm1 - 1] * (fval1 + fval2);
        resabs += gk15_wgk[jtwm1 - 1] * (std::abs(fval1) + std::abs(fval2));
    }
    const double reskh = 0.5 * resk;
    double resasc = gk15_wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += gk15_wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);

    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * epmach)) {
        abserr = std::max(epmach * 50.0 * resabs, abserr);
    }
    return {resk * hlgth, abserr};
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

} // namespace detail

// Integrate f over the finite interval [a, b], a <= b. Converges when the
// summed error estimate drops below max(abs_tol, rel_tol * |value|).
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    const QuadratureOptions& opts = {}) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Segment> heap;
    auto push = [&](double lo, double hi) {
        const auto est = detail::gk15(f, lo, hi);
        heap.push({lo, hi, est.result, est.abserr});
        return est;
    };
    const auto first = push(a, b);
    double total = first.result;
    double err = first.abserr;
    int segments = 1;
    while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
           segments < opts.max_segments) {
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            break;  // interval no longer splittable in double precision
        }
        heap.pop();
        const auto est_lo = push(worst.a, mid);
        const auto est_hi = push(mid, worst.b);
        total += est_lo.result + est_hi.result - worst.value;
        err += est_lo.abserr + est_hi.abserr - worst.error;
        ++segments;
    }
    // re-sum the surviving segments to shed roundoff from the running totals
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error_estimate = err;
    out.segments = segments;
    out.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    return out;
}

// Integrate g over (lower, infinity), lower >= 0. endpoint_exponent is the
// power a in g(x) ~ x^(a-1) as x -> 0+, and must be positive; it selects the
// substitution x = b * t^q that removes the endpoint singularity. g must
// decay to zero at infinity fast enough to be integrable (the tail segment
// uses the rational stretch x = b + w s/(1-s)).
//
// The effective support is located first by scanning x |g(x)| on a log-spaced
// grid, so sharply peaked integrands far from unit scale are still found.
template <typename F>
QuadratureResult integrate_positive_axis(const F& g, double endpoint_exponent,
                                         double lower = 0.0,
                                         const QuadratureOptions& opts = {}) {
    // locate the mass: m(x) = x * |g(x)| is the integrand against d(log x)
    const double e_min = lower > 0.0 ? std::log10(lower) : -300.0;
    double peak_x = 0.0, peak_m = 0.0;
    std::vector<std::pair<double, double>> scan;
    scan.reserve(1280);
    for (double e = e_min; e <= 300.0; e += 0.5) {
        const double x = std::pow(10.0, e);
        if (x <= lower) continue;
        const double gv = g(x);
        const double m = std::isfinite(gv) ? x * std::abs(gv) : 0.0;
        scan.emplace_back(x, m);
        if (m > peak_m) {
            peak_m = m;
            peak_x = x;
        }
    }
    QuadratureResult out;
    if (peak_m == 0.0) {
        out.converged = true;  // no detectable mass above `lower`
        return out;
    }
    const double cutoff = peak_m * 1e-16;
    double b_lo = lower > 0.0 ? lower : scan.front().first;
    double b_hi = scan.back().first;
    for (const auto& [x, m] : scan) {
        if (x >= peak_x) break;
        if (m < cutoff) b_lo = x;
    }
    for (auto it = scan.rbegin(); it != scan.rend(); ++it) {
        if (it->first <= peak_x) break;
        if (it->second < cutoff) b_hi = it->first;
    }
    b_lo = std::max(b_lo, lower);

    double total = 0.0, err = 0.0;
    int segments = 0;
    bool converged = true;
    auto accumulate = [&](const QuadratureResult& r) {
        total += r.value;
        err += r.error_estimate;
        segments += r.segments;
        converged = converged && r.converged;
    };

    if (lower == 0.0 && b_lo > 0.0) {
        // [0, b_lo] with x = b_lo t^q: integrand ~ t^(q a - 1) at t = 0
        const double q_real = std::max(1.0, std::ceil(2.0 / endpoint_exponent));
        const double q = std::min(q_real, 64.0);
        const double b = b_lo;
        auto h = [&g, b, q](double t) {
            if (t <= 0.0) return 0.0;
            const double x = b * std::pow(t, q);
            if (x <= 0.0) return 0.0;
            const double gv = g(x);
            return std::isfinite(gv) ? gv * b * q * std::pow(t, q - 1.0) : 0.0;
        };
        accumulate(integrate_adaptive(h, 0.0, 1.0, opts));
    }

    if (b_lo < peak_x) accumulate(integrate_adaptive(g, b_lo, peak_x, opts));
    if (peak_x < b_hi) accumulate(integrate_adaptive(g, peak_x, b_hi, opts));

    // [b_hi, infinity) with x = b_hi + w s/(1-s); nodes never touch s = 1
    const double w = b_hi;
    auto tail = [&g, b_hi, w](double s) {
        const double om = 1.0 - s;
        const double x = b_hi + w * s / om;
        const double gv = g(x);
        return std::isfinite(gv) ? gv * w / (om * om) : 0.0;
    };
    accumulate(integrate_adaptive(tail, 0.0, 1.0, opts));

    out.value = total;
    out.error_estimate = err;
    out.segments = segments;
    out.converged = converged;
    return out;
}

} // namespace bw

#endif
