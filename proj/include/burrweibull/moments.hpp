#ifndef BURRWEIBULL_MOMENTS_HPP
#define BURRWEIBULL_MOMENTS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "distribution.hpp"
#include "detail/math.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "quantile.hpp"

// Moments and derived measures. Quadrature over (0, inf) is the primary
// evaluator everywhere; the series expansion of the raw moments is exposed
// separately with truncation diagnostics because its beta-function arguments
// leave their validity window at a finite term index.

namespace bw {

struct MomentSummary {
    double raw_moments[6];
    double sd;
    double cv;
    double skewness;
    double kurtosis;
};

struct SeriesDiagnostics {
    int terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged = false;
    std::optional<int> validity_violated_at_term;
};

namespace detail {

// f(x) ~ C x^(min(ck,beta)-1) as x -> 0+; the quadrature substitution needs
// this exponent to tame the endpoint.
inline double density_origin_exponent(const BwParams& p) {
    return std::min(p.c * p.k, p.beta);
}

inline QuadratureResult require_converged(const QuadratureResult& r,
                                          const char* what) {
    if (!r.converged)
        throw IntegrationError(std::string(what) + ": quadrature did not converge");
    return r;
}

// E[X^r 1{X > t}] for integer r >= 0.
inline double upper_weighted_integral(const BwParams& p, int r, double t) {
    auto g = [&p, r](double x) {
        if (x <= 0.0) return 0.0;
        const double a = static_cast<double>(r) * std::log(x) + log_pdf(p, x);
        return std::isfinite(a) ? std::exp(a) : 0.0;
    };
    const double alpha = density_origin_exponent(p) + static_cast<double>(r);
    auto res = integrate_positive_axis(g, alpha, t);
    return require_converged(res, "weighted tail expectation").value;
}

// E[X 1{X <= q}] computed directly over [0, q]; avoids the cancellation in
// mean - T(q) when q is small.
inline double lower_partial_expectation(const BwParams& p, double q) {
    if (q <= 0.0) return 0.0;
    const double alpha = density_origin_exponent(p) + 1.0;
    const int m = static_cast<int>(
        std::min(64.0, std::max(1.0, std::ceil(2.0 / alpha))));
    auto h = [&p, q, m](double t) {
        if (t <= 0.0) return 0.0;
        const double x = q * std::pow(t, m);
        if (x <= 0.0) return 0.0;
        const double a = std::log(x) + log_pdf(p, x) + std::log(q * m) +
                         (m - 1) * std::log(t);
        return std::isfinite(a) ? std::exp(a) : 0.0;
    };
    auto res = integrate_adaptive(h, 0.0, 1.0);
    return require_converged(res, "lower partial expectation").value;
}

}  // namespace detail

inline double raw_moment(const BwParams& p, int r) {
    if (r < 0) throw DomainError("moment order must be nonnegative");
    if (r == 0) return 1.0;
    return detail::upper_weighted_integral(p, r, 0.0);
}

// Three-part series for E[X^r]: an alternating sum of beta terms from the
// Burr III factor, one gamma term from the Weibull factor, and an alternating
// correction sum. Each part stops at the first validity violation or when a
// term falls below 1e-14 of the running sum.
inline std::pair<double, SeriesDiagnostics> raw_moment_series(
    const BwParams& p, int r, int max_terms = 64) {
    if (r < 1) throw DomainError("series moment order must be >= 1");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
    const double c = p.c, k = p.k, lam = p.lambda, beta = p.beta;
    if (static_cast<double>(r) >= c)
        throw ValidityError("moment series requires r < c");

    SeriesDiagnostics diag;
    double last_mag = 0.0;
    bool truncated = false;

    double a_sum = 0.0;
    double log_fact = 0.0;
    for (int m = 0; m < max_terms; ++m) {
        const double b2 = 1.0 - (r + m * beta) / c;
        if (b2 <= 0.0) {
            diag.validity_violated_at_term = m;
            break;
        }
        const double a2 = k + (r + m * beta) / c;
        if (m > 0) log_fact += std::log(static_cast<double>(m));
        // Prefactor k, not ck: the substitution u = (1+x^-c)^-1 carries a 1/c
        // Jacobian that cancels one factor of c (check: the m=0, r->0 term
        // must reduce to the Burr III normalization k·B(k,1) = 1).
        const double mag = k * std::exp(detail::lbeta(a2, b2) -
                                        m * beta * std::log(lam) - log_fact);
        const double term = (m % 2 == 0) ? mag : -mag;
        a_sum += term;
        ++diag.terms_used;
        last_mag = std::abs(term);
        if (last_mag < 1e-14 * std::abs(a_sum)) break;
        if (m == max_terms - 1) truncated = true;
    }
    diag.last_term_magnitude = last_mag;

    const double b_part = std::pow(lam, r) * std::tgamma(r / beta + 1.0);
    ++diag.terms_used;

    double c_sum = 0.0;
    double c_last = 0.0;
    for (int t = 0; t < max_terms; ++t) {
        const double d = r + beta - c * t;
        if (d <= 0.0) break;
        const double log_binom =
            std::lgamma(k + t) - std::lgamma(t + 1.0) - std::lgamma(k);
        const double mag = std::exp(log_binom + (r - c * t) * std::log(lam) +
                                    std::lgamma(d / beta));
        const double term = (t % 2 == 0) ? mag : -mag;
        c_sum += term;
        ++diag.terms_used;
        c_last = std::abs(term);
        if (t > 0 && c_last < 1e-14 * std::abs(c_sum)) break;
        if (t == max_terms - 1) truncated = true;
    }
    diag.last_term_magnitude = std::max(diag.last_term_magnitude, c_last);

    diag.converged = !truncated && !diag.validity_violated_at_term &&
                     diag.last_term_magnitude <
                         1e-12 * std::max(1.0, std::abs(a_sum + b_part - c_sum));
    return {a_sum + b_part - c_sum, diag};
}

inline MomentSummary moment_summary(const BwParams& p) {
    MomentSummary s{};
    for (int r = 1; r <= 6; ++r) s.raw_moments[r - 1] = raw_moment(p, r);
    const double m1 = s.raw_moments[0], m2 = s.raw_moments[1];
    const double m3 = s.raw_moments[2], m4 = s.raw_moments[3];
    const double var = std::max(0.0, m2 - m1 * m1);
    s.sd = std::sqrt(var);
    s.cv = s.sd / m1;
    const double mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    const double mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    s.skewness = mu3 / (s.sd * s.sd * s.sd);
    s.kurtosis = mu4 / (var * var);
    return s;
}

inline double partial_expectation(const BwParams& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw DomainError("partial expectation threshold must be finite and >= 0");
    return detail::upper_weighted_integral(p, 1, t);
}

inline double mean_deviation_about_mean(const BwParams& p) {
    const double mu = raw_moment(p, 1);
    return 2.0 * mu * cdf(p, mu) - 2.0 * mu + 2.0 * partial_expectation(p, mu);
}

inline double mean_deviation_about_median(const BwParams& p) {
    const double mu = raw_moment(p, 1);
    const double med = median(p);
    return -mu + 2.0 * partial_expectation(p, med);
}

inline double lorenz(const BwParams& p, double prob) {
    if (!(prob >= 0.0 && prob <= 1.0))
        throw DomainError("Lorenz ordinate requires prob in [0,1]");
    if (prob == 0.0) return 0.0;
    if (prob == 1.0) return 1.0;
    const double mu = raw_moment(p, 1);
    const double q = quantile(p, prob);
    return detail::lower_partial_expectation(p, q) / mu;
}

inline double bonferroni(const BwParams& p, double prob) {
    if (!(prob > 0.0 && prob <= 1.0))
        throw DomainError("Bonferroni ordinate requires prob in (0,1]");
    if (prob == 1.0) return 1.0;
    const double mu = raw_moment(p, 1);
    const double q = quantile(p, prob);
    return detail::lower_partial_expectation(p, q) / (prob * mu);
}

inline double conditional_moment(const BwParams& p, int r, double t) {
    if (r < 1) throw DomainError("conditional moment order must be >= 1");
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("conditioning threshold must be finite and > 0");
    const double s = survival(p, t);
    if (s <= 0.0)
        throw RangeError("survival underflows to 0 at the conditioning threshold");
    return detail::upper_weighted_integral(p, r, t) / s;
}

inline double shannon_entropy(const BwParams& p) {
    auto g = [&p](double x) {
        if (x <= 0.0) return 0.0;
        const double lp = log_pdf(p, x);
        if (!std::isfinite(lp)) return 0.0;
        const double f = std::exp(lp);
        return f > 0.0 ? -lp * f : 0.0;
    };
    // f*ln f carries a logarithmic factor on top of x^(a-1); halving the
    // exponent keeps the substitution on the safe side.
    const double alpha = 0.5 * detail::density_origin_exponent(p);
    auto res = integrate_positive_axis(g, alpha);
    return detail::require_converged(res, "Shannon entropy").value;
}

inline double renyi_entropy(const BwParams& p, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("Renyi order must be positive and finite");
    if (v == 1.0) throw DomainError("Renyi order 1 is excluded; use the Shannon limit");
    const double af = detail::density_origin_exponent(p);
    const double alpha = 1.0 + v * (af - 1.0);
    if (alpha <= 0.0)
        throw IntegrationError("f^v is not integrable near the origin for this order");
    auto g = [&p, v](double x) {
        if (x <= 0.0) return 0.0;
        const double a = v * log_pdf(p, x);
        return std::isfinite(a) ? std::exp(a) : 0.0;
    };
    auto res = integrate_positive_axis(g, alpha);
    detail::require_converged(res, "Renyi entropy");
    if (!(res.value > 0.0))
        throw IntegrationError("Renyi entropy integral evaluated non-positive");
    return std::log(res.value) / (1.0 - v);
}

inline double order_statistic_pdf(const BwParams& p, int i, int m, double x) {
    if (m < 1 || i < 1 || i > m)
        throw DomainError("order statistic index requires 1 <= i <= m");
    detail::require_finite_positive(x);
    const double lf = log_pdf(p, x);
    const double log_comb =
        std::lgamma(m + 1.0) - std::lgamma(static_cast<double>(i)) -
        std::lgamma(static_cast<double>(m - i) + 1.0);
    double acc = log_comb + lf;
    if (i > 1) {
        const double F = cdf(p, x);
        if (F <= 0.0) return 0.0;
        acc += (i - 1) * std::log(F);
    }
    if (m - i > 0) acc += (m - i) * log_survival(p, x);
    const double val = std::exp(acc);
    return std::isfinite(val) ? val : 0.0;
}

inline double mgf(const BwParams& p, double t) {
    if (!std::isfinite(t)) throw DomainError("mgf argument must be finite");
    if ((p.beta < 1.0 && t > 0.0) || (p.beta == 1.0 && t >= 1.0 / p.lambda))
        throw DomainError("mgf diverges: exponential tilt dominates the Weibull tail");
    if (t == 0.0) return 1.0;
    auto g = [&p, t](double x) {
        if (x <= 0.0) return 0.0;
        const double a = t * x + log_pdf(p, x);
        return std::isfinite(a) ? std::exp(a) : 0.0;
    };
    auto res = integrate_positive_axis(g, detail::density_origin_exponent(p));
    return detail::require_converged(res, "moment generating function").value;
}

}  // namespace bw

#endif  // BURRWEIBULL_MOMENTS_HPP
