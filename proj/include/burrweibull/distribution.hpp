#ifndef BURRWEIBULL_DISTRIBUTION_HPP
#define BURRWEIBULL_DISTRIBUTION_HPP

#include <cfloat>
#include <cmath>
#include <sstream>
#include <variant>

#include "detail/math.hpp"
#include "errors.hpp"
#include "params.hpp"

// Burr III-Weibull distribution on x > 0. The survival function is the
// product of the component survivals,
//
//   S(x) = (1 - (1 + x^-c)^-k) * exp(-(x/lambda)^beta),
//
// the competing-risk composition of a Burr III and a Weibull lifetime.
// Everything here is evaluated in log space so that extreme abscissae
// (1e-300 .. 1e300) neither overflow nor lose the leading digits.

namespace bw {

namespace detail {

inline void require_finite_nonneg(double x) {
    if (!(std::isfinite(x) && x >= 0.0)) {
        std::ostringstream os;
        os << "x must be finite and nonnegative, got " << x;
        throw DomainError(os.str());
    }
}

inline void require_finite_positive(double x) {
    if (!(std::isfinite(x) && x > 0.0)) {
        std::ostringstream os;
        os << "x must be finite and positive, got " << x;
        throw DomainError(os.str());
    }
}

// log of the Burr III cdf (1 + x^-c)^-k, x > 0.
inline double log_burr_cdf(double x, double c, double k) {
    return -k * softplus(-c * std::log(x));
}

// (x/lambda)^beta, the Weibull cumulative hazard.
inline double weibull_chf(double x, double lambda, double beta) {
    return std::pow(x / lambda, beta);
}

} // namespace detail

// log S(x). Defined for x >= 0; log S(0) = 0.
inline double log_survival(const BwParams& p, double x) {
    detail::require_finite_nonneg(x);
    if (x == 0.0) return 0.0;
    const double lg = detail::log_burr_cdf(x, p.c, p.k);
    return detail::log1mexp(lg) - detail::weibull_chf(x, p.lambda, p.beta);
}

// Survival values below the smallest positive normal are flushed to exact
// zero; hazard() reports that case as a RangeError instead of dividing.
inline double survival(const BwParams& p, double x) {
    const double s = std::exp(log_survival(p, x));
    return s < DBL_MIN ? 0.0 : s;
}

inline double cdf(const BwParams& p, double x) {
    return -std::expm1(log_survival(p, x));
}

// log f(x) for x > 0. The density is the sum of a Burr III failure term and
// a Weibull failure term,
//
//   f(x) = e^{-(x/lambda)^beta} [ c k (1+x^-c)^{-k-1} x^{-c-1}
//          + (beta/lambda^beta) x^{beta-1} (1 - (1+x^-c)^-k) ],
//
// combined with logsumexp; never formed as log(pdf).
inline double log_pdf(const BwParams& p, double x) {
    detail::require_finite_positive(x);
    const double lx = std::log(x);
    const double sp = detail::softplus(-p.c * lx);
    const double log_a = std::log(p.c) + std::log(p.k) - (p.k + 1.0) * sp - (p.c + 1.0) * lx;
    const double log_b = std::log(p.beta) - p.beta * std::log(p.lambda) +
                         (p.beta - 1.0) * lx + detail::log1mexp(-p.k * sp);
    return -detail::weibull_chf(x, p.lambda, p.beta) + detail::logsumexp(log_a, log_b);
}

inline double pdf(const BwParams& p, double x) {
    return std::exp(log_pdf(p, x));
}

// f(x) / S(x). RangeError where the survival underflowed to zero.
inline double hazard(const BwParams& p, double x) {
    detail::require_finite_positive(x);
    const double ls = log_survival(p, x);
    if (std::exp(ls) < DBL_MIN) {
        std::ostringstream os;
        os << "survival underflows to zero at x = " << x << ", hazard is not representable";
        throw RangeError(os.str());
    }
    return std::exp(log_pdf(p, x) - ls);
}

// f(x) / F(x). RangeError where the cdf underflowed to zero.
inline double reversed_hazard(const BwParams& p, double x) {
    detail::require_finite_positive(x);
    const double f = cdf(p, x);
    if (f <= 0.0) {
        std::ostringstream os;
        os << "cdf vanishes at x = " << x << ", reversed hazard is not representable";
        throw RangeError(os.str());
    }
    return pdf(p, x) / f;
}

// Component distributions.

inline double submodel_cdf(const SubModelParams& sp, double x) {
    detail::require_finite_nonneg(x);
    return std::visit(
        [x](const auto& q) -> double {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, BurrParams>) {
                if (x == 0.0) return 0.0;
                return std::exp(detail::log_burr_cdf(x, q.c, q.k));
            } else {
                return -std::expm1(-detail::weibull_chf(x, q.lambda, q.beta));
            }
        },
        sp);
}

inline double submodel_log_pdf(const SubModelParams& sp, double x) {
    detail::require_finite_positive(x);
    return std::visit(
        [x](const auto& q) -> double {
            using T = std::decay_t<decltype(q)>;
            const double lx = std::log(x);
            if constexpr (std::is_same_v<T, BurrParams>) {
                return std::log(q.c) + std::log(q.k) - (q.c + 1.0) * lx -
                       (q.k + 1.0) * detail::softplus(-q.c * lx);
            } else {
                return std::log(q.beta) - q.beta * std::log(q.lambda) +
                       (q.beta - 1.0) * lx - detail::weibull_chf(x, q.lambda, q.beta);
            }
        },
        sp);
}

inline double submodel_pdf(const SubModelParams& sp, double x) {
    return std::exp(submodel_log_pdf(sp, x));
}

} // namespace bw

#endif
