#ifndef BURRWEIBULL_PARAMS_HPP
#define BURRWEIBULL_PARAMS_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "errors.hpp"

namespace bw {

namespace detail {

inline void require_positive_finite(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
        std::ostringstream os;
        os << "parameter " << name << " must be positive and finite, got " << v;
        throw DomainError(os.str());
    }
}

} // namespace detail

// Parameters of the Burr III-Weibull distribution. c and k are the Burr III
// shapes, lambda and beta the Weibull scale and shape. All four are strictly
// positive; construction rejects zero, negatives, NaN and infinities.
struct BwParams {
    double c;
    double k;
    double lambda;
    double beta;

    BwParams(double c_, double k_, double lambda_, double beta_)
        : c(c_), k(k_), lambda(lambda_), beta(beta_) {
        detail::require_positive_finite(c, "c");
        detail::require_positive_finite(k, "k");
        detail::require_positive_finite(lambda, "lambda");
        detail::require_positive_finite(beta, "beta");
    }
};

// Burr III component: cdf (1 + x^-c)^-k on x > 0.
struct BurrParams {
    double c;
    double k;

    BurrParams(double c_, double k_) : c(c_), k(k_) {
        detail::require_positive_finite(c, "c");
        detail::require_positive_finite(k, "k");
    }
};

// Weibull component: cdf 1 - exp(-(x/lambda)^beta) on x >= 0.
struct WeibullParams {
    double lambda;
    double beta;

    WeibullParams(double lambda_, double beta_) : lambda(lambda_), beta(beta_) {
        detail::require_positive_finite(lambda, "lambda");
        detail::require_positive_finite(beta, "beta");
    }
};

using SubModelParams = std::variant<BurrParams, WeibullParams>;

inline BwParams validate_params(double c, double k, double lambda, double beta) {
    return BwParams(c, k, lambda, beta);
}

} // namespace bw

#endif
