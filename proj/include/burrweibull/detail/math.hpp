#ifndef BURRWEIBULL_DETAIL_MATH_HPP
#define BURRWEIBULL_DETAIL_MATH_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace bw::detail {

// log(1 + exp(z)) without overflow for large |z|.
inline double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// 1 / (1 + exp(-z)).
inline double logistic(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 - exp(la)) for la < 0. Splits at -log 2 to keep full precision on
// both ends (Maechler's recipe).
inline double log1mexp(double la) {
    constexpr double ln2 = 0.6931471805599453;
    if (la >= 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (la > -ln2) {
        return std::log(-std::expm1(la));
    }
    return std::log1p(-std::exp(la));
}

// log(exp(a) + exp(b)) without overflow; tolerates -inf arguments.
inline double logsumexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// log of the beta function B(a, b), arguments positive.
inline double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// log of the generalized binomial coefficient C(a, j) for real a > 0 and
// integer j >= 0, valid while a - j + 1 > 0.
inline double lchoose(double a, int j) {
    if (j == 0) return 0.0;
    return std::lgamma(a + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(a - static_cast<double>(j) + 1.0);
}

} // namespace bw::detail

#endif
