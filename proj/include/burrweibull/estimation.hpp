#ifndef BURRWEIBULL_ESTIMATION_HPP
#define BURRWEIBULL_ESTIMATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "detail/math.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "optimize.hpp"
#include "params.hpp"
#include "random.hpp"

// Maximum-likelihood fitting for the composite distribution and its two
// component families, with analytic score vectors. Optimization runs in
// log-parameters so positivity needs no constraint handling.

namespace bw {

enum class ModelTag { BW, BurrIII, Weibull };

inline const char* model_name(ModelTag tag) {
    switch (tag) {
        case ModelTag::BW: return "BW";
        case ModelTag::BurrIII: return "BurrIII";
        default: return "Weibull";
    }
}

inline int model_param_count(ModelTag tag) { return tag == ModelTag::BW ? 4 : 2; }

struct FitOptions {
    int max_iterations = 2000;
    double tolerance = 1e-9;
    int multistart_count = 8;
    // Raw-space starting points; when set they replace the generated list.
    std::optional<std::vector<std::vector<double>>> starting_points;
};

struct InformationCriteria {
    double aic;
    double bic;
    double aicc;
};

struct FitResult {
    ModelTag model = ModelTag::BW;
    std::vector<double> params;  // (c,k,lambda,beta), (c,k), or (lambda,beta)
    double log_likelihood = -std::numeric_limits<double>::infinity();
    double aic = 0.0, bic = 0.0, aicc = 0.0;
    int n = 0;
    int iterations = 0;
    bool converged = false;
    double gradient_norm_at_solution = std::numeric_limits<double>::infinity();

    BwParams bw_params() const {
        if (model != ModelTag::BW)
            throw DomainError("fit result does not hold four-parameter estimates");
        return BwParams(params[0], params[1], params[2], params[3]);
    }
};

namespace detail {

// Accumulate in sorted order so the sum is invariant under permutations of
// the data, bit for bit.
inline double ordered_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

}  // namespace detail

inline double log_likelihood(const BwParams& p, const Dataset& data) {
    std::vector<double> terms;
    terms.reserve(data.values.size());
    for (double x : data.values) terms.push_back(log_pdf(p, x));
    return detail::ordered_sum(terms);
}

inline double log_likelihood(const SubModelParams& sp, const Dataset& data) {
    std::vector<double> terms;
    terms.reserve(data.values.size());
    for (double x : data.values) terms.push_back(submodel_log_pdf(sp, x));
    return detail::ordered_sum(terms);
}

// Gradient of the log-likelihood in the raw parameters (c, k, lambda, beta).
// Each observation's terms are weighted by the softmax split between the
// Burr-driven and Weibull-driven parts of the density.
inline std::array<double, 4> score(const BwParams& p, const Dataset& data) {
    const double c = p.c, k = p.k, lam = p.lambda, beta = p.beta;
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};
    for (double x : data.values) {
        detail::require_finite_positive(x);
        const double lx = std::log(x);
        const double z = -c * lx;
        const double sp = detail::softplus(z);
        const double sig = detail::logistic(z);
        const double logG = -k * sp;
        const double log1mG = detail::log1mexp(logG);
        const double lgA = std::log(c * k) - (k + 1.0) * sp - (c + 1.0) * lx;
        const double lgB =
            std::log(beta) - beta * std::log(lam) + (beta - 1.0) * lx + log1mG;
        const double hi = std::max(lgA, lgB);
        const double ea = std::exp(lgA - hi), eb = std::exp(lgB - hi);
        const double wA = ea / (ea + eb);
        const double wB = 1.0 - wA;
        const double W = std::pow(x / lam, beta);
        const double R = std::exp(z - (k + 1.0) * sp - log1mG);
        const double G_over_1mG = std::exp(logG - log1mG);
        const double lxl = std::log(x / lam);
        g[0] += wA * (1.0 / c - lx * (1.0 - (k + 1.0) * sig)) - wB * k * lx * R;
        g[1] += wA * (1.0 / k - sp) + wB * sp * G_over_1mG;
        g[2] += (beta / lam) * (W - wB);
        g[3] += -W * lxl + wB * (1.0 / beta + lxl);
    }
    return g;
}

inline InformationCriteria information_criteria(double logL, int p, int n) {
    if (n <= p + 1)
        throw DomainError("AICC undefined: need n > p + 1");
    InformationCriteria ic{};
    ic.aic = 2.0 * p - 2.0 * logL;
    ic.bic = p * std::log(static_cast<double>(n)) - 2.0 * logL;
    ic.aicc = ic.aic + 2.0 * p * (p + 1.0) / (n - p - 1.0);
    return ic;
}

namespace detail {

// Gradient of the per-model log-likelihood in raw space; submodel gradients
// are exact by the same softplus identities used for the composite.
inline std::vector<double> raw_score(ModelTag tag, const std::vector<double>& raw,
                                     const Dataset& data) {
    if (tag == ModelTag::BW) {
        auto g = score(BwParams(raw[0], raw[1], raw[2], raw[3]), data);
        return {g[0], g[1], g[2], g[3]};
    }
    if (tag == ModelTag::BurrIII) {
        const double c = raw[0], k = raw[1];
        double dc = 0.0, dk = 0.0;
        for (double x : data.values) {
            const double lx = std::log(x);
            const double sp = softplus(-c * lx);
            const double sig = logistic(-c * lx);
            dc += 1.0 / c - lx + (k + 1.0) * lx * sig;
            dk += 1.0 / k - sp;
        }
        return {dc, dk};
    }
    const double lam = raw[0], beta = raw[1];
    double dl = 0.0, db = 0.0;
    for (double x : data.values) {
        const double W = std::pow(x / lam, beta);
        const double lxl = std::log(x / lam);
        dl += (beta / lam) * (W - 1.0);
        db += 1.0 / beta + lxl * (1.0 - W);
    }
    return {dl, db};
}

inline double model_nll(ModelTag tag, const std::vector<double>& raw,
                        const Dataset& data) {
    double total = 0.0;
    for (double x : data.values) {
        double lp;
        switch (tag) {
            case ModelTag::BW:
                lp = log_pdf(BwParams(raw[0], raw[1], raw[2], raw[3]), x);
                break;
            case ModelTag::BurrIII:
                lp = submodel_log_pdf(BurrParams{raw[0], raw[1]}, x);
                break;
            default:
                lp = submodel_log_pdf(WeibullParams{raw[0], raw[1]}, x);
        }
        if (!std::isfinite(lp)) return std::numeric_limits<double>::infinity();
        total -= lp;
    }
    return total;
}

struct SingleFit {
    std::vector<double> raw;
    double logL = -std::numeric_limits<double>::infinity();
    double scaled_grad_norm = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// One simplex-then-BFGS run from a raw-space start; everything internal is
// in log-parameters.
inline SingleFit fit_single(ModelTag tag, const Dataset& data,
                            const std::vector<double>& start_raw,
                            const FitOptions& opts) {
    const std::size_t dim = start_raw.size();
    std::vector<double> theta0(dim);
    for (std::size_t i = 0; i < dim; ++i) theta0[i] = std::log(start_raw[i]);

    auto nll_theta = [&](const std::vector<double>& th) {
        std::vector<double> raw(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            raw[i] = std::exp(th[i]);
            if (!std::isfinite(raw[i]) || raw[i] <= 0.0)
                return std::numeric_limits<double>::infinity();
        }
        return model_nll(tag, raw, data);
    };
    auto grad_theta = [&](const std::vector<double>& th) {
        std::vector<double> raw(dim), g(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            raw[i] = std::exp(th[i]);
            if (!std::isfinite(raw[i]) || raw[i] <= 0.0) {
                std::fill(g.begin(), g.end(),
                          std::numeric_limits<double>::quiet_NaN());
                return g;
            }
        }
        auto gr = raw_score(tag, raw, data);
        for (std::size_t i = 0; i < dim; ++i) g[i] = -gr[i] * raw[i];
        return g;
    };

    auto nm = nelder_mead(nll_theta, theta0, opts.max_iterations,
                          std::max(opts.tolerance, 1e-10), 1e-12);
    // Polish budget scales with the simplex budget: exploratory fits with a
    // short simplex phase get a short polish instead of a full ridge walk.
    const int polish = std::clamp(opts.max_iterations / 3, 100, 300);
    auto qb = bfgs(nll_theta, grad_theta, nm.x, polish, 1e-8);
    const bool use_bfgs = qb.value <= nm.value && std::isfinite(qb.value);

    SingleFit out;
    const std::vector<double>& theta = use_bfgs ? qb.x : nm.x;
    const double fmin = use_bfgs ? qb.value : nm.value;
    out.iterations = nm.iterations + qb.iterations;
    out.raw.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out.raw[i] = std::exp(theta[i]);
    if (!std::isfinite(fmin)) return out;
    out.logL = -fmin;
    auto g = grad_theta(theta);
    double gn = 0.0;
    for (double gi : g) gn = std::max(gn, std::abs(gi));
    out.scaled_grad_norm = gn / std::max(1.0, std::abs(fmin));
    out.converged = std::isfinite(gn) && out.scaled_grad_norm < 1e-4;
    return out;
}

// Moment-matched heuristic start plus deterministic log-uniform spread.
inline std::vector<std::vector<double>> default_starts(ModelTag tag,
                                                       const Dataset& data,
                                                       int count) {
    double mean = 0.0;
    for (double x : data.values) mean += x;
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (double x : data.values) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(1, data.size() - 1);
    const double cv = std::sqrt(var) / mean;
    const double beta0 = std::min(50.0, std::max(0.05, 1.2 / std::max(cv, 0.02)));

    std::vector<double> heuristic;
    switch (tag) {
        case ModelTag::BW: heuristic = {1.0, 1.0, mean, beta0}; break;
        case ModelTag::BurrIII: heuristic = {1.0, 1.0}; break;
        default: heuristic = {mean, beta0};
    }
    std::vector<std::vector<double>> starts{heuristic};
    CounterRng rng(SeededStream{0x9bd1f0c5u, 0x5747u});
    std::uint64_t idx = 0;
    while (static_cast<int>(starts.size()) < count) {
        std::vector<double> s = heuristic;
        for (double& v : s) {
            const double u = rng.uniform_at(idx++);
            v *= std::pow(10.0, 2.0 * u - 1.0);
        }
        starts.push_back(std::move(s));
    }
    return starts;
}

inline std::string format_raw(const std::vector<double>& raw) {
    std::ostringstream os;
    os.precision(9);
    for (std::size_t i = 0; i < raw.size(); ++i)
        os << (i ? ", " : "(") << raw[i];
    os << ")";
    return os.str();
}

}  // namespace detail

inline FitResult fit_mle(const Dataset& data, ModelTag tag,
                         const FitOptions& opts = {}) {
    const int p = model_param_count(tag);
    const int n = static_cast<int>(data.size());
    if (n < p + 2)
        throw DomainError("need at least p + 2 observations to fit and score");
    if (opts.multistart_count < 1)
        throw DomainError("multistart_count must be >= 1");

    auto starts = opts.starting_points
                      ? *opts.starting_points
                      : detail::default_starts(tag, data, opts.multistart_count);
    for (const auto& s : starts) {
        if (static_cast<int>(s.size()) != p)
            throw DomainError("starting point arity does not match model");
        for (double v : s)
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError("starting points must be positive and finite");
    }

    std::optional<detail::SingleFit> best;       // best converged run
    std::optional<detail::SingleFit> best_any;   // best regardless, for reporting
    for (const auto& s : starts) {
        auto run = detail::fit_single(tag, data, s, opts);
        if (!best_any || run.logL > best_any->logL) best_any = run;
        if (run.converged) {
            if (!best || run.logL > best->logL + 1e-8 ||
                (std::abs(run.logL - best->logL) <= 1e-8 &&
                 run.scaled_grad_norm < best->scaled_grad_norm)) {
                best = run;
            }
        }
    }
    if (!best) {
        std::string where = best_any ? detail::format_raw(best_any->raw) : "(none)";
        double ll = best_any ? best_any->logL
                             : -std::numeric_limits<double>::infinity();
        throw ConvergenceError(
            "no start converged; best-found point " + where +
            " with log-likelihood " + std::to_string(ll));
    }

    FitResult r;
    r.model = tag;
    r.params = best->raw;
    r.log_likelihood = best->logL;
    r.n = n;
    r.iterations = best->iterations;
    r.converged = true;
    r.gradient_norm_at_solution = best->scaled_grad_norm;
    auto ic = information_criteria(r.log_likelihood, p, n);
    r.aic = ic.aic;
    r.bic = ic.bic;
    r.aicc = ic.aicc;
    return r;
}

struct ModelComparison {
    // Successful fits ordered by AIC ascending.
    std::vector<FitResult> fits;
    // (model name, error message) for fits that failed.
    std::vector<std::pair<std::string, std::string>> failures;
};

inline ModelComparison compare_models(const Dataset& data,
                                      const FitOptions& opts = {}) {
    if (data.values.empty()) throw DomainError("empty dataset");
    ModelComparison cmp;
    for (ModelTag tag : {ModelTag::BW, ModelTag::BurrIII, ModelTag::Weibull}) {
        try {
            cmp.fits.push_back(fit_mle(data, tag, opts));
        } catch (const Error& e) {
            cmp.failures.emplace_back(model_name(tag), e.what());
        }
    }
    std::stable_sort(cmp.fits.begin(), cmp.fits.end(),
                     [](const FitResult& a, const FitResult& b) {
                         return a.aic < b.aic;
                     });
    return cmp;
}

}  // namespace bw

#endif  // BURRWEIBULL_ESTIMATION_HPP
