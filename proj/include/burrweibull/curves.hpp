#ifndef BURRWEIBULL_CURVES_HPP
#define BURRWEIBULL_CURVES_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "errors.hpp"
#include "moments.hpp"
#include "params.hpp"

namespace bw {

struct CurveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

enum class CurveKind { pdf, cdf, survival, hazard, lorenz, bonferroni };

inline const char* curve_name(CurveKind k) {
    switch (k) {
        case CurveKind::pdf: return "pdf";
        case CurveKind::cdf: return "cdf";
        case CurveKind::survival: return "survival";
        case CurveKind::hazard: return "hazard";
        case CurveKind::lorenz: return "lorenz";
        default: return "bonferroni";
    }
}

inline CurveKind curve_kind_from_name(const std::string& name) {
    for (CurveKind k : {CurveKind::pdf, CurveKind::cdf, CurveKind::survival,
                        CurveKind::hazard, CurveKind::lorenz,
                        CurveKind::bonferroni}) {
        if (name == curve_name(k)) return k;
    }
    throw ParseError("unknown curve function: " + name);
}

// Locale-independent significant-digit formatting ('.' decimal always).
// Negative zero is printed as plain zero.
inline std::string format_value(double v, int sig_digits = 6) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, sig_digits);
    return std::string(buf, res.ptr);
}

inline void write_csv(const CurveTable& t, std::ostream& os,
                      int sig_digits = 6) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) os << ',';
        os << t.columns[j];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << format_value(row[j], sig_digits);
        }
        os << '\n';
    }
}

inline std::string to_csv(const CurveTable& t, int sig_digits = 6) {
    std::ostringstream os;
    write_csv(t, os, sig_digits);
    return os.str();
}

inline CurveTable parse_csv(std::istream& in) {
    CurveTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (line_no == 1) {
            while (std::getline(row, cell, ',')) t.columns.push_back(cell);
            if (t.columns.empty()) throw ParseError("empty CSV header");
            continue;
        }
        std::vector<double> vals;
        int column = 0;
        while (std::getline(row, cell, ',')) {
            ++column;
            const char* b = cell.data();
            const char* e = b + cell.size();
            double v = 0.0;
            auto res = std::from_chars(b, e, v);
            if (res.ec != std::errc{} || res.ptr != e)
                throw ParseError("malformed number '" + cell + "' at line " +
                                 std::to_string(line_no) + ", column " +
                                 std::to_string(column));
            vals.push_back(v);
        }
        if (vals.size() != t.columns.size())
            throw ParseError("row arity " + std::to_string(vals.size()) +
                             " does not match header arity " +
                             std::to_string(t.columns.size()) + " at line " +
                             std::to_string(line_no));
        t.rows.push_back(std::move(vals));
    }
    if (t.columns.empty()) throw ParseError("empty CSV document");
    return t;
}

namespace detail {

// Rethrows the evaluation error with the grid position appended, keeping
// the concrete error type.
template <typename Fn>
double eval_annotated(const Fn& fn, std::size_t index, double x) {
    auto annotate = [&](const char* what) {
        return std::string(what) + " (grid index " + std::to_string(index) +
               ", abscissa " + format_value(x, 17) + ")";
    };
    try {
        return fn();
    } catch (const DomainError& e) {
        throw DomainError(annotate(e.what()));
    } catch (const RangeError& e) {
        throw RangeError(annotate(e.what()));
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(annotate(e.what()));
    } catch (const IntegrationError& e) {
        throw IntegrationError(annotate(e.what()));
    }
}

}  // namespace detail

inline CurveTable emit_curves(const BwParams& p,
                              const std::vector<CurveKind>& which, double lo,
                              double hi, int n_points) {
    if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(hi))
        throw DomainError("curve grid requires 0 <= lo < hi");
    if (n_points < 2) throw DomainError("curve grid needs at least 2 points");
    if (which.empty()) throw DomainError("no curve functions requested");

    CurveTable t;
    t.columns.push_back("x");
    for (CurveKind k : which) t.columns.push_back(curve_name(k));

    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double x = (i == n_points - 1) ? hi : lo + step * i;
        std::vector<double> row{x};
        for (CurveKind k : which) {
            row.push_back(detail::eval_annotated(
                [&]() -> double {
                    switch (k) {
                        case CurveKind::pdf: return pdf(p, x);
                        case CurveKind::cdf: return cdf(p, x);
                        case CurveKind::survival: return survival(p, x);
                        case CurveKind::hazard: return hazard(p, x);
                        case CurveKind::lorenz: return lorenz(p, x);
                        default: return bonferroni(p, x);
                    }
                },
                static_cast<std::size_t>(i), x));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace bw

#endif  // BURRWEIBULL_CURVES_HPP
