#include "pforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pforge/geometry.hpp"

namespace pforge {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;
// log2(2/sqrt(3)) = 1 - log2(3)/2
const double kLog2TwoOverSqrt3 = 1.0 - 0.5 * std::log2(3.0);

double log2_1p(double x) { return std::log1p(x) / kLn2; }

// log2(2^a + 2^b)
double log2_add(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double m = std::max(a, b);
    return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

double log2_rho(std::int64_t n, double r) {
    return std::log2(2.0 * r + 0.5 * std::sqrt(static_cast<double>(n)));
}

double log2_ball(std::int64_t n) {
    return 0.5 * static_cast<double>(n) * std::log2(kPi) -
           std::lgamma(0.5 * static_cast<double>(n) + 1.0) / kLn2;
}

// Upper bound on log2 |U_k| for the shell at squared distance k: the
// containing-ball bound V (sqrt(k) + sqrt(n)/2)^n, improved by the
// 2 V k^{n/2} form when its hypothesis k >= n^4 holds.
double log2_shell_bound(std::int64_t n, double k, double log2_v) {
    const double nd = static_cast<double>(n);
    const double generic = log2_v + nd * std::log2(std::sqrt(k) + 0.5 * std::sqrt(nd));
    double best = generic;
    if (k >= nd * nd * nd * nd) {
        const double shortcut = 1.0 + log2_v + 0.5 * nd * std::log2(k);
        best = std::min(best, shortcut);
    }
    return best;
}

}  // namespace

FormulaParams FormulaParams::from(const PackingParams& p) {
    p.validate();
    return {p.n, static_cast<double>(p.r), static_cast<double>(p.s)};
}

FormulaParams FormulaParams::paper_curve(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("paper_curve: n must be >= 1");
    const double nd = static_cast<double>(n);
    return {n, 2.0 * nd * nd, 2.0 * nd * nd * nd * nd};
}

void FormulaParams::validate() const {
    if (n < 1) throw std::invalid_argument("formula params: n must be >= 1");
    if (!(r >= 1) || !std::isfinite(r))
        throw std::invalid_argument("formula params: r must be >= 1 and finite");
    if (!(s >= 1) || !std::isfinite(s))
        throw std::invalid_argument("formula params: s must be >= 1 and finite");
}

double minkowski_log2_density(const FormulaParams& p, bool s_plus_1) {
    p.validate();
    const double n = static_cast<double>(p.n);
    // s^n V r^n / ((s+2r)^n V rho^n) = 2^-n / ((1+2r/s)^n (1+sqrt(n)/4r)^n)
    double v = -n - n * log2_1p(2.0 * p.r / p.s) -
               n * log2_1p(0.5 * std::sqrt(n) / (2.0 * p.r));
    if (s_plus_1) v += n * log2_1p(1.0 / p.s);
    return v;
}

TUpperGeneric t_upper_generic_log2(const FormulaParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n);
    if (p.r < 0.5 * std::sqrt(n))
        throw std::domain_error("t_upper_generic: requires r >= sqrt(n)/2");

    const double log2_v = log2_ball(p.n);
    const double l2rho = log2_rho(p.n, p.r);
    const double rho = std::exp2(l2rho);
    const double four_rho_sq = 4.0 * rho * rho;

    // Shells with k < r^2/4: every point is within distance r/2, so the
    // fundamental-domain argument bounds their total count by
    // V (rho/2)^n, and each degree by V rho^n.
    const double k_split = std::ceil(p.r * p.r / 4.0);
    double first = -std::numeric_limits<double>::infinity();
    if (k_split >= 2.0)
        first = n * (l2rho - 1.0) + 2.0 * log2_v + n * l2rho;

    // Shells k_split .. 4r^2-1: degree <= n V rho^n (1 - delta_k^2)^{n/2}.
    const double k_hi = 4.0 * p.r * p.r - 1.0;
    const double deg_factor = std::log2(n) + log2_v + n * l2rho;
    auto term = [&](double k) {
        const double one_minus = 1.0 - k / four_rho_sq;
        return log2_shell_bound(p.n, k, log2_v) + deg_factor +
               0.5 * n * std::log2(one_minus);
    };

    TUpperGeneric result;
    const double n_terms = k_hi - k_split + 1.0;
    double second = -std::numeric_limits<double>::infinity();
    if (n_terms >= 1.0) {
        if (n_terms <= 4e6) {
            for (double k = k_split; k <= k_hi; k += 1.0)
                second = log2_add(second, term(k));
        } else {
            // Too many shells to sum: bound by count * max term.  The term
            // is unimodal in k, so a ternary search plus the endpoints
            // brackets the maximum.
            result.exact_shell_sum = false;
            double lo = k_split, hi = k_hi;
            for (int it = 0; it < 200; ++it) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                if (term(m1) < term(m2)) lo = m1;
                else hi = m2;
            }
            const double peak = std::max({term(lo), term(hi), term(k_split), term(k_hi)});
            second = std::log2(n_terms) + peak;
        }
    }

    result.log2_value = log2_add(first, second) - 1.0;  // halve: 2t <= ...
    return result;
}

double t_upper_paper_log2(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("t_upper_paper: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double l2rho = log2_rho(n, 2.0 * nd * nd);
    return nd * std::log2(std::sqrt(3.0) / 2.0) + std::log2(nd) +
           2.0 * log2_ball(n) + (2.0 * nd + 2.0) * l2rho;
}

std::optional<double> improved_density_log2(const FormulaParams& p, bool s_plus_1) {
    p.validate();
    const double n = static_cast<double>(p.n);
    const double rho = 2.0 * p.r + 0.5 * std::sqrt(n);
    const double bracket =
        kLog2TwoOverSqrt3 - std::log2(n * rho * rho) / n;
    if (!(bracket > 0)) return std::nullopt;
    return std::log2(n / 20.0) + minkowski_log2_density(p, s_plus_1) +
           std::log2(bracket);
}

double theorem1_constant() { return kLog2TwoOverSqrt3 / 20.0; }

double alpha_lower_trivial_log2(const FormulaParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n);
    return n * std::log2(p.s + 1.0) - log2_ball(p.n) - n * log2_rho(p.n, p.r);
}

AlphaJv alpha_lower_jv_log2(const FormulaParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n);
    const double rho = 2.0 * p.r + 0.5 * std::sqrt(n);
    const double bracket = 0.5 * (n * kLog2TwoOverSqrt3 - std::log2(n * rho * rho));
    AlphaJv result;
    if (bracket > 0) {
        result.formula_valid = true;
        result.log2_value = n * std::log2(p.s + 1.0) - std::log2(10.0) -
                            log2_ball(p.n) - n * log2_rho(p.n, p.r) +
                            std::log2(bracket);
        // Never report less than the trivial guarantee.
        result.log2_value = std::max(result.log2_value, alpha_lower_trivial_log2(p));
    } else {
        result.formula_valid = false;
        result.log2_value = alpha_lower_trivial_log2(p);
    }
    return result;
}

ComplexityEstimate complexity_estimate(const FormulaParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n);
    ComplexityEstimate est;
    est.log2_vertex_count = n * std::log2(p.s + 1.0);
    // d_av |E| + |V| with d <= V rho^n and |E| <= |V| d / 2.
    const double log2_d = log2_ball(p.n) + n * log2_rho(p.n, p.r);
    est.log2_work = log2_add(est.log2_vertex_count + 2.0 * log2_d - 1.0,
                             est.log2_vertex_count);
    est.gamma = p.n >= 2 ? est.log2_work / (n * std::log2(n))
                         : std::numeric_limits<double>::quiet_NaN();
    if (p.r == 2.0 * n * n && p.s == 2.0 * n * n * n * n) {
        // (64 pi e n^7)^n
        est.log2_paper_form = n * (6.0 + std::log2(kPi) +
                                   std::log2(std::numbers::e) + 7.0 * std::log2(n));
    }
    return est;
}

BoundReport make_bound_report(const FormulaParams& p) {
    p.validate();
    BoundReport report;
    report.params = p;
    report.d_upper = log2_ball(p.n) + static_cast<double>(p.n) * log2_rho(p.n, p.r);
    if (p.r >= 0.5 * std::sqrt(static_cast<double>(p.n)))
        report.t_upper_generic = t_upper_generic_log2(p);
    const double nd = static_cast<double>(p.n);
    if (p.r == 2.0 * nd * nd) report.t_upper_paper = t_upper_paper_log2(p.n);
    report.minkowski_density = minkowski_log2_density(p);
    report.minkowski_density_s_plus_1 = minkowski_log2_density(p, true);
    report.improved_density = improved_density_log2(p);
    report.improved_density_s_plus_1 = improved_density_log2(p, true);
    report.alpha_lower_trivial = alpha_lower_trivial_log2(p);
    report.alpha_lower_jv = alpha_lower_jv_log2(p);
    report.theorem1_constant = pforge::theorem1_constant();
    report.complexity = complexity_estimate(p);
    return report;
}

}  // namespace pforge
