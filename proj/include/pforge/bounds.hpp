#pragma once

#include <cstdint>
#include <optional>

#include "pforge/params.hpp"

namespace pforge {

// Real-valued parameters for formula evaluation.  Decoupled from the
// integer PackingParams so the asymptotic curves (r = 2n^2, s = 2n^4)
// stay evaluable at dimensions where the integers no longer fit.
struct FormulaParams {
    std::int64_t n = 1;
    double r = 1;
    double s = 2;

    static FormulaParams from(const PackingParams& p);
    static FormulaParams paper_curve(std::int64_t n);  // r = 2n^2, s = 2n^4

    void validate() const;  // throws std::invalid_argument
};

// log2 of the guaranteed packing density from a maximal independent set:
//   s^n V r^n / ((s+2r)^n V rho^n) = 1 / (2^n (1+2r/s)^n (1+sqrt(n)/4r)^n).
// With s_plus_1 the numerator keeps the exact vertex count (s+1)^n instead
// of the weaker s^n.
double minkowski_log2_density(const FormulaParams& p, bool s_plus_1 = false);

struct TUpperGeneric {
    double log2_value = 0;
    // True when the shell sum was accumulated term by term; false when the
    // term count was too large and a max-term bound was used instead.
    bool exact_shell_sum = true;
};

// Upper bound on the neighborhood edge count t = |E(H)| valid at any
// parameters with r >= sqrt(n)/2:
//   2t <= (1/2)^n V^2 rho^{2n}
//         + n V rho^n * sum_k U_bound(k) (1 - delta_k^2)^{n/2}
// over shells k = ceil(r^2/4) .. 4r^2-1, delta_k = sqrt(k)/(2 rho), with
// U_bound(k) the smaller of V (sqrt(k) + sqrt(n)/2)^n and, when k >= n^4,
// 2 V k^{n/2}.  Throws std::domain_error when r < sqrt(n)/2.
TUpperGeneric t_upper_generic_log2(const FormulaParams& p);

// Closed-form bound at r = 2n^2:  t <= (sqrt(3)/2)^n n V^2 rho^{2n+2}.
double t_upper_paper_log2(std::int64_t n);

// log2 of the improved density guarantee
//   (n/20) (s/(s+2r))^n (r/rho)^n (log2(2/sqrt 3) - log2(n rho^2)/n);
// nullopt when the bracketed factor is <= 0 (the regime where the
// improvement has not kicked in yet).
std::optional<double> improved_density_log2(const FormulaParams& p,
                                            bool s_plus_1 = false);

// log2(2/sqrt(3)) / 20 = 0.0103759...
double theorem1_constant();

// log2 of the trivial independence guarantee (s+1)^n / (V rho^n).
double alpha_lower_trivial_log2(const FormulaParams& p);

struct AlphaJv {
    double log2_value = 0;
    // False when the bracket was <= 0 and the value fell back to the
    // trivial guarantee.
    bool formula_valid = true;
};

// log2 of the neighborhood-sparsity independence guarantee
//   ((s+1)^n / (10 V rho^n)) * (n log2(2/sqrt 3)/2 - log2(n rho^2)/2),
// floored by the trivial guarantee.
AlphaJv alpha_lower_jv_log2(const FormulaParams& p);

struct ComplexityEstimate {
    double log2_vertex_count = 0;  // n log2(s+1)
    // d_av |E| + |V| with the volume bound V rho^n for the degree.
    double log2_work = 0;
    // log2_work / (n log2 n); NaN for n < 2.
    double gamma = 0;
    // n log2(64 pi e n^7), filled only on the r = 2n^2, s = 2n^4 curve.
    std::optional<double> log2_paper_form;
};

ComplexityEstimate complexity_estimate(const FormulaParams& p);

// Every quantity the formula layer computes for one parameter set, side by
// side.  All magnitudes are log2 values; optional fields are absent when
// their precondition fails (see each operation).
struct BoundReport {
    FormulaParams params;
    double d_upper = 0;
    std::optional<TUpperGeneric> t_upper_generic;  // absent if r < sqrt(n)/2
    std::optional<double> t_upper_paper;           // absent unless r == 2n^2
    double minkowski_density = 0;
    double minkowski_density_s_plus_1 = 0;
    std::optional<double> improved_density;
    std::optional<double> improved_density_s_plus_1;
    double alpha_lower_trivial = 0;
    AlphaJv alpha_lower_jv;
    double theorem1_constant = 0;
    ComplexityEstimate complexity;
};

BoundReport make_bound_report(const FormulaParams& p);

}  // namespace pforge
