#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pforge/bounds.hpp"
#include "pforge/geometry.hpp"
#include "pforge/lattice_graph.hpp"

using namespace pforge;

namespace {

// Direct-domain evaluation of the density guarantee, for cross-checking
// the log-domain path at small n.
double minkowski_direct(std::int64_t n, double r, double s, bool s_plus_1) {
    const double rho = 2.0 * r + 0.5 * std::sqrt(static_cast<double>(n));
    const double num = s_plus_1 ? s + 1.0 : s;
    double v = 1.0;
    for (std::int64_t i = 0; i < n; ++i) v *= num * r / ((s + 2.0 * r) * rho);
    return v;
}

}  // namespace

TEST_CASE("minkowski density: frozen cell and unfactored cross-check") {
    const FormulaParams p{2, 8.0, 128.0};
    const double got = minkowski_log2_density(p);
    CHECK(got == doctest::Approx(-2.46463003123).epsilon(1e-9));
    CHECK(got == doctest::Approx(std::log2(minkowski_direct(2, 8, 128, false)))
                     .epsilon(1e-12));
    // the (s+1)^n variant keeps the full vertex count and is never smaller
    CHECK(minkowski_log2_density(p, true) > got);
    CHECK(minkowski_log2_density(p, true) ==
          doctest::Approx(std::log2(minkowski_direct(2, 8, 128, true))).epsilon(1e-12));
}

TEST_CASE("minkowski density: both correction factors vanish for r/sqrt(n), s/r -> inf") {
    const double v = minkowski_log2_density({5, 1e6, 1e12});
    CHECK(std::abs(v + 5.0) < 1e-3);
}

TEST_CASE("minkowski density: approaches -n along the curve r=2n^2, s=2n^4") {
    double prev_gap = 1e9;
    for (std::int64_t n : {10, 30, 100, 300, 1000}) {
        const double gap =
            minkowski_log2_density(FormulaParams::paper_curve(n)) + static_cast<double>(n);
        CHECK(gap < 0);  // the guarantee sits just below 2^-n
        CHECK(std::abs(gap) < prev_gap);
        prev_gap = std::abs(gap);
    }
    CHECK(std::abs(minkowski_log2_density(FormulaParams::paper_curve(200)) + 200.0) ==
          doctest::Approx(0.027178051).epsilon(1e-6));
}

TEST_CASE("t_upper_generic: dominates the measured neighborhood edge count") {
    const auto h22 = build_neighborhood_graph({2, 2, 2});
    REQUIRE(h22.edge_count == 528);
    const auto bound = t_upper_generic_log2({2, 2.0, 2.0});
    CHECK(bound.exact_shell_sum);
    CHECK(bound.log2_value >= std::log2(528.0));

    const auto b11 = t_upper_generic_log2({1, 1.0, 2.0});
    CHECK(std::isfinite(b11.log2_value));  // t = 0, any finite bound dominates
}

TEST_CASE("t_upper_generic: direct-domain cross-check at n=2, r=2") {
    const std::int64_t n = 2, r = 2;
    const double rho = 2.0 * r + 0.5 * std::sqrt(2.0);
    const double v = unit_ball_volume(2);
    double direct = 0.0;  // 2t bound
    // k_split = ceil(r^2/4) = 1: no first-sum contribution
    for (std::int64_t k = 1; k <= 4 * r * r - 1; ++k) {
        const double delta_sq = static_cast<double>(k) / (4.0 * rho * rho);
        const double shell = v * std::pow(std::sqrt(static_cast<double>(k)) +
                                              0.5 * std::sqrt(2.0),
                                          2);
        direct += shell * 2.0 * v * rho * rho * (1.0 - delta_sq);
    }
    const auto got = t_upper_generic_log2({n, static_cast<double>(r), 2.0});
    CHECK(got.log2_value == doctest::Approx(std::log2(direct / 2.0)).epsilon(1e-9));
}

TEST_CASE("t_upper_generic: precondition r >= sqrt(n)/2") {
    CHECK_THROWS_AS(t_upper_generic_log2({5, 1.0, 2.0}), std::domain_error);
    CHECK_NOTHROW(t_upper_generic_log2({4, 1.0, 2.0}));
}

TEST_CASE("t_upper_generic: max-term path stays a valid bound") {
    // Huge r forces the count * max-term route; it must dominate the
    // exact-sum value computed at a smaller but still summable r.
    const auto big = t_upper_generic_log2({2, 3e3, 2.0});
    CHECK_FALSE(big.exact_shell_sum);
    CHECK(std::isfinite(big.log2_value));
    const auto exact_small = t_upper_generic_log2({2, 1.0e3, 2.0});
    CHECK(exact_small.exact_shell_sum);
    CHECK(big.log2_value > exact_small.log2_value);

    // On the r = 2n^2 curve the generic bound refines the closed paper
    // form step by step, so it can never exceed it.
    const auto curve = FormulaParams::paper_curve(300);
    const auto generic = t_upper_generic_log2(curve);
    CHECK_FALSE(generic.exact_shell_sum);
    CHECK(generic.log2_value <= t_upper_paper_log2(300) + 1e-6);
}

TEST_CASE("delta_k^2 (1 - delta_k^2) peaks at 3/16 on [0, 1/2]") {
    double best = 0;
    for (double d = 0.0; d <= 0.5 + 1e-12; d += 1e-4)
        best = std::max(best, d * d * (1.0 - d * d));
    CHECK(best <= 3.0 / 16.0 + 1e-9);
    CHECK(0.5 * 0.5 * (1 - 0.25) == doctest::Approx(3.0 / 16.0));
}

TEST_CASE("t_upper_paper: frozen n=2 value and finiteness") {
    CHECK(t_upper_paper_log2(2) == doctest::Approx(28.2622948447).epsilon(1e-9));
    for (std::int64_t n : {1, 2, 5, 10, 100, 1000, 10000}) {
        const double v = t_upper_paper_log2(n);
        CHECK(std::isfinite(v));
        CHECK(v > 0);
    }
    // at n=2 the closed form is cruder than the generic shell sum at r=8
    CHECK(t_upper_paper_log2(2) >= t_upper_generic_log2({2, 8.0, 2.0}).log2_value);
}

TEST_CASE("t = o(d^2): t_upper_paper falls ever further below 2 log2 d") {
    double prev = 1e18;
    for (std::int64_t n = 100; n <= 1000; n += 100) {
        const double diff =
            t_upper_paper_log2(n) -
            2.0 * log2_d_n_upper(static_cast<int>(n), 2.0 * n * n);
        CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("improved density: invalid bracket at desk scale") {
    CHECK_FALSE(improved_density_log2({10, 200.0, 20000.0}).has_value());
    CHECK_FALSE(improved_density_log2(FormulaParams::paper_curve(100)).has_value());
}

TEST_CASE("improved density: component identity when valid") {
    const auto p = FormulaParams::paper_curve(2000);
    const auto got = improved_density_log2(p);
    REQUIRE(got.has_value());
    const double n = 2000.0;
    const double rho = 2.0 * p.r + 0.5 * std::sqrt(n);
    const double bracket = (1.0 - 0.5 * std::log2(3.0)) - std::log2(n * rho * rho) / n;
    CHECK(*got == doctest::Approx(std::log2(n / 20.0) + minkowski_log2_density(p) +
                                  std::log2(bracket))
                      .epsilon(1e-12));
    CHECK(improved_density_log2(p, true) > *got);
}

TEST_CASE("theorem constant") {
    CHECK(std::abs(theorem1_constant() - 0.010375937481971095) < 1e-15);
    CHECK(theorem1_constant() > 0.0103);
    CHECK(theorem1_constant() < 0.0104);
    CHECK(20.0 * theorem1_constant() ==
          doctest::Approx(1.0 - 0.5 * std::log2(3.0)).epsilon(1e-15));
}

TEST_CASE("alpha lower bounds: trivial and jv forms") {
    const FormulaParams small{2, 1.0, 8.0};
    // (s+1)^n / (V rho^n), rho = 2 + sqrt(2)/2
    const double direct =
        81.0 / (unit_ball_volume(2) * std::pow(2.0 + std::sqrt(2.0) / 2.0, 2));
    CHECK(alpha_lower_trivial_log2(small) ==
          doctest::Approx(std::log2(direct)).epsilon(1e-12));

    const auto jv_small = alpha_lower_jv_log2(small);
    CHECK_FALSE(jv_small.formula_valid);  // bracket < 0 at this scale
    CHECK(jv_small.log2_value == doctest::Approx(alpha_lower_trivial_log2(small)));

    const auto big = FormulaParams::paper_curve(1000);
    const auto jv_big = alpha_lower_jv_log2(big);
    CHECK(jv_big.formula_valid);
    CHECK(jv_big.log2_value >= alpha_lower_trivial_log2(big));
}

TEST_CASE("complexity estimate: measured work never exceeds the prediction") {
    const auto g = build_graph({2, 1, 8});
    const auto est = complexity_estimate({2, 1.0, 8.0});
    CHECK(std::exp2(est.log2_vertex_count) == doctest::Approx(81.0).epsilon(1e-12));
    const double d_av = 2.0 * static_cast<double>(g.edge_count) /
                        static_cast<double>(g.vertex_count());
    const double measured = d_av * static_cast<double>(g.edge_count) +
                            static_cast<double>(g.vertex_count());
    CHECK(std::log2(measured) <= est.log2_work);
}

TEST_CASE("complexity estimate: gamma approaches 7 on the curve, 4.5 off it") {
    auto gamma_paper = [](std::int64_t n) {
        return complexity_estimate(FormulaParams::paper_curve(n)).gamma;
    };
    CHECK(gamma_paper(100000000) < gamma_paper(10000));
    CHECK(gamma_paper(100000000) > 7.0);
    // ratio - 7 decays like (5 + log2(2 pi e)) / log2 n
    CHECK(gamma_paper(100000000) < 7.4);

    auto gamma_45 = [](std::int64_t n) {
        const double nd = static_cast<double>(n);
        return complexity_estimate({n, std::pow(nd, 1.5), std::pow(nd, 2.5)}).gamma;
    };
    CHECK(gamma_45(100000000) < gamma_45(10000));
    CHECK(gamma_45(100000000) > 4.5);
    CHECK(gamma_45(100000000) < 4.8);

    const auto est = complexity_estimate(FormulaParams::paper_curve(1000));
    REQUIRE(est.log2_paper_form.has_value());
    // same n log2 n growth scale as the work estimate
    CHECK(*est.log2_paper_form ==
          doctest::Approx(1000.0 * (6.0 + std::log2(std::numbers::pi) +
                                    std::log2(std::numbers::e) + 7.0 * std::log2(1000.0))));
    CHECK_FALSE(complexity_estimate({2, 1.0, 8.0}).log2_paper_form.has_value());
}

TEST_CASE("bound report: assembles every field") {
    const auto rep = make_bound_report({2, 2.0, 8.0});
    CHECK(rep.d_upper == doctest::Approx(log2_d_n_upper(2, 2.0)).epsilon(1e-12));
    REQUIRE(rep.t_upper_generic.has_value());
    CHECK_FALSE(rep.t_upper_paper.has_value());  // r != 2n^2
    CHECK(rep.theorem1_constant == doctest::Approx(theorem1_constant()));
    CHECK_FALSE(rep.improved_density.has_value());

    const auto paper = make_bound_report(FormulaParams::paper_curve(2));
    CHECK(paper.t_upper_paper.has_value());

    const auto narrow = make_bound_report({9, 1.0, 8.0});
    CHECK_FALSE(narrow.t_upper_generic.has_value());  // r < sqrt(n)/2
}

TEST_CASE("formula params validation") {
    CHECK_THROWS_AS((FormulaParams{0, 1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((FormulaParams{2, 0.5, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((FormulaParams{2, 1.0, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(FormulaParams::paper_curve(0), std::invalid_argument);
    const auto p = FormulaParams::from(PackingParams{2, 1, 8});
    CHECK(p.n == 2);
    CHECK(p.r == 1.0);
    CHECK(p.s == 8.0);
}
