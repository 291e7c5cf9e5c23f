#include "pforge/geometry.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// Adaptive Simpson on a smooth integrand.
double simpson_step(const auto& f, double a, double b, double fa, double fm,
                    double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

// rel_eps is scaled by the initial estimate; for monotone integrands the
// estimate is within a constant factor of the integral, so the result
// carries relative, not absolute, accuracy.
double adaptive_simpson(const auto& f, double a, double b, double rel_eps) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = std::max(rel_eps * std::abs(whole), 1e-300);
    return simpson_step(f, a, b, fa, fm, fb, whole, eps, 48);
}

}  // namespace

CapGeometry CapGeometry::make(int n, double rho, double delta) {
    if (n < 2) throw std::domain_error("CapGeometry: dimension must be >= 2");
    if (!(rho > 0) || !std::isfinite(rho))
        throw std::domain_error("CapGeometry: rho must be positive and finite");
    if (!(delta > 0) || !(delta < 1))
        throw std::domain_error("CapGeometry: delta must lie in (0, 1)");
    return CapGeometry{n, rho, delta, std::acos(delta)};
}

double unit_ball_volume(int n) {
    if (n < 0) throw std::domain_error("unit_ball_volume: n must be >= 0");
    return std::exp2(log2_unit_ball_volume(n));
}

double log2_unit_ball_volume(int n) {
    if (n < 0) throw std::domain_error("log2_unit_ball_volume: n must be >= 0");
    // log2( pi^(n/2) / Gamma(n/2 + 1) )
    return 0.5 * n * std::log2(kPi) - std::lgamma(0.5 * n + 1.0) / kLn2;
}

double sector_integral(int n, double theta) {
    if (n < 2) throw std::domain_error("sector_integral: n must be >= 2");
    if (!(theta >= 0) || !(theta <= kPi / 2 + 1e-15))
        throw std::domain_error("sector_integral: theta must lie in [0, pi/2]");
    theta = std::min(theta, kPi / 2);
    if (theta == 0) return 0.0;

    const int m = n - 2;
    if (n <= 64) {
        auto f = [m](double phi) { return std::pow(std::sin(phi), m); };
        return adaptive_simpson(f, 0.0, theta, 1e-12);
    }
    // int_0^theta sin^m = (1/2) B(sin^2 theta; (m+1)/2, 1/2)
    const double x = std::sin(theta) * std::sin(theta);
    return 0.5 * boost::math::beta((m + 1) / 2.0, 0.5, x);
}

double intersection_volume_exact(const CapGeometry& g) {
    const double vnm1 = unit_ball_volume(g.n - 1);
    const double sector = sector_integral(g.n, g.theta);
    const double cone = g.delta * std::pow(std::sin(g.theta), g.n - 1);
    return 2.0 * std::pow(g.rho, g.n) * vnm1 / g.n * ((g.n - 1) * sector - cone);
}

double intersection_volume_cylinder_bound(const CapGeometry& g) {
    // Cylinder of height 2 rho (1 - delta) over an (n-1)-ball of radius
    // rho sin(theta).
    const double vnm1 = unit_ball_volume(g.n - 1);
    const double sin_theta = std::sqrt((1.0 - g.delta) * (1.0 + g.delta));
    return 2.0 * (1.0 - g.delta) * vnm1 * std::pow(g.rho, g.n) *
           std::pow(sin_theta, g.n - 1);
}

double intersection_volume_relaxed_bound(const CapGeometry& g) {
    const double one_minus_d2 = (1.0 - g.delta) * (1.0 + g.delta);
    return std::pow(one_minus_d2, 0.5 * g.n) * g.n * unit_ball_volume(g.n) *
           std::pow(g.rho, g.n);
}

double rho_of(int n, double r) { return 2.0 * r + 0.5 * std::sqrt(static_cast<double>(n)); }

double rho_of(const PackingParams& p) {
    p.validate();
    return rho_of(p.n, static_cast<double>(p.r));
}

double d_n_upper(const PackingParams& p) {
    p.validate();
    return std::exp2(log2_d_n_upper(p.n, static_cast<double>(p.r)));
}

double log2_d_n_upper(int n, double r) {
    return log2_unit_ball_volume(n) + n * std::log2(rho_of(n, r));
}

}  // namespace pforge
