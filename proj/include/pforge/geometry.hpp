#pragma once

#include "pforge/params.hpp"

namespace pforge {

// Two balls of radius rho whose centers are 2*rho*delta apart.  theta is
// the half-opening angle of the intersection cap as seen from either
// center, theta = acos(delta).
struct CapGeometry {
    int n;         // dimension, >= 2
    double rho;    // ball radius, > 0
    double delta;  // normalized center distance, in (0, 1)
    double theta;  // acos(delta)

    // Validates and fills theta.  Throws std::domain_error.
    static CapGeometry make(int n, double rho, double delta);
};

// Volume of the unit ball in dimension n (n = 0 gives 1).
double unit_ball_volume(int n);
// log2 of the same; stays finite far beyond double overflow.
double log2_unit_ball_volume(int n);

// Integral of sin(phi)^(n-2) over [0, theta], n >= 2, theta in [0, pi/2].
// Relative accuracy 1e-10 or better.
double sector_integral(int n, double theta);

// Exact volume of the intersection of the two balls: twice the spherical
// sector of angle theta minus twice the enclosed cone.
double intersection_volume_exact(const CapGeometry& g);

// Upper bounds on the intersection volume: the enclosing cylinder of
// height 2*rho*(1-delta), and the weaker (1-delta^2)^(n/2) * n * V_n * rho^n
// relaxation of it.  exact <= cylinder <= relaxed.
double intersection_volume_cylinder_bound(const CapGeometry& g);
double intersection_volume_relaxed_bound(const CapGeometry& g);

// Inflated radius 2r + sqrt(n)/2: the ball that contains the unit-cube
// fundamental domains of all lattice points within distance 2r of a center.
double rho_of(const PackingParams& p);
double rho_of(int n, double r);

// Volume bound V_n * rho^n on the closed neighborhood size d_max + 1 of
// any vertex, i.e. on the number of lattice points within distance < 2r.
double d_n_upper(const PackingParams& p);
double log2_d_n_upper(int n, double r);

}  // namespace pforge
