#pragma once

#include <iosfwd>
#include <vector>

namespace coopcast {

// Deterministic continuum analogue of the discrete broadcast: nodes are
// smeared into a power density rho, the decoded region is a segment [0, R]
// (1-D) or a disk of radius R (2-D), and the frontier advances to the largest
// x where the aggregate received density still meets tau. Starting from the
// bootstrap radius R_0 = 1 (a point source with p_t == tau), each step's
// increment never shrinks, so the covered region grows without bound at any
// positive density; the random model at alpha above the dimension threshold
// behaves in the opposite way. That contrast is the point of this module.

// rho * integral_0^R (x-u)^-alpha du for x > R. Closed form with expm1/log1p
// evaluation; the alpha == 1 branch is the log form (switched within 1e-9 of
// 1 to keep the removable limit continuous).
double segment_power(double x, double R, double rho, double alpha);

// rho * integral over the disk |u| <= R of |x e - u|^-alpha for a target at
// distance x >= R from the center (any direction; the field is radial).
// Adaptive quadrature, relative error 1e-8. The x == R edge case is finite
// for alpha < 2 and handled by an exponent substitution.
double disk_power(double x, double R, double rho, double alpha);

// Largest x > R with the aggregate power >= tau, bisected to a relative
// tolerance of 1e-10. Throws inapplicable_error when the region cannot
// advance at all (possible only for alpha < dimension at low rho).
double frontier_1d(double R, double rho, double tau, double alpha);
double frontier_2d(double R, double rho, double tau, double alpha);

struct ContinuumState {
    int dimension = 1;
    double rho = 0.0;
    double tau = 0.0;
    double alpha = 0.0;
    std::vector<double> radii;      // R_0 .. R_steps; saturates to inf past double range
    std::vector<double> increments; // eps_1 .. eps_steps; same saturation
    std::vector<double> log_radii;  // ln R_t, always finite; authoritative record
};

// Iterates the frontier map `steps` times from R_0 = 1, certifying at every
// step that the increment did not decrease (up to relative solver slack); a
// decrease raises invariant_error. Each step is solved for the ratio
// x / R, which stays well conditioned however large R gets; below the
// dimension exponent the radii square (or worse) per step and overflow
// doubles quickly, so radii/increments saturate to inf while log_radii
// carries the exact trajectory.
ContinuumState continuum_growth(int dimension, double rho, double tau, double alpha,
                                int steps);

// CSV "step,R,increment", one row per completed step.
void write_growth_csv(std::ostream& os, const ContinuumState& state);

} // namespace coopcast
