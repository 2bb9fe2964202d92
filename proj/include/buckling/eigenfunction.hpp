#pragma once

#include <vector>

#include "buckling/characteristic.hpp"

namespace buckling {

struct RadialSample {
    double r;
    double value;
};

// Radial profile R(r) = c J_nu(alpha r) + d I_nu(kappa r / alpha) on
// n_samples uniform points of [0, 1], rescaled so that max |R| = 1. Roots
// come from a finer scan through the j' and j checkpoints.
struct RadialProfile {
    SpectralPoint point;
    std::vector<RadialSample> samples;
    std::vector<double> roots;  // interior roots in (0, 1)
    int nodal_count;
    // Leading small-r coefficient c alpha^nu + d (kappa/alpha)^nu, up to the
    // positive factor (r/2)^nu / Gamma(nu + 1) and the I scaling.
    double gamma;
    // max |R| over the samples before rescaling.
    double max_abs;
};

// R(r) with the point's coefficients.
double radial_eval(const SpectralPoint& point, double r);
double radial_derivative(const SpectralPoint& point, double r);
// R''(1) from the Bessel equations of both branches.
double wall_second_derivative(const SpectralPoint& point);

// Requires n_samples >= 64. Throws NodalMismatchError when the interior root
// count differs from ell - 1.
RadialProfile radial_profile(const SpectralPoint& point, int n_samples = 64);

// Residuals of the two clamped boundary rows. Coefficients are scaled to
// max(|c|, |d|) = 1, so rows are absolute unless a term exceeds 1.
struct BoundaryResidual {
    double value;
    double slope;
};
BoundaryResidual boundary_residual(const SpectralPoint& point);

// sign R(j'_{nu,n}/alpha) = (-1)^{n+1} for n = 1..ell.
bool check_sign_pattern(const RadialProfile& profile);
// Strict negativity of the radial derivative on a uniform grid in (0, 1).
// For N > 2 the derivative of r^{-(N-2)/2} R is tested, i.e. of the radial
// factor of the eigenfunction itself.
bool check_first_mode_monotone(const SpectralPoint& point, int n_samples);
bool check_gamma_positive(const SpectralPoint& point);
double gamma_coefficient(const SpectralPoint& point);

// max_i |residual_i| / max_abs of the flux-form second-order discretization
// of -(r R')' + (nu^2/r^2 + z^2) r R = c (alpha^2 + z^2) r J_nu(alpha r), z = kappa/alpha,
// on the interior nodes of a uniform grid with grid_n cells.
double ode_residual(const RadialProfile& profile, int grid_n);

}  // namespace buckling
