#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "buckling/characteristic.hpp"

namespace buckling {

struct SpectrumEntry {
    double lambda;
    ModeIndex mode;
    // Dimension of the degree-k spherical harmonic space. For N = 2 this is
    // the exact eigenvalue multiplicity; for N > 2 it is structural only.
    std::int64_t multiplicity;
    SpectralPoint point;
};

struct SpectrumReport {
    int dim;
    double kappa;
    std::vector<SpectrumEntry> entries;  // ascending in lambda
    std::size_t min_index;
    int k_max;
    int l_max;
};

struct CurvePoint {
    double nu;  // -kappa^2
    double lambda;
};

struct Crossing {
    double kappa;
    double alpha;
};

// lambda = alpha^2 - kappa^2 / alpha^2.
double eigenvalue(const SpectralPoint& point);
double eigenvalue_from_alpha(double alpha, double kappa);

std::int64_t harmonic_multiplicity(int dim, int k);

// The `count` smallest eigenvalues among k <= k_max, ell <= l_max. Throws
// InsufficientGridError unless the omitted modes are provably larger.
SpectrumReport enumerate_spectrum(int dim, double kappa, int k_max, int l_max, int count,
                                  const SolveOptions& options = {});
// Same, growing the grid until the result is certified.
SpectrumReport enumerate_spectrum_auto(int dim, double kappa, int count,
                                       const SolveOptions& options = {});

SpectralPoint first_eigenvalue(int dim, double kappa, const SolveOptions& options = {});

// Points ordered by increasing nu = -kappa^2.
std::vector<CurvePoint> lambda_curve(const ModeIndex& mode, std::span<const double> kappas,
                                     const SolveOptions& options = {});

// Root of kappa -> alpha_A(kappa) - alpha_B(kappa) on [kappa_lo, kappa_hi],
// bisected to |dkappa| <= kappa_tol. Throws NoSignChangeError.
Crossing find_crossing(const ModeIndex& a, const ModeIndex& b, double kappa_lo, double kappa_hi,
                       double kappa_tol = 1e-6);

// (tau, omega) of the companion formulation -> (nu, lambda) = (-omega, -tau).
// The map is its own inverse.
std::pair<double, double> convert_parametrization(double tau, double omega);

}  // namespace buckling
