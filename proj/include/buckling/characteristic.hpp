#pragma once

#include "buckling/bessel.hpp"

namespace buckling {

inline constexpr double kKappaMin = 1e-8;
inline constexpr double kKappaMax = 1e8;
inline constexpr double kDefaultRootTol = 1e-13;

// Mode labels (N, k, ell). Negative k is folded to |k|.
class ModeIndex {
public:
    ModeIndex(int k, int ell, int dim = 2);

    int dim() const noexcept { return dim_; }
    int k() const noexcept { return k_; }
    int ell() const noexcept { return ell_; }
    // Bessel order nu_k = k + (N - 2) / 2.
    double nu() const noexcept { return k_ + 0.5 * (dim_ - 2); }
    // Angular constant mu_k = k (k + N - 2).
    double mu() const noexcept { return static_cast<double>(k_) * (k_ + dim_ - 2); }
    bessel::Order order() const { return bessel::Order(nu()); }

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;

private:
    int k_;
    int ell_;
    int dim_;
};

struct SpectralPoint {
    ModeIndex mode;
    double kappa;
    double alpha;
    double lambda;
    double beta_sq;     // -kappa^2 / alpha^2
    double bracket_lo;  // j_{nu,ell}
    double bracket_hi;  // j_{nu+1,ell}
    // |F~(alpha)| / max(1, |z u| + |alpha rho|); the two terms of F~ grow
    // like kappa / alpha, so the raw value is only meaningful relative to them.
    double residual;
    // Boundary-system solution proportional to (I_nu(kappa/alpha), -J_nu(alpha)),
    // computed with the scaled I and rescaled so max(|c|, |d|) = 1.
    double coeff_c;
    double coeff_d;
    // False when the scan of the gap [j_{nu+1,ell}, j_{nu,ell+1}] saw a sign
    // change of the determinant. Always true when the scan is disabled.
    bool gap_clean;
};

struct SolveOptions {
    double tol = kDefaultRootTol;
    bool scan_gap = true;
};

// Characteristic determinant
//   F(alpha) = (kappa/alpha) J_nu(alpha) I_nu'(kappa/alpha) - alpha I_nu(kappa/alpha) J_nu'(alpha)
// with the I factors scaled by e^{-kappa/alpha}. Smooth across zeros of J_nu.
double f_det(const ModeIndex& mode, double kappa, double alpha);

// Ratio form F~ = (kappa/alpha) u(kappa/alpha) + alpha J_{nu+1}(alpha)/J_nu(alpha).
// Throws PoleError at zeros of J_nu.
double f_tilde(const ModeIndex& mode, double kappa, double alpha);
double f_tilde_dalpha(const ModeIndex& mode, double kappa, double alpha);
// Partial derivative of F~ in kappa: G_nu'(kappa/alpha) / alpha.
double f_tilde_dkappa(const ModeIndex& mode, double kappa, double alpha);

// Unique root of F in (j_{nu,ell}, j_{nu+1,ell}). Throws DomainError for
// kappa outside [kKappaMin, kKappaMax] and BracketError when the endpoint
// signs agree.
SpectralPoint find_alpha(const ModeIndex& mode, double kappa, const SolveOptions& options = {});

double dalpha_dkappa(const SpectralPoint& point);

}  // namespace buckling
