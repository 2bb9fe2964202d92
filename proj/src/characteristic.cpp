#include "buckling/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "buckling/errors.hpp"
#include "buckling/zeros.hpp"

namespace buckling {

namespace {

using bessel::Order;

constexpr int kGapScanPoints = 50;
constexpr int kNewtonCap = 200;
// Bisection hands over to Newton once the bracket is this narrow (relative).
constexpr double kBisectionWidth = 1e-6;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError(std::string(name) + " must be finite and > 0, got " + fmt(value));
}

void check_kappa_range(const ModeIndex& mode, double kappa) {
    if (kappa == 0.0) {
        const double j = zeros::j_zero(mode.order().next(), mode.ell());
        throw DomainError("kappa = 0 is excluded; the kappa -> 0 limit is alpha = j_{nu+1,ell} = " +
                          fmt(j) + ", lambda = " + fmt(j * j));
    }
    if (!(kappa >= kKappaMin && kappa <= kKappaMax))
        throw DomainError("kappa must lie in [1e-8, 1e8], got " + fmt(kappa));
}

// F / I_nu(kappa/alpha) = z u J_nu(alpha) + alpha J_{nu+1}(alpha); same sign
// and zeros as F, free of the J_nu' cancellation.
double det_reduced(Order order, double kappa, double alpha) {
    const double z = kappa / alpha;
    const double u = bessel::bessel_i_ratio(order, z);
    return z * u * bessel::bessel_j(order, alpha) + alpha * bessel::bessel_j(order.next(), alpha);
}

struct TildeParts {
    double zu;
    double arho;
    double value() const { return zu + arho; }
};

TildeParts tilde_parts(Order order, double kappa, double alpha, bool checked) {
    const double z = kappa / alpha;
    const double rho = checked ? bessel::bessel_j_ratio(order, alpha)
                               : bessel::bessel_j_ratio_unchecked(order, alpha);
    return {z * bessel::bessel_i_ratio(order, z), alpha * rho};
}

double tilde_dalpha(Order order, double kappa, double alpha, bool checked) {
    const double nu = order.value();
    const double z = kappa / alpha;
    const double rho = checked ? bessel::bessel_j_ratio(order, alpha)
                               : bessel::bessel_j_ratio_unchecked(order, alpha);
    const double gp_term = kappa / (alpha * alpha) * z * bessel::turan_margin(order, z);
    return gp_term + alpha - 2.0 * nu * rho + alpha * rho * rho;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

ModeIndex::ModeIndex(int k, int ell, int dim) : k_(k < 0 ? -k : k), ell_(ell), dim_(dim) {
    if (dim < 2) throw DomainError("dimension N must be >= 2, got " + std::to_string(dim));
    if (ell < 1) throw DomainError("radial index ell must be >= 1, got " + std::to_string(ell));
}

double f_det(const ModeIndex& mode, double kappa, double alpha) {
    check_positive(kappa, "kappa");
    check_positive(alpha, "alpha");
    const Order order = mode.order();
    const double z = kappa / alpha;
    return bessel::bessel_i(order, z, bessel::Scaling::scaled) * det_reduced(order, kappa, alpha);
}

double f_tilde(const ModeIndex& mode, double kappa, double alpha) {
    check_positive(kappa, "kappa");
    check_positive(alpha, "alpha");
    return tilde_parts(mode.order(), kappa, alpha, true).value();
}

double f_tilde_dalpha(const ModeIndex& mode, double kappa, double alpha) {
    check_positive(kappa, "kappa");
    check_positive(alpha, "alpha");
    return tilde_dalpha(mode.order(), kappa, alpha, true);
}

double f_tilde_dkappa(const ModeIndex& mode, double kappa, double alpha) {
    check_positive(kappa, "kappa");
    check_positive(alpha, "alpha");
    return bessel::g_prime(mode.order(), kappa / alpha) / alpha;
}

SpectralPoint find_alpha(const ModeIndex& mode, double kappa, const SolveOptions& options) {
    check_kappa_range(mode, kappa);
    if (!(options.tol > 0.0 && options.tol < 1e-3))
        throw DomainError("root tolerance must lie in (0, 1e-3), got " + fmt(options.tol));

    const Order order = mode.order();
    const int ell = mode.ell();
    const double lo = zeros::j_zero(order, ell);
    const double hi = zeros::j_zero(order.next(), ell);

    // At the bracket ends one Bessel factor of the reduced determinant
    // vanishes exactly; the surviving term carries the sign.
    const double d_lo = lo * bessel::bessel_j(order.next(), lo);
    const double z_hi = kappa / hi;
    const double d_hi = z_hi * bessel::bessel_i_ratio(order, z_hi) * bessel::bessel_j(order, hi);
    const int s_lo = sign(d_lo);
    if (s_lo == 0 || s_lo == sign(d_hi))
        throw BracketError("determinant has equal endpoint signs on [" + fmt(lo) + ", " + fmt(hi) +
                           "] for k=" + std::to_string(mode.k()) + ", ell=" + std::to_string(ell) +
                           ", kappa=" + fmt(kappa));

    double a = lo;
    double b = hi;
    while (b - a > kBisectionWidth * b) {
        const double m = 0.5 * (a + b);
        const int sm = sign(det_reduced(order, kappa, m));
        if (sm == 0) {
            a = b = m;
            break;
        }
        (sm == s_lo ? a : b) = m;
    }

    // Newton on F~, which runs from -inf at lo to a positive value at hi.
    double x = 0.5 * (a + b);
    if (a < b) {
        bool converged = false;
        for (int it = 0; it < kNewtonCap && !converged; ++it) {
            const double ft = tilde_parts(order, kappa, x, false).value();
            if (ft == 0.0) break;
            (ft < 0.0 ? a : b) = x;
            const double step = -ft / tilde_dalpha(order, kappa, x, false);
            double next = x + step;
            if (std::abs(step) <= options.tol * x) {
                x = std::clamp(next, a, b);
                converged = true;
                break;
            }
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            x = next;
            converged = (b - a) <= options.tol * x;
        }
        if (!converged && tilde_parts(order, kappa, x, false).value() != 0.0)
            throw ConvergenceError("find_alpha: Newton polish did not converge",
                                   std::abs(tilde_parts(order, kappa, x, false).value()));
    }
    // Below double resolution of the bracket ends the root is reported as
    // the adjacent representable interior value.
    x = std::clamp(x, std::nextafter(lo, hi), std::nextafter(hi, lo));

    SpectralPoint p{mode, kappa, x, 0.0, 0.0, lo, hi, 0.0, 0.0, 0.0, true};
    const double z = kappa / x;
    p.lambda = (x * x - kappa) * (x * x + kappa) / (x * x);
    p.beta_sq = -z * z;
    const TildeParts parts = tilde_parts(order, kappa, x, false);
    p.residual = std::abs(parts.value()) /
                 std::max(1.0, std::abs(parts.zu) + std::abs(parts.arho));
    const double ih = bessel::bessel_i(order, z, bessel::Scaling::scaled);
    const double jv = bessel::bessel_j(order, x);
    const double s = std::max(ih, std::abs(jv));
    p.coeff_c = ih / s;
    p.coeff_d = -jv / s;

    if (options.scan_gap) {
        const double gap_end = zeros::j_zero(order, ell + 1);
        int prev = sign(d_hi);
        for (int i = 1; i < kGapScanPoints; ++i) {
            const double t = hi + (gap_end - hi) * i / (kGapScanPoints - 1.0);
            const int si = (i == kGapScanPoints - 1)
                               ? sign(gap_end * bessel::bessel_j(order.next(), gap_end))
                               : sign(det_reduced(order, kappa, t));
            if (si != 0 && si != prev) {
                p.gap_clean = false;
                break;
            }
            if (si != 0) prev = si;
        }
    }
    return p;
}

double dalpha_dkappa(const SpectralPoint& point) {
    const Order order = point.mode.order();
    const double dk = bessel::g_prime(order, point.kappa / point.alpha) / point.alpha;
    const double da = tilde_dalpha(order, point.kappa, point.alpha, false);
    return -dk / da;
}

}  // namespace buckling
