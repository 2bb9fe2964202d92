#include "buckling/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "buckling/errors.hpp"
#include "buckling/zeros.hpp"

namespace buckling {

namespace {

constexpr int kAutoGridLimit = 512;

double binomial(int n, int k) {
    if (k < 0 || n < k) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

struct Certified {
    SpectrumReport report;
    bool ok;
    double bound_k;  // lower bound for every k > k_max
    double bound_l;  // lower bound for every ell > l_max
};

Certified enumerate_grid(int dim, double kappa, int k_max, int l_max, int count,
                         const SolveOptions& options) {
    if (k_max < 0 || l_max < 1 || count < 1)
        throw DomainError("enumerate_spectrum: need k_max >= 0, l_max >= 1, count >= 1");
    if (count > (k_max + 1) * l_max)
        throw InsufficientGridError("enumerate_spectrum: grid holds fewer than count modes");

    std::vector<SpectrumEntry> all;
    all.reserve(static_cast<std::size_t>(k_max + 1) * l_max);
    for (int k = 0; k <= k_max; ++k) {
        for (int ell = 1; ell <= l_max; ++ell) {
            const ModeIndex mode(k, ell, dim);
            SpectralPoint p = find_alpha(mode, kappa, options);
            all.push_back({p.lambda, mode, harmonic_multiplicity(dim, k), p});
        }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.lambda < y.lambda; });
    all.erase(all.begin() + count, all.end());

    // lambda_{k,ell} exceeds the value of a -> a^2 - kappa^2/a^2 at the bracket
    // start j_{nu_k,ell}, which grows with both nu and ell.
    const double nu0 = 0.5 * (dim - 2);
    const double bound_k =
        eigenvalue_from_alpha(zeros::j_zero(bessel::Order(nu0 + k_max + 1), 1), kappa);
    const double bound_l = eigenvalue_from_alpha(zeros::j_zero(bessel::Order(nu0), l_max + 1), kappa);
    const bool ok = all.back().lambda < std::min(bound_k, bound_l);

    SpectrumReport report{dim, kappa, std::move(all), 0, k_max, l_max};
    return {std::move(report), ok, bound_k, bound_l};
}

}  // namespace

double eigenvalue_from_alpha(double alpha, double kappa) {
    const double a2 = alpha * alpha;
    return (a2 - kappa) * (a2 + kappa) / a2;
}

double eigenvalue(const SpectralPoint& point) {
    return eigenvalue_from_alpha(point.alpha, point.kappa);
}

std::int64_t harmonic_multiplicity(int dim, int k) {
    if (dim < 2 || k < 0) throw DomainError("harmonic_multiplicity: need N >= 2, k >= 0");
    return static_cast<std::int64_t>(binomial(k + dim - 1, dim - 1) - binomial(k + dim - 3, dim - 1));
}

SpectrumReport enumerate_spectrum(int dim, double kappa, int k_max, int l_max, int count,
                                  const SolveOptions& options) {
    Certified c = enumerate_grid(dim, kappa, k_max, l_max, count, options);
    if (!c.ok)
        throw InsufficientGridError(
            "enumerate_spectrum: grid k <= " + std::to_string(k_max) + ", ell <= " +
            std::to_string(l_max) + " does not certify the " + std::to_string(count) +
            " smallest eigenvalues");
    return std::move(c.report);
}

SpectrumReport enumerate_spectrum_auto(int dim, double kappa, int count, const SolveOptions& options) {
    int k_max = std::max(3, count / 2);
    int l_max = std::max(2, count / 3);
    while (true) {
        if ((k_max + 1) * l_max < count) {
            k_max = std::max(k_max, count);
            continue;
        }
        Certified c = enumerate_grid(dim, kappa, k_max, l_max, count, options);
        if (c.ok) return std::move(c.report);
        if (k_max >= kAutoGridLimit && l_max >= kAutoGridLimit)
            throw InsufficientGridError("enumerate_spectrum: grid limit reached without certificate");
        const double worst = c.report.entries.back().lambda;
        if (c.bound_k <= worst && k_max < kAutoGridLimit) k_max *= 2;
        if (c.bound_l <= worst && l_max < kAutoGridLimit) l_max *= 2;
    }
}

SpectralPoint first_eigenvalue(int dim, double kappa, const SolveOptions& options) {
    return find_alpha(ModeIndex(0, 1, dim), kappa, options);
}

std::vector<CurvePoint> lambda_curve(const ModeIndex& mode, std::span<const double> kappas,
                                     const SolveOptions& options) {
    std::vector<CurvePoint> out;
    out.reserve(kappas.size());
    for (double kappa : kappas) {
        const SpectralPoint p = find_alpha(mode, kappa, options);
        out.push_back({-kappa * kappa, p.lambda});
    }
    std::sort(out.begin(), out.end(), [](const CurvePoint& x, const CurvePoint& y) { return x.nu < y.nu; });
    return out;
}

Crossing find_crossing(const ModeIndex& a, const ModeIndex& b, double kappa_lo, double kappa_hi,
                       double kappa_tol) {
    if (!(kappa_lo < kappa_hi)) throw DomainError("find_crossing: need kappa_lo < kappa_hi");
    auto diff = [&](double kappa) { return find_alpha(a, kappa).alpha - find_alpha(b, kappa).alpha; };
    double lo = kappa_lo;
    double hi = kappa_hi;
    double f_lo = diff(lo);
    const double f_hi = diff(hi);
    if ((f_lo < 0.0) == (f_hi < 0.0) && f_lo != 0.0 && f_hi != 0.0)
        throw NoSignChangeError("find_crossing: alpha difference has the same sign at both ends");
    while (hi - lo > kappa_tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = diff(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    const double kappa = 0.5 * (lo + hi);
    return {kappa, find_alpha(a, kappa).alpha};
}

std::pair<double, double> convert_parametrization(double tau, double omega) { return {-omega, -tau}; }

}  // namespace buckling
