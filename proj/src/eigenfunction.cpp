#include "buckling/eigenfunction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "buckling/errors.hpp"
#include "buckling/zeros.hpp"

namespace buckling {

namespace {

using bessel::Order;
using bessel::Scaling;

constexpr int kMinSamplesPerNode = 64;

int sign(double x) { return (x > 0.0) - (x < 0.0); }

void check_radius(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius must lie in [0, 1], got " + std::to_string(r));
}

// e^{z (r - 1)} e^{-z r} I(z r) = e^{-z} I(z r), without forming e^{z r}.
double i_branch(Order order, double z, double r) {
    return bessel::bessel_i(order, z * r, Scaling::scaled) * std::exp(z * (r - 1.0));
}

double i_branch_prime(Order order, double z, double r) {
    return bessel::bessel_i_prime(order, z * r, Scaling::scaled) * std::exp(z * (r - 1.0));
}

double bisect_root(const SpectralPoint& p, double a, double b) {
    double fa = radial_eval(p, a);
    while (true) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = radial_eval(p, m);
        if (fm == 0.0) return m;
        if (sign(fm) == sign(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double radial_eval(const SpectralPoint& p, double r) {
    check_radius(r);
    const Order order = p.mode.order();
    const double z = p.kappa / p.alpha;
    return p.coeff_c * bessel::bessel_j(order, p.alpha * r) + p.coeff_d * i_branch(order, z, r);
}

double radial_derivative(const SpectralPoint& p, double r) {
    check_radius(r);
    const Order order = p.mode.order();
    const double z = p.kappa / p.alpha;
    return p.coeff_c * p.alpha * bessel::bessel_j_prime(order, p.alpha * r) +
           p.coeff_d * z * i_branch_prime(order, z, r);
}

double wall_second_derivative(const SpectralPoint& p) {
    const Order order = p.mode.order();
    const double z = p.kappa / p.alpha;
    return p.coeff_c * p.alpha * p.alpha * bessel::bessel_j_second(order, p.alpha) +
           p.coeff_d * z * z * bessel::bessel_i_second(order, z, Scaling::scaled);
}

BoundaryResidual boundary_residual(const SpectralPoint& p) {
    const Order order = p.mode.order();
    const double z = p.kappa / p.alpha;
    const double t1 = p.coeff_c * bessel::bessel_j(order, p.alpha);
    const double t2 = p.coeff_d * bessel::bessel_i(order, z, Scaling::scaled);
    const double s1 = p.coeff_c * p.alpha * bessel::bessel_j_prime(order, p.alpha);
    const double s2 = p.coeff_d * z * bessel::bessel_i_prime(order, z, Scaling::scaled);
    return {std::abs(t1 + t2) / std::max({1.0, std::abs(t1), std::abs(t2)}),
            std::abs(s1 + s2) / std::max({1.0, std::abs(s1), std::abs(s2)})};
}

double gamma_coefficient(const SpectralPoint& p) {
    const double nu = p.mode.nu();
    const double z = p.kappa / p.alpha;
    const double tail = std::exp(nu * std::log(z / p.alpha) - z);
    return std::pow(p.alpha, nu) * (p.coeff_c + p.coeff_d * tail);
}

bool check_gamma_positive(const SpectralPoint& p) { return gamma_coefficient(p) > 0.0; }

RadialProfile radial_profile(const SpectralPoint& p, int n_samples) {
    if (n_samples < 64) throw DomainError("radial_profile: need at least 64 samples");
    const int ell = p.mode.ell();
    const int m = std::max(n_samples, kMinSamplesPerNode * ell);
    const Order order = p.mode.order();

    // Root scan on a grid that always contains the j' and j checkpoints.
    std::vector<double> scan;
    scan.reserve(m + 1 + 2 * ell);
    for (int i = 1; i < m; ++i) scan.push_back(static_cast<double>(i) / m);
    for (int n = 1; n <= ell; ++n) {
        for (double x : {zeros::jprime_zero(order, n), zeros::j_zero(order, n)}) {
            const double r = x / p.alpha;
            if (r > 0.0 && r < 1.0) scan.push_back(r);
        }
    }
    std::sort(scan.begin(), scan.end());
    scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

    RadialProfile prof{p, {}, {}, 0, gamma_coefficient(p), 0.0};
    double prev_r = 0.0;
    int prev_s = 0;
    for (double r : scan) {
        const int si = sign(radial_eval(p, r));
        if (si == 0) continue;
        if (prev_s != 0 && si != prev_s) prof.roots.push_back(bisect_root(p, prev_r, r));
        prev_r = r;
        prev_s = si;
    }
    prof.nodal_count = static_cast<int>(prof.roots.size());

    prof.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double r = static_cast<double>(i) / (n_samples - 1);
        const double v = radial_eval(p, r);
        prof.samples.push_back({r, v});
        prof.max_abs = std::max(prof.max_abs, std::abs(v));
    }
    if (prof.max_abs > 0.0)
        for (auto& s : prof.samples) s.value /= prof.max_abs;

    if (prof.nodal_count != ell - 1)
        throw NodalMismatchError("radial profile for k=" + std::to_string(p.mode.k()) +
                                     ", ell=" + std::to_string(ell) + " has " +
                                     std::to_string(prof.nodal_count) + " interior roots, expected " +
                                     std::to_string(ell - 1),
                                 ell - 1, prof.nodal_count);
    return prof;
}

bool check_sign_pattern(const RadialProfile& profile) {
    const SpectralPoint& p = profile.point;
    const Order order = p.mode.order();
    const int c_sign = sign(p.coeff_c);
    for (int n = 1; n <= p.mode.ell(); ++n) {
        const double r = zeros::jprime_zero(order, n) / p.alpha;
        const int expected = (n % 2 == 1 ? 1 : -1) * c_sign;
        if (sign(radial_eval(p, r)) != expected) return false;
    }
    return true;
}

bool check_first_mode_monotone(const SpectralPoint& p, int n_samples) {
    if (p.mode.k() != 0 || p.mode.ell() != 1)
        throw DomainError("check_first_mode_monotone applies to mode (0, 1) only");
    // d/dr [r^{-nu0} C_nu0(x r)] = -/+ x r^{-nu0} C_{nu0+1}(x r) for C = J / I.
    const Order next = p.mode.order().next();
    const double z = p.kappa / p.alpha;
    for (int i = 1; i <= n_samples; ++i) {
        const double r = static_cast<double>(i) / (n_samples + 1);
        const double w = -p.coeff_c * p.alpha * bessel::bessel_j(next, p.alpha * r) +
                         p.coeff_d * z * i_branch(next, z, r);
        if (!(w < 0.0)) return false;
    }
    return true;
}

double ode_residual(const RadialProfile& profile, int grid_n) {
    if (grid_n < 4) throw DomainError("ode_residual: grid_n must be >= 4");
    const SpectralPoint& p = profile.point;
    const Order order = p.mode.order();
    const double nu = p.mode.nu();
    const double z = p.kappa / p.alpha;
    const double h = 1.0 / grid_n;
    const double source = p.coeff_c * (p.alpha * p.alpha + z * z);

    std::vector<double> u(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) u[i] = radial_eval(p, i * h);

    double worst = 0.0;
    for (int i = 1; i < grid_n; ++i) {
        const double r = i * h;
        const double flux = ((r + 0.5 * h) * (u[i + 1] - u[i]) - (r - 0.5 * h) * (u[i] - u[i - 1])) / (h * h);
        const double res = -flux + (nu * nu / (r * r) + z * z) * r * u[i] -
                           source * r * bessel::bessel_j(order, p.alpha * r);
        worst = std::max(worst, std::abs(res));
    }
    return worst / profile.max_abs;
}

}  // namespace buckling
