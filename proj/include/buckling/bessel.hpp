#pragma once

// Bessel functions of the first kind J_nu and modified Bessel functions I_nu
// for real order nu >= 0 and real argument x >= 0, together with the ratio
// functions used by the characteristic equation.
//
// Evaluation regimes (chosen per call, see bessel.cpp):
//   - ascending power series for small x (or x small against the order),
//   - Hankel asymptotic expansion for x large against nu^2,
//   - continued fraction for the logarithmic derivative followed by a
//     backward recurrence in the order and Wronskian normalization
//     (Steed's method) in between.
// The I branch is always computed in the scaled form e^{-x} I_nu(x) and
// multiplied out only on request.

namespace buckling::bessel {

// Real, finite, non-negative Bessel order.
class Order {
public:
    explicit Order(double nu);
    double value() const noexcept { return nu_; }
    Order next() const noexcept { return Order(nu_ + 1.0, Unchecked{}); }

    friend bool operator==(Order a, Order b) noexcept { return a.nu_ == b.nu_; }

private:
    struct Unchecked {};
    Order(double nu, Unchecked) noexcept : nu_(nu) {}
    double nu_;
};

enum class Scaling { unscaled, scaled };

// |J_nu(x)| below kPoleRatio^{-1} * |J_{nu+1}(x)| is treated as a pole of the
// J ratio functions.
inline constexpr double kPoleRatio = 1e7;

double bessel_j(Order order, double x);
// J_nu'(x) = (nu/x) J_nu(x) - J_{nu+1}(x); at x = 0 the one-sided limit.
double bessel_j_prime(Order order, double x);
// J_nu''(x) from the Bessel equation.
double bessel_j_second(Order order, double x);

// I_nu(x), or e^{-x} I_nu(x) when scaled. Unscaled evaluation throws
// OverflowError when the result is not representable.
double bessel_i(Order order, double x, Scaling scaling = Scaling::unscaled);
// I_nu'(x) = I_{nu+1}(x) + (nu/x) I_nu(x), same scaling convention.
double bessel_i_prime(Order order, double x, Scaling scaling = Scaling::unscaled);
double bessel_i_second(Order order, double x, Scaling scaling = Scaling::unscaled);

// J_{nu+1}(x) / J_nu(x) by continued fraction. Throws PoleError near zeros
// of J_nu.
double bessel_j_ratio(Order order, double x);
// Same without the pole check; callers that know they are inside a root
// bracket use this.
double bessel_j_ratio_unchecked(Order order, double x);

// u = I_{nu+1}(x) / I_nu(x), in (0, 1) for all x > 0.
double bessel_i_ratio(Order order, double x);
// 1 - u, accurate when u is close to 1 (large x).
double bessel_i_ratio_complement(Order order, double x);

// G_nu(z) = z I_nu'(z) / I_nu(z) = z u + nu.
double g_func(Order order, double z);
// G_nu'(z) = -z (u^2 + (2 nu / z) u - 1), positive.
double g_prime(Order order, double z);
// G_nu(z) - (-1 + sqrt((nu+1)^2 + z^2)) computed without cancellation.
double g_lower_bound_margin(Order order, double z);

// H_nu(z) = z J_nu'(z) / J_nu(z) = nu - z J_{nu+1}(z)/J_nu(z).
double h_func(Order order, double z);
// H_nu'(z) = -z + 2 nu rho - z rho^2 with rho = J_{nu+1}/J_nu.
double h_prime(Order order, double z);

// u^2 + (2 nu / z) u - 1, strictly negative for nu > -1, z > 0.
double turan_margin(Order order, double z);
// (-nu + sqrt(nu^2 + z^2)) / z, the upper bound on u implied by the margin.
double i_ratio_upper_bound(Order order, double z);

}  // namespace buckling::bessel
