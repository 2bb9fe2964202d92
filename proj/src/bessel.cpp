#include "buckling/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "buckling/errors.hpp"

namespace buckling::bessel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxIter = 200000;
constexpr double kMaxOrder = 1000.0;
constexpr double kMaxArgument = 1e9;
// Downward recurrences are renormalized when values exceed this.
constexpr double kRescale = 1e200;
constexpr double kHankelBudget = 8.0;

struct Pair {
    double value;
    double deriv;
};

void check_argument(double nu, double x, const char* fn) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError(std::string(fn) + ": argument must be finite and >= 0, got " +
                          std::to_string(x));
    if (nu > kMaxOrder || x > kMaxArgument)
        throw DomainError(std::string(fn) + ": (nu, x) outside supported range");
}

// (x/2)^nu / Gamma(nu + 1)
double power_prefactor(double nu, double x) {
    if (nu == 0.0) return 1.0;
    if (nu <= 170.0) {
        const double p = std::pow(0.5 * x, nu);
        if (std::isnormal(p)) {
            const double r = p / std::tgamma(nu + 1.0);
            if (std::isnormal(r)) return r;
        }
    }
    return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
}

// Ascending series sum_k (sign * x^2/4)^k / (k! (nu+1)_k), together with the
// derivative-weighted sum sum_k (2k + nu) * term_k.
Pair ascending_series(double nu, double x, double sign) {
    const double q = 0.25 * x * x * sign;
    double term = 1.0;
    double sum = 1.0;
    double dsum = nu;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        dsum += (2.0 * k + nu) * term;
        if (std::abs(term) < 0.25 * kEps * std::abs(sum) && k * (k + nu) > std::abs(q)) break;
    }
    return {sum, dsum};
}

// Hankel asymptotic series: t_0 = 1, t_k = t_{k-1} (4nu^2 - (2k-1)^2) / (8 k x).
// Returns the alternating partial sums needed by J (P, Q) and by the scaled
// I (sum (-1)^k t_k), or nothing when the series has not converged before
// its terms start to grow.
struct Hankel {
    double p;
    double q;
    double alt;
};

std::optional<Hankel> hankel_series(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double p = 1.0, q = 0.0, alt = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 600; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double mag = std::abs(term);
        if (mag == 0.0) return Hankel{p, q, alt};
        // Growth is tolerated only while (2k-1)^2 < 4 nu^2 and within a
        // small cancellation budget; past that it marks divergence.
        if (mag > kHankelBudget) return std::nullopt;
        if (mag > prev && odd * odd > mu) return std::nullopt;
        prev = mag;
        // sign pattern: k = 1 -> +Q, 2 -> -P, 3 -> -Q, 4 -> +P, ...
        switch (k % 4) {
            case 0: p += term; break;
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
        }
        alt += (k % 2 == 0) ? term : -term;
        if (odd * odd > mu && mag < 0.1 * kEps * std::abs(alt) &&
            mag < 0.1 * kEps * std::hypot(p, q))
            return Hankel{p, q, alt};
    }
    return std::nullopt;
}

bool use_j_series(double nu, double x) { return x < 2.0 || x * x < 8.0 * (nu + 1.0); }
bool try_j_hankel(double nu, double x) { return x >= std::max(25.0, 0.25 * nu * nu); }

bool use_i_series(double nu, double x) { return x <= 50.0 || x * x <= 16.0 * (nu + 1.0); }
bool try_i_hankel(double nu, double x) { return x >= std::max(30.0, nu * nu); }

// Steed's method for J: CF1 gives J_nu'/J_nu, a backward recurrence carries
// the unnormalized pair down to an order mu below the turning point, CF2
// gives p + iq at order mu, and the Wronskian fixes the normalization.
Pair j_steed(double nu, double x) {
    const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
    const double mu = nu - nl;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / kPi;

    int isign = 1;
    double h = nu * xi;
    if (h < kTiny) h = kTiny;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 0;
    for (; i < kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i == kMaxIter) throw ConvergenceError("bessel_j: CF1 did not converge", std::abs(h));

    double rjl = isign * kTiny;
    double rjpl = h * rjl;
    double rjl1 = rjl;
    double rjp1 = rjpl;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::abs(rjl) > kRescale) {
            rjl /= kRescale;
            rjpl /= kRescale;
            rjl1 /= kRescale;
            rjp1 /= kRescale;
        }
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double a = 0.25 - mu * mu;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < kMaxIter; ++i) {
        a += 2 * i;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
    }
    if (i == kMaxIter) throw ConvergenceError("bessel_j: CF2 did not converge", std::abs(p));

    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    const double scale = rjmu / rjl;
    return {rjl1 * scale, rjp1 * scale};
}

// Steed's method for I in scaled form: e^{-x} I_nu(x). K_mu is obtained from
// CF2 (x >= 2 here) and the Wronskian I K' - I' K = -1/x normalizes the
// backward recurrence started from CF1.
double i_steed_scaled(double nu, double x) {
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    double h = nu * xi;
    if (h < kTiny) h = kTiny;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 0;
    for (; i < kMaxIter; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i == kMaxIter) throw ConvergenceError("bessel_i: CF1 did not converge", h);

    double ril = kTiny;
    double ripl = h * ril;
    double ril1 = ril;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if (std::abs(ril) > kRescale) {
            ril /= kRescale;
            ripl /= kRescale;
            ril1 /= kRescale;
        }
    }
    const double f = ripl / ril;

    const double mu2 = mu * mu;
    b = 2.0 * (1.0 + x);
    d = 1.0 / b;
    double delh = d;
    h = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (i = 1; i < kMaxIter; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i == kMaxIter) throw ConvergenceError("bessel_i: CF2 did not converge", s);
    h *= a1;

    const double kmu = std::sqrt(kPi / (2.0 * x)) / s;  // e^{x} K_mu(x)
    const double k1 = kmu * (mu + x + 0.5 - h) * xi;     // e^{x} K_{mu+1}(x)
    const double kmup = mu * xi * kmu - k1;
    const double imu = xi / (f * kmu - kmup);            // e^{-x} I_mu(x)
    return imu * ril1 / ril;
}

double j_hankel(double nu, double x, const Hankel& hs) {
    const double phase = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phase), sp = std::sin(phase);
    const double cchi = cx * cp + sx * sp;
    const double schi = sx * cp - cx * sp;
    return std::sqrt(2.0 / (kPi * x)) * (hs.p * cchi - hs.q * schi);
}

// For x above the order, start from the asymptotic values at the fractional
// orders mu, mu + 1 and recur upward; the recurrence is stable there.
std::optional<double> j_forward(double nu, double x) {
    const double mu = nu - std::floor(nu);
    const auto h0 = hankel_series(mu, x);
    const auto h1 = hankel_series(mu + 1.0, x);
    if (!h0 || !h1) return std::nullopt;
    double jm = j_hankel(mu, x, *h0);
    double j = j_hankel(mu + 1.0, x, *h1);
    if (nu == mu) return jm;
    for (double m = mu + 1.0; m < nu - 0.5; m += 1.0) {
        const double next = 2.0 * m / x * j - jm;
        jm = j;
        j = next;
    }
    return j;
}

double j_value(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (use_j_series(nu, x)) return power_prefactor(nu, x) * ascending_series(nu, x, -1.0).value;
    if (try_j_hankel(nu, x)) {
        if (const auto hs = hankel_series(nu, x)) return j_hankel(nu, x, *hs);
    }
    if (x >= 25.0 && x > nu + 1.0) {
        if (const auto j = j_forward(nu, x)) return *j;
    }
    return j_steed(nu, x).value;
}

double i_scaled_value(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (use_i_series(nu, x)) {
        // Prefactor and exponential combined in log space when either would
        // leave the normal range.
        const double series = ascending_series(nu, x, 1.0).value;
        const double pre = power_prefactor(nu, x);
        const double e = std::exp(-x);
        const double direct = pre * e;
        if (std::isnormal(direct)) return direct * series;
        return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x) * series;
    }
    if (try_i_hankel(nu, x)) {
        if (const auto hs = hankel_series(nu, x)) return hs->alt / std::sqrt(2.0 * kPi * x);
    }
    return i_steed_scaled(nu, x);
}

// Modified Lentz evaluation of 1 / (b_1 + s / (b_2 + s / (b_3 + ...))) with
// b_k = 2 (nu + k) / x. s = +1 gives I_{nu+1}/I_nu, s = -1 gives J_{nu+1}/J_nu.
double ratio_continued_fraction(double nu, double x, double s, const char* fn) {
    const double xi2 = 2.0 / x;
    double f = kTiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < kMaxIter; ++k) {
        const double b = xi2 * (nu + k);
        const double a = (k == 1) ? 1.0 : s;
        d = b + a * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        f *= del;
        if (std::abs(del - 1.0) < kEps) return f;
    }
    throw ConvergenceError(std::string(fn) + ": continued fraction did not converge", f);
}

struct IRatio {
    double u;
    double complement;  // 1 - u
};

IRatio i_ratio_pair(double nu, double x) {
    if (x > 0.0 && try_i_hankel(nu + 1.0, x)) {
        // Both series share t_0 = 1, so S_nu - S_{nu+1} is formed term by
        // term without cancellation in the leading term.
        const double mu0 = 4.0 * nu * nu;
        const double mu1 = 4.0 * (nu + 1.0) * (nu + 1.0);
        double t0 = 1.0, t1 = 1.0;
        double s0 = 1.0, s1 = 1.0, diff = 0.0;
        double prev = 2.0;
        for (int k = 1; k < 400; ++k) {
            const double odd = 2.0 * k - 1.0;
            t0 *= (mu0 - odd * odd) / (8.0 * k * x);
            t1 *= (mu1 - odd * odd) / (8.0 * k * x);
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            s0 += sgn * t0;
            s1 += sgn * t1;
            diff += sgn * (t0 - t1);
            const double mag = std::max(std::abs(t0), std::abs(t1));
            if (mag > prev) break;
            prev = mag;
            if (mag < 0.1 * kEps * std::abs(diff) || mag == 0.0)
                return {s1 / s0, diff / s0};
        }
    }
    const double u = ratio_continued_fraction(nu, x, 1.0, "bessel_i_ratio");
    return {u, 1.0 - u};
}

void check_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                          std::to_string(x));
}

double j_ratio_impl(double nu, double x) {
    if (x > 1000.0) return j_value(nu + 1.0, x) / j_value(nu, x);
    return ratio_continued_fraction(nu, x, -1.0, "bessel_j_ratio");
}

}  // namespace

Order::Order(double nu) : nu_(nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw DomainError("bessel order must be finite and >= 0, got " + std::to_string(nu));
}

double bessel_j(Order order, double x) {
    check_argument(order.value(), x, "bessel_j");
    return j_value(order.value(), x);
}

double bessel_j_prime(Order order, double x) {
    const double nu = order.value();
    check_argument(nu, x, "bessel_j_prime");
    if (x == 0.0) {
        if (nu == 0.0 || nu > 1.0) return 0.0;
        if (nu == 1.0) return 0.5;
        return std::numeric_limits<double>::infinity();
    }
    if (use_j_series(nu, x)) {
        const auto s = ascending_series(nu, x, -1.0);
        return power_prefactor(nu, x) * s.deriv / x;
    }
    return nu / x * j_value(nu, x) - j_value(nu + 1.0, x);
}

double bessel_j_second(Order order, double x) {
    const double nu = order.value();
    check_positive(x, "bessel_j_second");
    check_argument(nu, x, "bessel_j_second");
    const double jv = j_value(nu, x);
    const double jp = bessel_j_prime(order, x);
    return -jp / x - (1.0 - nu * nu / (x * x)) * jv;
}

double bessel_i(Order order, double x, Scaling scaling) {
    const double nu = order.value();
    check_argument(nu, x, "bessel_i");
    const double s = i_scaled_value(nu, x);
    if (scaling == Scaling::scaled) return s;
    if (s == 0.0) return 0.0;
    const double log_value = std::log(s) + x;
    if (log_value > std::log(std::numeric_limits<double>::max()))
        throw OverflowError("bessel_i: unscaled value overflows at x = " + std::to_string(x) +
                            "; request the scaled form");
    return x < 700.0 ? s * std::exp(x) : std::exp(log_value);
}

double bessel_i_prime(Order order, double x, Scaling scaling) {
    const double nu = order.value();
    check_argument(nu, x, "bessel_i_prime");
    if (x == 0.0) {
        if (nu == 0.0 || nu > 1.0) return 0.0;
        if (nu == 1.0) return 0.5;
        return std::numeric_limits<double>::infinity();
    }
    return bessel_i(order.next(), x, scaling) + nu / x * bessel_i(order, x, scaling);
}

double bessel_i_second(Order order, double x, Scaling scaling) {
    const double nu = order.value();
    check_positive(x, "bessel_i_second");
    const double iv = bessel_i(order, x, scaling);
    const double ip = bessel_i_prime(order, x, scaling);
    return -ip / x + (1.0 + nu * nu / (x * x)) * iv;
}

double bessel_j_ratio(Order order, double x) {
    check_positive(x, "bessel_j_ratio");
    check_argument(order.value(), x, "bessel_j_ratio");
    const double r = j_ratio_impl(order.value(), x);
    if (!(std::abs(r) < kPoleRatio))
        throw PoleError("bessel_j_ratio: x = " + std::to_string(x) +
                        " is numerically a zero of J_nu");
    return r;
}

double bessel_j_ratio_unchecked(Order order, double x) {
    check_positive(x, "bessel_j_ratio");
    check_argument(order.value(), x, "bessel_j_ratio");
    return j_ratio_impl(order.value(), x);
}

double bessel_i_ratio(Order order, double x) {
    check_positive(x, "bessel_i_ratio");
    check_argument(order.value(), x, "bessel_i_ratio");
    return i_ratio_pair(order.value(), x).u;
}

double bessel_i_ratio_complement(Order order, double x) {
    check_positive(x, "bessel_i_ratio_complement");
    check_argument(order.value(), x, "bessel_i_ratio_complement");
    return i_ratio_pair(order.value(), x).complement;
}

double g_func(Order order, double z) { return z * bessel_i_ratio(order, z) + order.value(); }

double g_prime(Order order, double z) { return -z * turan_margin(order, z); }

double g_lower_bound_margin(Order order, double z) {
    check_positive(z, "g_lower_bound_margin");
    const double nu = order.value();
    const auto r1 = i_ratio_pair(nu, z);
    const auto r2 = i_ratio_pair(nu + 1.0, z);
    // u - u2 through the complements keeps precision as both approach 1.
    const double gap = (r1.u < 0.5) ? r1.u - r2.u : r2.complement - r1.complement;
    const double nu1 = nu + 1.0;
    const double w = z / (nu1 + std::sqrt(nu1 * nu1 + z * z));
    return z * r1.u * gap / (r1.u + w + 2.0 * nu1 / z);
}

double h_func(Order order, double z) { return order.value() - z * bessel_j_ratio(order, z); }

double h_prime(Order order, double z) {
    const double rho = bessel_j_ratio(order, z);
    return -z + 2.0 * order.value() * rho - z * rho * rho;
}

double turan_margin(Order order, double z) {
    check_positive(z, "turan_margin");
    const auto r = i_ratio_pair(order.value(), z);
    return -r.complement * (1.0 + r.u) + 2.0 * order.value() * r.u / z;
}

double i_ratio_upper_bound(Order order, double z) {
    check_positive(z, "i_ratio_upper_bound");
    const double nu = order.value();
    return z / (nu + std::sqrt(nu * nu + z * z));
}

}  // namespace buckling::bessel
