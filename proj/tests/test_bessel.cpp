#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "buckling/bessel.hpp"
#include "buckling/errors.hpp"

using namespace buckling;
using namespace buckling::bessel;

namespace {

// Direct power series in long double, independent of the production code.
long double series(long double nu, long double x, int sign) {
    const long double h = x / 2;
    long double term = std::pow(h, nu) / std::tgamma(nu + 1);
    long double sum = term;
    for (int m = 1; m < 300; ++m) {
        term *= sign * h * h / (m * (m + nu));
        sum += term;
        if (std::fabs(term) < 1e-24L * std::fabs(sum)) break;
    }
    return sum;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return out;
}

}  // namespace

TEST_CASE("order validation") {
    CHECK(Order(2.5).value() == 2.5);
    CHECK(Order(2.5).next().value() == 3.5);
    CHECK_THROWS_AS(Order(-0.5), DomainError);
    CHECK_THROWS_AS(Order(std::nan("")), DomainError);
    CHECK_THROWS_AS(bessel_j(Order(0), -1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(Order(0), std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("values at the origin") {
    CHECK(bessel_j(Order(0), 0.0) == 1.0);
    CHECK(bessel_j(Order(1), 0.0) == 0.0);
    CHECK(bessel_i(Order(0), 0.0) == 1.0);
    CHECK(bessel_i(Order(2), 0.0) == 0.0);
    CHECK(bessel_i(Order(0), 0.0, Scaling::scaled) == 1.0);
}

TEST_CASE("reference values") {
    CHECK(std::fabs(bessel_j(Order(0), 2.4048256)) <= 1e-6);
    CHECK(bessel_i(Order(0), 1.0) == doctest::Approx(1.2660658777520083).epsilon(1e-14));
    CHECK(std::fabs(bessel_i(Order(0), 1.0) - static_cast<double>(series(0, 1, 1))) <= 1e-12);
    const double q = static_cast<double>(series(2, 1, -1) / series(1, 1, -1));
    CHECK(std::fabs(bessel_j_ratio(Order(1), 1.0) - q) <= 1e-12);
    CHECK(std::fabs(h_func(Order(1), 1.0) - (1.0 - q)) <= 1e-12);
    const double u = static_cast<double>(series(1, 1, 1) / series(0, 1, 1));
    CHECK(std::fabs(g_func(Order(0), 1.0) - u) <= 1e-10);
    CHECK(g_func(Order(0), 1.0) == doctest::Approx(0.44638996589653451).epsilon(1e-13));
}

TEST_CASE("J matches Boost over orders up to 60 and x up to 500") {
    double worst = 0.0;
    for (int twice = 0; twice <= 120; ++twice) {
        const double nu = 0.5 * twice;
        for (double x : log_grid(1e-3, 500.0, 120)) {
            const double ref = boost::math::cyl_bessel_j(nu, x);
            double scale = std::fabs(ref);
            if (x > nu) scale = std::hypot(ref, boost::math::cyl_neumann(nu, x));
            if (scale < 1e-290) continue;
            worst = std::max(worst, std::fabs(bessel_j(Order(nu), x) - ref) / scale);
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("I matches Boost, scaled and unscaled") {
    double worst = 0.0;
    for (int twice = 0; twice <= 120; ++twice) {
        const double nu = 0.5 * twice;
        for (double x : log_grid(1e-3, 500.0, 120)) {
            const double ref = boost::math::cyl_bessel_i(nu, x);
            if (ref < 1e-290) continue;
            worst = std::max(worst, std::fabs(bessel_i(Order(nu), x) - ref) / ref);
            const double scaled = bessel_i(Order(nu), x, Scaling::scaled) * std::exp(x);
            worst = std::max(worst, std::fabs(scaled - ref) / ref);
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("scaled I stays finite where the unscaled value overflows") {
    CHECK_THROWS_AS(bessel_i(Order(0), 800.0), OverflowError);
    const double s = bessel_i(Order(0), 800.0, Scaling::scaled);
    CHECK(s == doctest::Approx(1.0 / std::sqrt(2 * M_PI * 800.0)).epsilon(1e-3));
    CHECK(std::isfinite(bessel_i(Order(3), 1e6, Scaling::scaled)));
}

TEST_CASE("derivatives satisfy the Bessel equations") {
    for (double nu : {0.0, 0.5, 1.0, 3.0, 7.5}) {
        for (double x : {0.3, 1.0, 4.0, 17.0, 60.0}) {
            const Order o(nu);
            const double j = bessel_j(o, x), jp = bessel_j_prime(o, x), jpp = bessel_j_second(o, x);
            CHECK(std::fabs(x * x * jpp + x * jp + (x * x - nu * nu) * j) <= 1e-11 * std::max(1.0, x * x));
            const double i = bessel_i(o, x, Scaling::scaled), ip = bessel_i_prime(o, x, Scaling::scaled),
                         ipp = bessel_i_second(o, x, Scaling::scaled);
            CHECK(std::fabs(x * x * ipp + x * ip - (x * x + nu * nu) * i) <= 1e-11 * std::max(1.0, x * x) * i);
            CHECK(jp == doctest::Approx(boost::math::cyl_bessel_j_prime(nu, x)).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("J ratio and its pole guard") {
    CHECK_THROWS_AS(bessel_j_ratio(Order(0), 2.4048256), PoleError);
    CHECK(std::isfinite(bessel_j_ratio_unchecked(Order(0), 2.4048256)));
    for (double x : {1e-6, 1e-4}) CHECK(bessel_j_ratio(Order(0), x) == doctest::Approx(x / 2).epsilon(1e-6));
    for (double nu : {0.0, 1.5, 4.0})
        for (double x : {0.5, 3.0, 30.0, 2000.0}) {
            const double ref = boost::math::cyl_bessel_j(nu + 1, x) / boost::math::cyl_bessel_j(nu, x);
            CHECK(bessel_j_ratio(Order(nu), x) == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("I ratio and its complement") {
    for (double x : {1e-6, 1e-4}) CHECK(bessel_i_ratio(Order(0), x) == doctest::Approx(x / 2).epsilon(1e-6));
    const double far = bessel_i_ratio(Order(0), 1e6);
    CHECK(far > 0.99);
    CHECK(far < 1.0);
    for (double nu : {0.0, 0.5, 3.0, 20.0})
        for (double x : {1e-3, 0.7, 12.0, 45.0, 400.0, 1e5}) {
            const double u = bessel_i_ratio(Order(nu), x);
            CHECK(u + bessel_i_ratio_complement(Order(nu), x) == doctest::Approx(1.0).epsilon(1e-15));
            if (x <= 400.0) {
                const double ref = boost::math::cyl_bessel_i(nu + 1, x) / boost::math::cyl_bessel_i(nu, x);
                CHECK(u == doctest::Approx(ref).epsilon(1e-12));
            }
        }
}

TEST_CASE("G and H limits") {
    CHECK(g_func(Order(3), 1e-8) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(h_func(Order(2), 1e-8) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::fabs(h_func(Order(0), 3.8317059702075123)) <= 1e-8);
    for (double nu : {0.0, 2.0, 5.5})
        for (double z : {0.1, 2.0, 30.0}) {
            const double h = 1e-5 * z;
            const double fd_g = (g_func(Order(nu), z + h) - g_func(Order(nu), z - h)) / (2 * h);
            CHECK(g_prime(Order(nu), z) == doctest::Approx(fd_g).epsilon(1e-7));
            const double fd_h = (h_func(Order(nu), z + h) - h_func(Order(nu), z - h)) / (2 * h);
            CHECK(h_prime(Order(nu), z) == doctest::Approx(fd_h).epsilon(1e-6));
        }
}

TEST_CASE("Turan margin examples") {
    CHECK(turan_margin(Order(0), 1e-6) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(turan_margin(Order(0), 10.0) < 0.0);
    CHECK(turan_margin(Order(5), 100.0) < 0.0);
    const double i0 = boost::math::cyl_bessel_i(4.0, 3.0);
    const double ref = (boost::math::cyl_bessel_i(3.0, 3.0) * boost::math::cyl_bessel_i(5.0, 3.0) - i0 * i0) / (i0 * i0);
    CHECK(turan_margin(Order(4), 3.0) == doctest::Approx(ref).epsilon(1e-12));
}
