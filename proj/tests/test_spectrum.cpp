#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "buckling/errors.hpp"
#include "buckling/spectrum.hpp"
#include "buckling/zeros.hpp"

using namespace buckling;
using bessel::Order;

TEST_CASE("eigenvalue map") {
    CHECK(eigenvalue_from_alpha(std::sqrt(7.0), 7.0) == doctest::Approx(0.0).scale(1.0));
    const SpectralPoint p = find_alpha(ModeIndex(0, 3), std::sqrt(1990.587456));
    CHECK(std::fabs(eigenvalue(p) - 75.1003386) <= 2e-3);
    CHECK(eigenvalue(p) == p.lambda);
    const double j11 = zeros::j_zero(Order(1), 1);
    CHECK(std::fabs(find_alpha(ModeIndex(0, 1), 1e-6).lambda - j11 * j11) <= 1e-3);
}

TEST_CASE("harmonic multiplicity") {
    CHECK(harmonic_multiplicity(2, 0) == 1);
    for (int k = 1; k <= 10; ++k) CHECK(harmonic_multiplicity(2, k) == 2);
    for (int k = 0; k <= 10; ++k) CHECK(harmonic_multiplicity(3, k) == 2 * k + 1);
    CHECK(harmonic_multiplicity(4, 2) == 9);
    CHECK_THROWS_AS(harmonic_multiplicity(1, 0), DomainError);
}

TEST_CASE("mode order at nu = -1") {
    const SpectrumReport r = enumerate_spectrum(2, 1.0, 6, 3, 6);
    const std::vector<std::pair<int, int>> expected = {{0, 1}, {1, 1}, {2, 1}, {0, 2}, {3, 1}, {1, 2}};
    REQUIRE(r.entries.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.entries[i].mode.k() == expected[i].first);
        CHECK(r.entries[i].mode.ell() == expected[i].second);
    }
    CHECK(r.entries[0].lambda == doctest::Approx(14.545697196864448).epsilon(1e-13));
    CHECK(r.entries[1].lambda == doctest::Approx(26.317739447778503).epsilon(1e-13));
    CHECK(r.entries[3].lambda == doctest::Approx(49.177855895756576).epsilon(1e-13));
    CHECK(r.entries[5].lambda == doctest::Approx(70.828829820810448).epsilon(1e-13));
    CHECK(r.entries[0].multiplicity == 1);
    CHECK(r.entries[1].multiplicity == 2);
    CHECK(r.min_index == 0);
}

TEST_CASE("auto enumeration agrees with a large fixed grid") {
    for (double kappa : {0.1, 5.0, 60.0}) {
        const SpectrumReport a = enumerate_spectrum_auto(2, kappa, 15);
        const SpectrumReport b = enumerate_spectrum(2, kappa, 30, 12, 15);
        REQUIRE(a.entries.size() == 15);
        for (std::size_t i = 0; i < 15; ++i) {
            CHECK(a.entries[i].mode == b.entries[i].mode);
            CHECK(a.entries[i].lambda == b.entries[i].lambda);
        }
        CHECK(a.entries[0].mode == ModeIndex(0, 1));
    }
}

TEST_CASE("insufficient grids are reported") {
    CHECK_THROWS_AS(enumerate_spectrum(2, 1.0, 1, 1, 3), InsufficientGridError);
    // Six modes fit in k <= 5, l = 1, but (0,2) is missing from that grid.
    CHECK_THROWS_AS(enumerate_spectrum(2, 1.0, 5, 1, 6), InsufficientGridError);
}

TEST_CASE("first eigenvalue") {
    const double j11 = zeros::j_zero(Order(1), 1);
    CHECK(std::fabs(first_eigenvalue(2, 1e-6).lambda - j11 * j11) <= 1e-3);
    double prev = INFINITY;
    for (double kappa : {0.01, 0.5, 3.0, 40.0, 900.0}) {
        const double l1 = first_eigenvalue(2, kappa).lambda;
        CHECK(l1 < prev);
        prev = l1;
    }
    CHECK(first_eigenvalue(2, 1e6).lambda < -1e5);
}

TEST_CASE("lambda curves") {
    std::vector<double> kappas;
    for (int i = 0; i <= 60; ++i) kappas.push_back(std::pow(10.0, -6.0 + 0.13 * i));
    const auto c = lambda_curve(ModeIndex(0, 1), kappas);
    REQUIRE(c.size() == kappas.size());
    for (std::size_t i = 1; i < c.size(); ++i) {
        CHECK(c[i].nu > c[i - 1].nu);
        CHECK(c[i].lambda > c[i - 1].lambda);
    }
    const double j11 = zeros::j_zero(Order(1), 1);
    CHECK(c.back().nu > -1e-11);
    CHECK(std::fabs(c.back().lambda - j11 * j11) <= 1e-3);

    const double at[] = {std::sqrt(1990.587456)};
    const auto d = lambda_curve(ModeIndex(0, 3), at);
    CHECK(std::fabs(d[0].nu + 1990.587456) <= 1e-9);
    CHECK(std::fabs(d[0].lambda - 75.1003386) <= 2e-3);
}

TEST_CASE("crossing of (0,3) and (5,1)") {
    const Crossing c = find_crossing(ModeIndex(0, 3), ModeIndex(5, 1), 30.0, 60.0);
    CHECK(std::fabs(c.kappa - 44.616) <= 1e-3);
    CHECK(std::fabs(c.alpha - 9.79106) <= 5e-4);
    CHECK(std::fabs(c.kappa * c.kappa - 1990.587) <= 0.05);
    const double lambda = eigenvalue_from_alpha(c.alpha, c.kappa);
    CHECK(std::fabs(lambda - 75.1003386) <= 2e-3);

    const double kappa = std::sqrt(1990.587456);
    const SpectrumReport r = enumerate_spectrum_auto(2, kappa, 30);
    double l03 = NAN, l51 = NAN;
    for (const auto& e : r.entries) {
        if (e.mode == ModeIndex(0, 3)) l03 = e.lambda;
        if (e.mode == ModeIndex(5, 1)) l51 = e.lambda;
    }
    CHECK(std::fabs(l03 - l51) <= 2e-3);
}

TEST_CASE("disjoint brackets never cross") {
    CHECK_THROWS_AS(find_crossing(ModeIndex(0, 1), ModeIndex(1, 1), 0.1, 100.0), NoSignChangeError);
    CHECK_THROWS_AS(find_crossing(ModeIndex(0, 1), ModeIndex(1, 1), 5.0, 1.0), DomainError);
}

TEST_CASE("parametrization conversion") {
    CHECK(convert_parametrization(0.0, 0.0) == std::pair<double, double>{-0.0, -0.0});
    CHECK(convert_parametrization(5.0, 2.0) == std::pair<double, double>{-2.0, -5.0});
}
