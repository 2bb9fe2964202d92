#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "buckling/bessel.hpp"
#include "buckling/characteristic.hpp"
#include "buckling/eigenfunction.hpp"
#include "buckling/errors.hpp"
#include "buckling/fd_oracle.hpp"
#include "buckling/spectrum.hpp"

namespace buckling::cli {

namespace {

using bessel::Order;

// Accumulates cases for one named check and keeps the first failure.
class Check {
public:
    Check(std::string suite, std::string name) : suite_(std::move(suite)), name_(std::move(name)) {}

    template <class Describe>
    void expect(bool ok, Describe&& describe) {
        ++cases_;
        if (ok) return;
        if (failures_++ == 0) detail_ = describe();
    }

    void note(std::string text) { note_ = std::move(text); }

    CheckResult result() const {
        return {suite_, name_, failures_ == 0, cases_, failures_, failures_ ? detail_ : note_};
    }

private:
    std::string suite_;
    std::string name_;
    std::int64_t cases_ = 0;
    std::int64_t failures_ = 0;
    std::string detail_;
    std::string note_;
};

template <class... Args>
std::string describe(const Args&... args) {
    std::ostringstream os;
    os.precision(17);
    ((os << args), ...);
    return os.str();
}

std::string mode_label(const ModeIndex& m, double kappa) {
    return describe("N=", m.dim(), " k=", m.k(), " l=", m.ell(), " kappa=", kappa);
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out;
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < points; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
    return out;
}

// Independent extended-precision power series for the small-argument oracle.
long double series_j(long double nu, long double x) {
    const long double h = x / 2;
    long double term = std::pow(h, nu) / std::tgamma(nu + 1);
    long double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -h * h / (m * (m + nu));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    }
    return sum;
}

long double series_i(long double nu, long double x) {
    const long double h = x / 2;
    long double term = std::pow(h, nu) / std::tgamma(nu + 1);
    long double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= h * h / (m * (m + nu));
        sum += term;
        if (term < 1e-22L * sum) break;
    }
    return sum;
}

std::vector<CheckResult> suite_bessel(std::uint64_t seed) {
    const std::string s = "bessel";
    std::vector<double> orders;
    for (int i = 0; i <= 40; ++i) orders.push_back(0.5 * i);
    const std::vector<double> zs = log_grid(1e-6, 1e6, 121);

    Check turan(s, "turan_margin_negative");
    Check ratio(s, "i_ratio_in_unit_interval");
    Check bound(s, "i_ratio_below_upper_bound");
    Check g_mono(s, "g_increasing");
    Check g_lower(s, "g_lower_bound");
    for (double nu : orders) {
        const Order o(nu);
        double g_prev = -1.0;
        for (double z : zs) {
            const double tm = bessel::turan_margin(o, z);
            turan.expect(tm < 0.0, [&] { return describe("nu=", nu, " z=", z, " margin=", tm); });
            const double u = bessel::bessel_i_ratio(o, z);
            ratio.expect(u > 0.0 && u < 1.0, [&] { return describe("nu=", nu, " z=", z, " u=", u); });
            const double ub = bessel::i_ratio_upper_bound(o, z);
            bound.expect(u < ub || (nu == 0.0 && u < 1.0),
                         [&] { return describe("nu=", nu, " z=", z, " u=", u, " bound=", ub); });
            const double g = bessel::g_func(o, z);
            g_mono.expect(g > g_prev && bessel::g_prime(o, z) > 0.0,
                          [&] { return describe("nu=", nu, " z=", z, " G=", g, " previous=", g_prev); });
            g_prev = g;
            const double lm = bessel::g_lower_bound_margin(o, z);
            g_lower.expect(lm > 0.0, [&] { return describe("nu=", nu, " z=", z, " margin=", lm); });
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_x(std::log(0.1), std::log(100.0));
    Check rec_j(s, "j_three_term_recurrence");
    Check rec_i(s, "i_three_term_recurrence");
    for (int i = 0; i < 2000; ++i) {
        const double nu = 1.0 + 0.5 * static_cast<int>(rng() % 39);
        const double x = std::exp(log_x(rng));
        const double jm = bessel::bessel_j(Order(nu - 1), x);
        const double j0 = bessel::bessel_j(Order(nu), x);
        const double jp = bessel::bessel_j(Order(nu + 1), x);
        const double rj = std::fabs(2 * nu * j0 / x - jm - jp);
        const double scale_j = std::max({1e-300, std::fabs(jm), std::fabs(jp), std::fabs(2 * nu * j0 / x)});
        rec_j.expect(rj <= 1e-10 * std::max(scale_j, 1e-3) || rj <= 1e-12 * scale_j,
                     [&] { return describe("nu=", nu, " x=", x, " residual=", rj); });
        const double im = bessel::bessel_i(Order(nu - 1), x, bessel::Scaling::scaled);
        const double i0 = bessel::bessel_i(Order(nu), x, bessel::Scaling::scaled);
        const double ip = bessel::bessel_i(Order(nu + 1), x, bessel::Scaling::scaled);
        const double ri = std::fabs(2 * nu * i0 / x - im + ip);
        rec_i.expect(ri <= 1e-12 * im, [&] { return describe("nu=", nu, " x=", x, " residual=", ri / im); });
    }

    Check scaled(s, "scaled_matches_unscaled");
    Check series(s, "small_argument_series");
    for (double nu : orders) {
        const Order o(nu);
        for (double x : log_grid(1e-3, 700.0, 60)) {
            const double a = bessel::bessel_i(o, x);
            const double b = bessel::bessel_i(o, x, bessel::Scaling::scaled) * std::exp(x);
            if (!(std::isfinite(a) && std::isfinite(b)) || a < 1e-290) continue;
            scaled.expect(std::fabs(a - b) <= 1e-12 * a,
                          [&] { return describe("nu=", nu, " x=", x, " unscaled=", a, " scaled*e^x=", b); });
        }
        for (double x : log_grid(1e-3, 8.0, 40)) {
            const long double jr = series_j(nu, x);
            const double jv = bessel::bessel_j(o, x);
            series.expect(std::fabs(jv - static_cast<double>(jr)) <= 1e-13 * std::max(1e-3L, std::fabs(jr)),
                          [&] { return describe("J nu=", nu, " x=", x, " value=", jv); });
            const long double ir = series_i(nu, x);
            const double iv = bessel::bessel_i(o, x);
            series.expect(std::fabs(iv - static_cast<double>(ir)) <= 1e-13 * ir,
                          [&] { return describe("I nu=", nu, " x=", x, " value=", iv); });
        }
    }
    return {turan.result(), ratio.result(), bound.result(), g_mono.result(), g_lower.result(),
            rec_j.result(), rec_i.result(), scaled.result(), series.result()};
}

std::vector<CheckResult> suite_brackets(std::uint64_t seed, int dim) {
    const std::string s = dim == 2 ? "brackets" : "brackets_N" + std::to_string(dim);
    const std::vector<double> kappas = log_grid(1e-3, 1e3, 13);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Check inside(s, "root_strictly_inside_bracket");
    Check resid(s, "residual_le_1e-10");
    Check simple(s, "simple_root");
    Check mono(s, "alpha_lambda_decreasing");
    Check deriv(s, "dalpha_dkappa_negative");
    Check gap(s, "gap_clean");
    Check endpoints(s, "endpoint_signs_opposite");
    Check consistent(s, "det_ratio_sign_consistent");
    Check central(s, "dalpha_dkappa_central_difference");

    struct Sample {
        ModeIndex mode;
        double kappa;
    };
    std::vector<Sample> chosen;
    for (int k = 0; k <= 12; ++k) {
        for (int ell = 1; ell <= 6; ++ell) {
            const ModeIndex m(k, ell, dim);
            double a_prev = INFINITY;
            double l_prev = INFINITY;
            for (double kappa : kappas) {
                const SpectralPoint p = find_alpha(m, kappa);
                const auto label = [&] { return mode_label(m, kappa); };
                inside.expect(p.bracket_lo < p.alpha && p.alpha < p.bracket_hi, label);
                const double raw = std::fabs(f_tilde(m, kappa, p.alpha));
                resid.expect(p.residual <= 1e-10 && raw <= 1e-10,
                             [&] { return label() + describe(" residual=", p.residual, " raw=", raw); });
                const double slope = f_tilde_dalpha(m, kappa, p.alpha);
                simple.expect(slope > 0.0, [&] { return label() + describe(" dF/dalpha=", slope); });
                mono.expect(p.alpha < a_prev && p.lambda < l_prev, label);
                a_prev = p.alpha;
                l_prev = p.lambda;
                const double d = dalpha_dkappa(p);
                deriv.expect(d < 0.0, [&] { return label() + describe(" dalpha/dkappa=", d); });
                gap.expect(p.gap_clean, label);

                const double f_lo = f_det(m, kappa, p.bracket_lo);
                const double f_hi = f_det(m, kappa, p.bracket_hi);
                endpoints.expect((f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0),
                                 [&] { return label() + describe(" F(lo)=", f_lo, " F(hi)=", f_hi); });

                const double width = p.bracket_hi - p.bracket_lo;
                for (int t = 0; t < 100; ++t) {
                    const double a = p.bracket_lo + width * (0.001 + 0.998 * unit(rng));
                    const double jn = bessel::bessel_j(m.order(), a);
                    const double fd = f_det(m, kappa, a);
                    if (std::fabs(jn) < 1e-6 || std::fabs(fd) < 1e-12) continue;
                    const double ft = f_tilde(m, kappa, a);
                    consistent.expect((fd > 0.0) == ((ft > 0.0) == (jn > 0.0)),
                                      [&] { return label() + describe(" alpha=", a); });
                }
                if (unit(rng) < 0.1) chosen.push_back({m, kappa});
            }
        }
    }
    // Central differences with one Richardson step at a seeded subset of the
    // grid points where rounding in alpha cannot mask a 1e-5 discrepancy.
    std::shuffle(chosen.begin(), chosen.end(), rng);
    const SolveOptions tight{1e-15, false};
    int taken = 0;
    std::int64_t skipped = 0;
    for (const auto& [m, kappa] : chosen) {
        if (taken == 20) break;
        const SpectralPoint p = find_alpha(m, kappa);
        const double analytic = dalpha_dkappa(p);
        const double h = std::min(0.2 * kappa, 0.01 * p.alpha * p.alpha);
        const double noise_floor = 2.0 * std::numeric_limits<double>::epsilon() * p.alpha / (h * std::fabs(analytic));
        if (noise_floor > 1e-6) {
            ++skipped;
            continue;
        }
        ++taken;
        auto diff = [&](double step) {
            return (find_alpha(m, kappa + step, tight).alpha - find_alpha(m, kappa - step, tight).alpha) /
                   (2 * step);
        };
        const double numeric = (4 * diff(h / 2) - diff(h)) / 3;
        const double rel = std::fabs(numeric - analytic) / std::fabs(analytic);
        central.expect(rel <= 1e-5, [&] { return mode_label(m, kappa) + describe(" relative=", rel); });
    }
    central.note(describe("skipped ", skipped, " points below the rounding floor"));
    return {inside.result(), resid.result(),     simple.result(),     mono.result(),   deriv.result(),
            gap.result(),    endpoints.result(), consistent.result(), central.result()};
}

std::vector<CheckResult> suite_nodal(int dim) {
    const std::string s = dim == 2 ? "nodal" : "nodal_N" + std::to_string(dim);
    Check count(s, "nodal_count");
    Check simple(s, "roots_simple");
    Check pattern(s, "sign_pattern");
    Check gamma(s, "gamma_positive");
    Check wall(s, "wall_curvature_sign");
    Check boundary(s, "boundary_residual");
    Check positive(s, "first_radial_mode_positive");
    Check monotone(s, "first_mode_decreasing");
    for (double kappa : {0.1, 1.0, 10.0, 100.0}) {
        for (int k = 0; k <= 5; ++k) {
            for (int ell = 1; ell <= 5; ++ell) {
                const ModeIndex m(k, ell, dim);
                const SpectralPoint p = find_alpha(m, kappa);
                const auto label = [&] { return mode_label(m, kappa); };
                std::optional<RadialProfile> held;
                try {
                    held = radial_profile(p, 400);
                } catch (const NodalMismatchError& e) {
                    count.expect(false, [&] { return label() + " " + e.what(); });
                    continue;
                }
                const RadialProfile& prof = *held;
                count.expect(prof.nodal_count == ell - 1, label);
                for (double r : prof.roots) {
                    const double slope = radial_derivative(p, r);
                    simple.expect(std::fabs(slope) > 1e-8 * prof.max_abs,
                                  [&] { return label() + describe(" r=", r, " R'=", slope); });
                }
                pattern.expect(check_sign_pattern(prof), label);
                gamma.expect(check_gamma_positive(p), label);
                const double d2 = wall_second_derivative(p);
                const bool even = ell % 2 == 0;
                wall.expect(even ? d2 < 0.0 : d2 > 0.0, [&] { return label() + describe(" R''(1)=", d2); });
                const BoundaryResidual br = boundary_residual(p);
                boundary.expect(std::fabs(br.value) <= 1e-10 && std::fabs(br.slope) <= 1e-10,
                                [&] { return label() + describe(" rows=", br.value, ",", br.slope); });
                if (ell == 1) {
                    bool pos = true;
                    for (const auto& smp : prof.samples)
                        if (smp.r > 0.0 && smp.r < 1.0 && !(smp.value > 0.0)) pos = false;
                    if (k == 0 && dim == 2 && !(prof.samples.front().value > 0.0)) pos = false;
                    positive.expect(pos, label);
                }
                if (k == 0 && ell == 1) monotone.expect(check_first_mode_monotone(p, 400), label);
            }
        }
    }
    return {count.result(),    simple.result(),   pattern.result(),  gamma.result(),
            wall.result(),     boundary.result(), positive.result(), monotone.result()};
}

std::vector<CheckResult> suite_oracle() {
    const std::string s = "oracle";
    Check agree(s, "fd_matches_analytic_1e-3");
    Check order(s, "fd_convergence_order");
    double worst = 0.0;
    double order_lo = INFINITY;
    double order_hi = -INFINITY;
    for (int dim : {2, 3}) {
        for (double kappa : {0.5, 1.0, 10.0}) {
            for (int k = 0; k <= 2; ++k) {
                const auto fine = fd_radial_spectrum({k, dim, kappa, 4000}, 3);
                const auto coarse = fd_radial_spectrum({k, dim, kappa, 2000}, 3);
                for (int ell = 1; ell <= 3; ++ell) {
                    const ModeIndex m(k, ell, dim);
                    const double exact = find_alpha(m, kappa).lambda;
                    const double e_fine = std::fabs(fine[ell - 1] - exact) / std::fabs(exact);
                    const double e_coarse = std::fabs(coarse[ell - 1] - exact) / std::fabs(exact);
                    worst = std::max(worst, e_fine);
                    agree.expect(e_fine <= 1e-3,
                                 [&] { return mode_label(m, kappa) + describe(" relative=", e_fine); });
                    const double p = std::log2(e_coarse / e_fine);
                    order_lo = std::min(order_lo, p);
                    order_hi = std::max(order_hi, p);
                    order.expect(std::fabs(p - 2.0) <= 0.3,
                                 [&] { return mode_label(m, kappa) + describe(" order=", p); });
                }
            }
        }
    }
    agree.note(describe("worst relative error ", worst));
    order.note(describe("order range [", order_lo, ", ", order_hi, "]"));
    return {agree.result(), order.result()};
}

void append(std::vector<CheckResult>& out, std::vector<CheckResult> more) {
    out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const bool all = suite == "all";
    if (!all && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
        throw DomainError("verify: unknown suite '" + suite + "'");
    if (all || suite == "bessel") append(out, suite_bessel(seed));
    if (all || suite == "brackets") {
        append(out, suite_brackets(seed, 2));
        append(out, suite_brackets(seed + 1, 3));
    }
    if (all || suite == "nodal") {
        append(out, suite_nodal(2));
        append(out, suite_nodal(3));
    }
    if (all || suite == "oracle") append(out, suite_oracle());
    return out;
}

}  // namespace buckling::cli
