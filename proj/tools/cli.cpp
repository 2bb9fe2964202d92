#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "buckling/characteristic.hpp"
#include "buckling/eigenfunction.hpp"
#include "buckling/errors.hpp"
#include "buckling/spectrum.hpp"
#include "output.hpp"
#include "verify.hpp"

namespace buckling::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Load parameter given either as kappa > 0 or as nu = -kappa^2 < 0.
struct LoadFlags {
    std::optional<double> kappa;
    std::optional<double> nu;

    void add_to(CLI::App* app) {
        auto* k = app->add_option("--kappa", kappa, "Load parameter kappa = sqrt(-nu) > 0");
        auto* n = app->add_option("--nu", nu, "Load parameter nu < 0");
        k->excludes(n);
    }

    double resolve() const {
        if (kappa.has_value() == nu.has_value()) throw UsageError("give exactly one of --kappa or --nu");
        if (nu) {
            if (*nu > 0.0 || std::isnan(*nu))
                throw UsageError("--nu must be negative; nu > 0 is outside the supported regime");
            return std::sqrt(-*nu);
        }
        if (*kappa < 0.0 || std::isnan(*kappa)) throw UsageError("--kappa must be positive");
        return *kappa;
    }
};

struct CommonFlags {
    int dim = 2;
    std::string format = "dat";
    double tol = kDefaultRootTol;

    void add_to(CLI::App* app, bool with_tol = true) {
        app->add_option("--dim", dim, "Space dimension N")->check(CLI::Range(2, 64));
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"dat", "csv", "json"}));
        if (with_tol) app->add_option("--tol", tol, "Relative root tolerance")->check(CLI::Range(1e-16, 1e-3));
    }

    Format fmt() const {
        if (format == "csv") return Format::csv;
        if (format == "json") return Format::json;
        return Format::dat;
    }

    SolveOptions options() const { return {tol, true}; }
};

std::string join(const std::vector<std::string>& args) {
    std::string out;
    for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
    return out;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> out;
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < points; ++i)
        out.push_back(i == 0 ? lo : i == points - 1 ? hi : std::exp(a + (b - a) * i / (points - 1)));
    return out;
}

std::vector<std::pair<std::string, Cell>> point_record(const SpectralPoint& p) {
    return {{"k", std::int64_t{p.mode.k()}},
            {"l", std::int64_t{p.mode.ell()}},
            {"dim", std::int64_t{p.mode.dim()}},
            {"kappa", p.kappa},
            {"nu", -p.kappa * p.kappa},
            {"alpha", p.alpha},
            {"lambda", p.lambda},
            {"beta_sq", p.beta_sq},
            {"bracket_lo", p.bracket_lo},
            {"bracket_hi", p.bracket_hi},
            {"residual", p.residual},
            {"dalpha_dkappa", dalpha_dkappa(p)},
            {"coeff_c", p.coeff_c},
            {"coeff_d", p.coeff_d},
            {"gap_clean", p.gap_clean}};
}

Table profile_table(const RadialProfile& prof) {
    const SpectralPoint& p = prof.point;
    std::string roots;
    for (double r : prof.roots) roots += (roots.empty() ? "" : " ") + format_real(r);
    Table t;
    t.columns = {"r", "R"};
    t.header_in_dat = false;
    t.meta = {{"k", std::int64_t{p.mode.k()}},
              {"l", std::int64_t{p.mode.ell()}},
              {"dim", std::int64_t{p.mode.dim()}},
              {"kappa", p.kappa},
              {"alpha", p.alpha},
              {"lambda", p.lambda},
              {"nodal_count", std::int64_t{prof.nodal_count}},
              {"roots", roots},
              {"gamma", prof.gamma},
              {"max_abs", prof.max_abs}};
    for (const auto& s : prof.samples) t.rows.push_back({s.r, s.value});
    return t;
}

void write_file(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& xy) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    for (const auto& [x, y] : xy) f << format_real(x) << ' ' << format_real(y) << '\n';
    f.close();
    if (!f) throw IoError("write failed for " + path.string());
}

std::string kappa_tag(double kappa) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", kappa);
    return buf;
}

// Writes the nu < 0 figure data families; returns the file names in order.
std::vector<std::string> write_figures(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
    std::vector<std::string> written;

    // lambda curves over nu in [-3200, 0): uniform in nu plus a log tail toward nu = 0.
    std::vector<double> kappas;
    for (int i = 0; i < 400; ++i) {
        double kappa = std::sqrt(3200.0 - 8.0 * i);
        while (kappa * kappa > 3200.0) kappa = std::nextafter(kappa, 0.0);
        kappas.push_back(kappa);
    }
    for (double kappa : log_spaced(1e-3, 2.5, 80)) kappas.push_back(kappa);
    std::vector<std::pair<int, int>> fig1;
    for (int k = 0; k <= 2; ++k)
        for (int ell = 1; ell <= 3; ++ell) fig1.emplace_back(k, ell);
    fig1.emplace_back(3, 1);
    fig1.emplace_back(5, 1);
    for (const auto& [k, ell] : fig1) {
        const auto curve = lambda_curve(ModeIndex(k, ell), kappas);
        std::vector<std::pair<double, double>> xy;
        for (const auto& c : curve) xy.emplace_back(c.nu, c.lambda);
        const std::string name = "eigenval-" + std::to_string(k) + "-" + std::to_string(ell) + ".dat";
        write_file(dir / name, xy);
        written.push_back(name);
    }

    // alpha curves over kappa in (0, 100].
    std::vector<double> ks = log_spaced(1e-3, 0.25, 40);
    ks.pop_back();
    for (int i = 1; i <= 400; ++i) ks.push_back(0.25 * i);
    // The (0,3) / (5,1) crossing is a sample of every alpha curve.
    ks.push_back(find_crossing(ModeIndex(0, 3), ModeIndex(5, 1), 40.0, 50.0, 1e-10).kappa);
    std::sort(ks.begin(), ks.end());
    const std::vector<std::pair<int, int>> fig3 = {{2, 1}, {2, 2}, {0, 1}, {0, 2}, {0, 3},
                                                   {1, 1}, {1, 2}, {1, 3}, {5, 1}};
    for (const auto& [k, ell] : fig3) {
        const ModeIndex m(k, ell);
        std::vector<std::pair<double, double>> xy;
        for (double kappa : ks) xy.emplace_back(kappa, find_alpha(m, kappa).alpha);
        const std::string name = "alpha" + std::to_string(k) + "-" + std::to_string(ell) + ".dat";
        write_file(dir / name, xy);
        written.push_back(name);
    }

    // Normalized radial profiles.
    for (const auto& [k, ell] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}}) {
        for (double kappa : {0.1, 10.0, 30.0, 100.0}) {
            const RadialProfile prof = radial_profile(find_alpha(ModeIndex(k, ell), kappa), 201);
            std::vector<std::pair<double, double>> xy;
            for (const auto& s : prof.samples) xy.emplace_back(s.r, s.value);
            const std::string name =
                "eigenfun-" + std::to_string(k) + "-" + std::to_string(ell) + "-" + kappa_tag(kappa) + ".dat";
            write_file(dir / name, xy);
            written.push_back(name);
        }
    }
    return written;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clamped buckling eigenvalue problem on the unit ball"};
    app.name("buckling");
    app.require_subcommand(1);

    // alpha
    auto* alpha = app.add_subcommand("alpha", "Root alpha_{k,l}(kappa) and its spectral point");
    int a_k = 0, a_l = 1;
    LoadFlags a_load;
    CommonFlags a_common;
    alpha->add_option("--k", a_k, "Harmonic degree k")->required()->check(CLI::NonNegativeNumber);
    alpha->add_option("--l", a_l, "Radial index l >= 1")->required()->check(CLI::PositiveNumber);
    a_load.add_to(alpha);
    a_common.add_to(alpha);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Smallest eigenvalues with mode labels");
    int s_count = 6;
    LoadFlags s_load;
    CommonFlags s_common;
    spectrum->add_option("--count", s_count, "Number of modes")->check(CLI::Range(1, 10000));
    s_load.add_to(spectrum);
    s_common.add_to(spectrum);

    // curve
    auto* curve = app.add_subcommand("curve", "(nu, lambda) samples of one eigenvalue curve");
    int c_k = 0, c_l = 1, c_points = 200;
    double c_min = 0.0, c_max = 0.0;
    CommonFlags c_common;
    curve->add_option("--k", c_k, "Harmonic degree k")->required()->check(CLI::NonNegativeNumber);
    curve->add_option("--l", c_l, "Radial index l >= 1")->required()->check(CLI::PositiveNumber);
    curve->add_option("--kappa-min", c_min, "Smallest kappa")->required();
    curve->add_option("--kappa-max", c_max, "Largest kappa")->required();
    curve->add_option("--points", c_points, "Number of log-spaced samples")->check(CLI::Range(2, 1000000));
    c_common.add_to(curve);

    // eigenfunction
    auto* eigen = app.add_subcommand("eigenfunction", "Normalized radial profile R_{k,l}");
    int e_k = 0, e_l = 1, e_samples = 200;
    LoadFlags e_load;
    CommonFlags e_common;
    eigen->add_option("--k", e_k, "Harmonic degree k")->required()->check(CLI::NonNegativeNumber);
    eigen->add_option("--l", e_l, "Radial index l >= 1")->required()->check(CLI::PositiveNumber);
    eigen->add_option("--samples", e_samples, "Uniform samples on [0, 1]")->check(CLI::Range(64, 1000000));
    e_load.add_to(eigen);
    e_common.add_to(eigen);

    // verify
    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    std::string v_suite = "all";
    std::uint64_t v_seed = 1;
    CommonFlags v_common;
    verify->add_option("--suite", v_suite, "Suite name")
        ->check(CLI::IsMember({"bessel", "brackets", "nodal", "oracle", "all"}));
    verify->add_option("--seed", v_seed, "Seed for randomized cases");
    v_common.add_to(verify, false);

    // figures
    auto* figures = app.add_subcommand("figures", "Write figure data files");
    std::string f_outdir;
    figures->add_option("--outdir", f_outdir, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = join(args);
    try {
        if (alpha->parsed()) {
            const double kappa = a_load.resolve();
            const SpectralPoint p = find_alpha(ModeIndex(a_k, a_l, a_common.dim), kappa, a_common.options());
            write_record(out, point_record(p), a_common.fmt(), command);
        } else if (spectrum->parsed()) {
            const double kappa = s_load.resolve();
            const SpectrumReport rep = enumerate_spectrum_auto(s_common.dim, kappa, s_count, s_common.options());
            Table t;
            t.columns = {"rank", "lambda", "k", "l", "multiplicity"};
            t.meta = {{"dim", std::int64_t{rep.dim}},
                      {"kappa", rep.kappa},
                      {"nu", -rep.kappa * rep.kappa},
                      {"k_max", std::int64_t{rep.k_max}},
                      {"l_max", std::int64_t{rep.l_max}}};
            std::int64_t rank = 1;
            for (const auto& e : rep.entries)
                t.rows.push_back({rank++, e.lambda, std::int64_t{e.mode.k()}, std::int64_t{e.mode.ell()},
                                  e.multiplicity});
            write_table(out, t, s_common.fmt(), command);
        } else if (curve->parsed()) {
            if (!(c_min > 0.0 && c_min < c_max)) throw UsageError("need 0 < --kappa-min < --kappa-max");
            const auto kappas = log_spaced(c_min, c_max, c_points);
            const auto pts = lambda_curve(ModeIndex(c_k, c_l, c_common.dim), kappas, c_common.options());
            Table t;
            t.columns = {"nu", "lambda"};
            t.header_in_dat = false;
            for (const auto& c : pts) t.rows.push_back({c.nu, c.lambda});
            write_table(out, t, c_common.fmt(), command);
        } else if (eigen->parsed()) {
            const double kappa = e_load.resolve();
            const SpectralPoint p = find_alpha(ModeIndex(e_k, e_l, e_common.dim), kappa, e_common.options());
            write_table(out, profile_table(radial_profile(p, e_samples)), e_common.fmt(), command);
        } else if (verify->parsed()) {
            const auto results = run_suite(v_suite, v_seed);
            Table t;
            t.columns = {"suite", "check", "status", "cases", "failures", "detail"};
            bool ok = true;
            for (const auto& r : results) {
                ok = ok && r.pass;
                t.rows.push_back({r.suite, r.name, std::string(r.pass ? "pass" : "fail"), r.cases, r.failures,
                                  r.detail.empty() ? std::string("-") : r.detail});
            }
            t.meta = {{"suite", v_suite},
                      {"seed", static_cast<std::int64_t>(v_seed)},
                      {"result", std::string(ok ? "pass" : "fail")}};
            if (v_common.fmt() == Format::dat) {
                for (const auto& [k, v] : t.meta) out << "# " << k << '=' << format_cell(v) << '\n';
                for (const auto& r : results)
                    out << (r.pass ? "PASS " : "FAIL ") << r.suite << '/' << r.name << " cases=" << r.cases
                        << " failures=" << r.failures << (r.detail.empty() ? "" : " : " + r.detail) << '\n';
            } else {
                write_table(out, t, v_common.fmt(), command);
            }
            return ok ? kExitOk : kExitVerifyFailed;
        } else if (figures->parsed()) {
            for (const auto& name : write_figures(f_outdir)) out << name << '\n';
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NodalMismatchError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNodal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    out.flush();
    if (!out) {
        err << "error: output stream failed\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace buckling::cli
