#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using namespace buckling::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

// Numeric rows of a dat payload, skipping comment lines.
std::vector<std::vector<double>> rows(const std::string& text) {
    std::vector<std::vector<double>> out;
    for (const auto& line : lines(text)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::vector<double> r;
        for (double v; is >> v;) r.push_back(v);
        out.push_back(r);
    }
    return out;
}

std::string meta(const std::string& text, const std::string& key) {
    const std::string prefix = "# " + key + "=";
    for (const auto& line : lines(text))
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    return "<missing>";
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

double field(const std::string& dat_record, const std::string& key) {
    for (const auto& line : lines(dat_record))
        if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(key.size() + 1));
    return NAN;
}

}  // namespace

TEST_CASE("alpha command") {
    auto r = invoke({"alpha", "--k", "0", "--l", "3", "--kappa", "44.616"});
    CHECK(r.code == 0);
    CHECK(std::fabs(field(r.out, "alpha") - 9.79106) <= 5e-4);
    CHECK(field(r.out, "dalpha_dkappa") < 0.0);
    CHECK(field(r.out, "bracket_lo") < field(r.out, "alpha"));

    r = invoke({"alpha", "--k", "0", "--l", "1", "--kappa", "1e-6"});
    CHECK(r.code == 0);
    CHECK(std::fabs(field(r.out, "alpha") - 3.8317) <= 1e-4);

    r = invoke({"alpha", "--k", "0", "--l", "1", "--nu", "-1"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "alpha") == doctest::Approx(3.8228424177298854).epsilon(1e-15));

    r = invoke({"alpha", "--k", "0", "--l", "1", "--kappa", "1", "--dim", "3"});
    CHECK(field(r.out, "alpha") == doctest::Approx(4.4897414850732394).epsilon(1e-15));
}

TEST_CASE("exit codes") {
    auto r = invoke({"alpha", "--k", "0", "--l", "1", "--kappa", "0"});
    CHECK(r.code == 3);
    CHECK(r.err.find("limit") != std::string::npos);
    CHECK(invoke({"spectrum", "--nu", "1"}).code == 2);
    CHECK(invoke({"spectrum", "--kappa", "-1"}).code == 2);
    CHECK(invoke({"spectrum"}).code == 2);
    CHECK(invoke({"spectrum", "--kappa", "1", "--nu", "-1"}).code == 2);
    CHECK(invoke({"alpha", "--k", "0", "--kappa", "1"}).code == 2);
    CHECK(invoke({"alpha", "--k", "0", "--l", "0", "--kappa", "1"}).code == 2);
    CHECK(invoke({"alpha", "--k", "0", "--l", "1", "--kappa", "1", "--format", "xml"}).code == 2);
    CHECK(invoke({"alpha", "--k", "0", "--l", "1", "--kappa", "1e9"}).code == 3);
    CHECK(invoke({"curve", "--k", "0", "--l", "1", "--kappa-min", "5", "--kappa-max", "1"}).code == 2);
    CHECK(invoke({"bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
    r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("spectrum") != std::string::npos);
}

TEST_CASE("spectrum command") {
    auto r = invoke({"spectrum", "--nu", "-1", "--count", "6"});
    REQUIRE(r.code == 0);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 6);
    const int expected[6][2] = {{0, 1}, {1, 1}, {2, 1}, {0, 2}, {3, 1}, {1, 2}};
    for (int i = 0; i < 6; ++i) {
        CHECK(t[i][0] == i + 1);
        CHECK(t[i][2] == expected[i][0]);
        CHECK(t[i][3] == expected[i][1]);
        CHECK(t[i][4] == (expected[i][0] == 0 ? 1 : 2));
    }
    r = invoke({"spectrum", "--kappa", "1", "--count", "1"});
    REQUIRE(r.code == 0);
    CHECK(rows(r.out).at(0)[2] == 0);
    CHECK(rows(r.out).at(0)[3] == 1);

    r = invoke({"spectrum", "--kappa", "2", "--count", "4", "--dim", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("rank,lambda,k,l,multiplicity\n") != std::string::npos);
    CHECK(r.out.find("\n2,") != std::string::npos);
}

TEST_CASE("curve command") {
    auto r = invoke({"curve", "--k", "0", "--l", "1", "--kappa-min", "1e-6", "--kappa-max", "50", "--points", "300"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find('#') == std::string::npos);
    const auto t = rows(r.out);
    REQUIRE(t.size() == 300);
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t[i][0] > t[i - 1][0]);
        CHECK(t[i][1] > t[i - 1][1]);
    }
    CHECK(std::fabs(t.back()[1] - 14.68197) <= 1e-3);

    r = invoke({"curve", "--k", "0", "--l", "3", "--kappa-min", "40", "--kappa-max", "50", "--points", "2001"});
    REQUIRE(r.code == 0);
    const auto c = rows(r.out);
    const double nu0 = -1990.587456;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i - 1][0] <= nu0 && nu0 <= c[i][0]) {
            const double w = (nu0 - c[i - 1][0]) / (c[i][0] - c[i - 1][0]);
            CHECK(std::fabs(c[i - 1][1] + w * (c[i][1] - c[i - 1][1]) - 75.1003386) <= 2e-3);
        }
}

TEST_CASE("eigenfunction command") {
    auto r = invoke({"eigenfunction", "--k", "0", "--l", "2", "--kappa", "10"});
    REQUIRE(r.code == 0);
    CHECK(meta(r.out, "nodal_count") == "1");
    CHECK(rows(r.out).size() == 200);

    r = invoke({"eigenfunction", "--k", "1", "--l", "1", "--kappa", "100"});
    REQUIRE(r.code == 0);
    CHECK(meta(r.out, "nodal_count") == "0");

    r = invoke({"eigenfunction", "--k", "0", "--l", "1", "--kappa", "0.1"});
    REQUIRE(r.code == 0);
    const auto t = rows(r.out);
    CHECK(t.front()[1] == 1.0);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i][1] < t[i - 1][1]);
    CHECK(invoke({"eigenfunction", "--k", "0", "--l", "1", "--kappa", "1", "--samples", "10"}).code == 2);
}

TEST_CASE("json payloads") {
    auto r = invoke({"spectrum", "--kappa", "3", "--count", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "spectrum --kappa 3 --count 5 --format json");
    REQUIRE(j["records"].size() == 5);
    CHECK(j["records"][0]["k"] == 0);
    CHECK(j["records"][0]["l"] == 1);
    CHECK(j["meta"]["dim"] == 2);

    r = invoke({"eigenfunction", "--k", "0", "--l", "3", "--kappa", "2", "--format", "json"});
    const auto e = nlohmann::json::parse(r.out);
    CHECK(e["meta"]["nodal_count"] == 2);
    CHECK(e["records"].size() == 200);
    // Reals carry 17 significant digits.
    const auto at = r.out.find("\"alpha\": ");
    REQUIRE(at != std::string::npos);
    const std::string digits = r.out.substr(at + 9, r.out.find(',', at) - at - 9);
    CHECK(digits.size() == 18);
    CHECK(std::string(e["meta"]["roots"]).find(' ') != std::string::npos);
}

TEST_CASE("determinism") {
    const std::vector<std::vector<std::string>> cases = {
        {"alpha", "--k", "4", "--l", "2", "--kappa", "7.5", "--format", "json"},
        {"spectrum", "--nu", "-30", "--count", "12", "--format", "csv"},
        {"eigenfunction", "--k", "2", "--l", "3", "--kappa", "30"},
        {"verify", "--suite", "bessel", "--seed", "7"},
    };
    for (const auto& args : cases) {
        const auto a = invoke(args);
        const auto b = invoke(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("golden outputs") {
    struct Golden {
        const char* file;
        std::vector<std::string> args;
    };
    const std::vector<Golden> cases = {
        {"alpha_k0_l3.json", {"alpha", "--k", "0", "--l", "3", "--kappa", "44.616", "--format", "json"}},
        {"alpha_k2_l1_dim3.dat", {"alpha", "--k", "2", "--l", "1", "--kappa", "5", "--dim", "3"}},
        {"spectrum_nu-1.dat", {"spectrum", "--nu", "-1", "--count", "6"}},
        {"spectrum_kappa10_dim3.csv", {"spectrum", "--kappa", "10", "--count", "8", "--dim", "3", "--format", "csv"}},
        {"curve_k1_l2.dat", {"curve", "--k", "1", "--l", "2", "--kappa-min", "0.01", "--kappa-max", "100", "--points", "25"}},
        {"eigenfunction_k0_l2.json", {"eigenfunction", "--k", "0", "--l", "2", "--kappa", "10", "--samples", "64", "--format", "json"}},
    };
    for (const auto& g : cases) {
        INFO(g.file);
        const auto r = invoke(g.args);
        REQUIRE(r.code == 0);
        const fs::path path = fs::path(GOLDEN_DIR) / g.file;
        REQUIRE(fs::exists(path));
        CHECK(r.out == slurp(path));
    }
}

TEST_CASE("verify command") {
    for (const char* suite : {"bessel", "brackets", "nodal", "oracle"}) {
        INFO(suite);
        const auto r = invoke({"verify", "--suite", suite});
        CHECK(r.code == 0);
        CHECK(meta(r.out, "result") == "pass");
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
    const auto j = invoke({"verify", "--suite", "bessel", "--format", "json"});
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["meta"]["result"] == "pass");
    CHECK(parsed["records"].size() > 0);
    CHECK(invoke({"verify", "--suite", "nothing"}).code == 2);
}

TEST_CASE("figures command") {
    const fs::path dir = fs::temp_directory_path() / "buckling_figures_test";
    fs::remove_all(dir);
    const auto r = invoke({"figures", "--outdir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 11 + 9 + 12);

    for (const char* name : {"eigenval-0-1.dat", "eigenval-0-3.dat", "eigenval-2-3.dat", "eigenval-5-1.dat"}) {
        INFO(name);
        const auto t = rows(slurp(dir / name));
        REQUIRE(t.size() > 100);
        CHECK(t.front()[0] >= -3200.0);
        CHECK(t.back()[0] < 0.0);
        for (std::size_t i = 1; i < t.size(); ++i) {
            CHECK(t[i][0] > t[i - 1][0]);
            CHECK(t[i][1] > t[i - 1][1]);
        }
    }

    bool hit = false;
    for (const auto& row : rows(slurp(dir / "alpha0-3.dat")))
        if (std::fabs(row[0] - 44.616) <= 1e-3 && std::fabs(row[1] - 9.79106) <= 5e-4) hit = true;
    CHECK(hit);
    const auto a = rows(slurp(dir / "alpha2-1.dat"));
    CHECK(a.back()[0] == 100.0);
    CHECK(a.front()[0] > 0.0);

    for (const char* kappa : {"0.1", "10", "30", "100"}) {
        const auto t = rows(slurp(dir / (std::string("eigenfun-0-1-") + kappa + ".dat")));
        double peak = 0.0;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            CHECK(t[i][1] > 0.0);
            peak = std::max(peak, std::fabs(t[i][1]));
        }
        CHECK(peak == 1.0);
        const auto u = rows(slurp(dir / (std::string("eigenfun-0-2-") + kappa + ".dat")));
        int changes = 0;
        for (std::size_t i = 1; i + 1 < u.size(); ++i)
            if ((u[i][1] > 0) != (u[i - 1][1] > 0)) ++changes;
        CHECK(changes == 1);
    }

    const auto again = invoke({"figures", "--outdir", (dir / "second").string()});
    CHECK(again.code == 0);
    CHECK(slurp(dir / "alpha1-3.dat") == slurp(dir / "second" / "alpha1-3.dat"));
    fs::remove_all(dir);

    std::ofstream(fs::temp_directory_path() / "buckling_not_a_dir") << "x";
    CHECK(invoke({"figures", "--outdir", (fs::temp_directory_path() / "buckling_not_a_dir" / "sub").string()}).code == 5);
    fs::remove(fs::temp_directory_path() / "buckling_not_a_dir");
}
