#include "buckling/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "buckling/errors.hpp"

namespace buckling {

namespace {

constexpr int kIterationCap = 20000;
constexpr double kRayleighTol = 1e-14;

// Symmetric banded matrix with half-bandwidth 2, lower diagonals stored.
struct Penta {
    std::vector<double> d0, d1, d2;  // a_ii, a_{i,i-1}, a_{i,i-2}
    explicit Penta(std::size_t m) : d0(m, 0.0), d1(m, 0.0), d2(m, 0.0) {}
};

struct PentaCholesky {
    std::vector<double> l0, l1, l2;

    explicit PentaCholesky(const Penta& a) : l0(a.d0.size()), l1(a.d0.size()), l2(a.d0.size()) {
        const std::size_t m = a.d0.size();
        for (std::size_t i = 0; i < m; ++i) {
            l2[i] = i >= 2 ? a.d2[i] / l0[i - 2] : 0.0;
            l1[i] = i >= 1 ? (a.d1[i] - (i >= 2 ? l2[i] * l1[i - 1] : 0.0)) / l0[i - 1] : 0.0;
            const double piv = a.d0[i] - l1[i] * l1[i] - l2[i] * l2[i];
            if (!(piv > 0.0))
                throw ConvergenceError("fd oracle: shifted operator is not positive definite", piv);
            l0[i] = std::sqrt(piv);
        }
    }

    void solve(std::vector<double>& x) const {
        const std::size_t m = x.size();
        for (std::size_t i = 0; i < m; ++i) {
            double s = x[i];
            if (i >= 1) s -= l1[i] * x[i - 1];
            if (i >= 2) s -= l2[i] * x[i - 2];
            x[i] = s / l0[i];
        }
        for (std::size_t ii = m; ii-- > 0;) {
            double s = x[ii];
            if (ii + 1 < m) s -= l1[ii + 1] * x[ii + 1];
            if (ii + 2 < m) s -= l2[ii + 2] * x[ii + 2];
            x[ii] = s / l0[ii];
        }
    }
};

// Finite-volume discretization. Cell i around r_i = i h carries the exact
// weighted volume V_i = (r_{i+1/2}^N - r_{i-1/2}^N) / N and face
// conductances g_{i+1/2} = r_{i+1/2}^{N-1} / h, so that A = -W L is the
// symmetric stiffness matrix of the Dirichlet problem.
struct Discretization {
    int m;            // number of unknowns
    int offset;       // node index of unknown 0 (0 with an origin node, else 1)
    double h;
    double g_wall;    // g_{n+1/2}
    std::vector<double> r, vol, a_diag, a_off;  // a_off[j] couples j and j+1
};

Discretization discretize(const FdProblem& p) {
    const int n = p.grid_n;
    const double h = 1.0 / (n + 1);
    const double dim = p.dim;
    const double mu = static_cast<double>(p.k) * (p.k + p.dim - 2);
    const bool origin = (p.k == 0);
    Discretization d;
    d.offset = origin ? 0 : 1;
    d.m = origin ? n + 1 : n;
    d.h = h;
    auto face = [&](double rf) { return std::pow(rf, dim - 1.0) / h; };
    d.g_wall = face((n + 0.5) * h);
    d.r.resize(d.m);
    d.vol.resize(d.m);
    d.a_diag.resize(d.m);
    d.a_off.assign(d.m, 0.0);
    for (int j = 0; j < d.m; ++j) {
        const int i = j + d.offset;
        const double ri = i * h;
        const double rm = std::max(0.0, (i - 0.5) * h);
        const double rp = (i + 0.5) * h;
        d.r[j] = ri;
        d.vol[j] = (std::pow(rp, dim) - std::pow(rm, dim)) / dim;
        const double gm = i == 0 ? 0.0 : face(rm);
        const double gp = face(rp);
        d.a_diag[j] = gm + gp + (i == 0 ? 0.0 : mu * d.vol[j] / (ri * ri));
        if (j + 1 < d.m) d.a_off[j] = -gp;
    }
    return d;
}

void apply_a(const Discretization& d, const std::vector<double>& x, std::vector<double>& y) {
    for (int j = 0; j < d.m; ++j) {
        double s = d.a_diag[j] * x[j];
        if (j > 0) s += d.a_off[j - 1] * x[j - 1];
        if (j + 1 < d.m) s += d.a_off[j] * x[j + 1];
        y[j] = s;
    }
}

// K - sigma A with K = A W^{-1} A + (2 g_wall / h^2) e_last e_last^T - kappa^2 W.
// The wall term is the ghost-point value L u(1) = 2 u_n / h^2 that follows
// from u(1) = u'(1) = 0.
Penta shifted_operator(const Discretization& d, double kappa, double sigma) {
    Penta k(d.m);
    auto a = [&](int i, int j) -> double {
        if (i == j) return d.a_diag[i];
        if (j == i + 1) return d.a_off[i];
        if (i == j + 1) return d.a_off[j];
        return 0.0;
    };
    for (int i = 0; i < d.m; ++i) {
        for (int off = 0; off <= 2 && off <= i; ++off) {
            const int j = i - off;
            double s = 0.0;
            for (int l = std::max(0, i - 1); l <= std::min(d.m - 1, j + 1); ++l)
                s += a(i, l) * a(l, j) / d.vol[l];
            if (off == 0) s -= kappa * kappa * d.vol[i] + sigma * d.a_diag[i];
            if (off == 1) s -= sigma * d.a_off[j];
            (off == 0 ? k.d0 : off == 1 ? k.d1 : k.d2)[i] = s;
        }
    }
    k.d0[d.m - 1] += 2.0 * d.g_wall / (d.h * d.h);
    return k;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// Rayleigh quotient assembled from energies (sums of squares) rather than
// from K x, which would lose digits to the h^{-4} scale of K.
double rayleigh(const Discretization& d, double kappa, const std::vector<double>& x,
                std::vector<double>& scratch, double* a_energy) {
    apply_a(d, x, scratch);
    double lx2 = 0.0;
    double x2 = 0.0;
    for (int j = 0; j < d.m; ++j) {
        lx2 += scratch[j] * scratch[j] / d.vol[j];
        x2 += d.vol[j] * x[j] * x[j];
    }
    const double wall = 2.0 * x[d.m - 1] / (d.h * d.h);
    const double num = lx2 + 0.5 * d.g_wall * d.h * d.h * wall * wall - kappa * kappa * x2;
    const double den = dot(x, scratch);
    if (a_energy) *a_energy = den;
    return num / den;
}

void validate(const FdProblem& p, int count) {
    if (p.dim < 2) throw DomainError("fd oracle: dimension must be >= 2");
    if (p.k < 0) throw DomainError("fd oracle: k must be >= 0");
    if (!(p.kappa > 0.0) || !std::isfinite(p.kappa)) throw DomainError("fd oracle: kappa must be > 0");
    if (p.grid_n < kFdMinGrid)
        throw DomainError("fd oracle: grid_n must be >= " + std::to_string(kFdMinGrid));
    if (count < 1 || count > kFdMaxCount)
        throw DomainError("fd oracle: count must lie in [1, " + std::to_string(kFdMaxCount) + "]");
}

}  // namespace

std::vector<FdMode> fd_radial_modes(const FdProblem& problem, int count) {
    validate(problem, count);
    const Discretization d = discretize(problem);
    // Every eigenvalue exceeds -kappa^2/5 - 1 because the Dirichlet
    // eigenvalues of -L exceed 5 on the unit ball for every N >= 2.
    const double sigma = -problem.kappa * problem.kappa / 5.0 - 1.0;
    const PentaCholesky chol(shifted_operator(d, problem.kappa, sigma));

    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(problem.k));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    std::vector<std::vector<double>> basis;
    std::vector<FdMode> modes;
    std::vector<double> ax(d.m), scratch(d.m);
    for (int c = 0; c < count; ++c) {
        std::vector<double> x(d.m);
        for (double& v : x) v = uni(rng);
        double lambda = 0.0;
        double change = 1.0;
        bool converged = false;
        for (int it = 0; it < kIterationCap; ++it) {
            apply_a(d, x, ax);
            chol.solve(ax);
            x.swap(ax);
            for (const auto& b : basis) {
                apply_a(d, b, scratch);
                const double proj = dot(x, scratch);
                for (int j = 0; j < d.m; ++j) x[j] -= proj * b[j];
            }
            double energy = 0.0;
            const double next = rayleigh(d, problem.kappa, x, scratch, &energy);
            const double norm = std::sqrt(energy);
            for (double& v : x) v /= norm;
            change = std::abs(next - lambda) / std::max(1.0, std::abs(next));
            lambda = next;
            if (it > 2 && change <= kRayleighTol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw ConvergenceError("fd oracle: inverse iteration did not converge for eigenvalue " +
                                       std::to_string(c + 1),
                                   change);
        basis.push_back(x);

        FdMode mode{lambda, d.r, x};
        double peak = 0.0;
        for (double v : x) peak = std::max(peak, std::abs(v));
        double first = 0.0;
        for (double v : x)
            if (std::abs(v) > 1e-3 * peak) {
                first = v;
                break;
            }
        const double scale = (first < 0.0 ? -1.0 : 1.0) / peak;
        for (double& v : mode.u) v *= scale;
        modes.push_back(std::move(mode));
    }
    std::sort(modes.begin(), modes.end(), [](const FdMode& a, const FdMode& b) { return a.lambda < b.lambda; });
    return modes;
}

std::vector<double> fd_radial_spectrum(const FdProblem& problem, int count) {
    std::vector<double> out;
    for (const auto& m : fd_radial_modes(problem, count)) out.push_back(m.lambda);
    return out;
}

}  // namespace buckling
