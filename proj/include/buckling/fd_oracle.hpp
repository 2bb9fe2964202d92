#pragma once

#include <vector>

namespace buckling {

// Radial finite-difference discretization of (L_k^2 - kappa^2) u = lambda (-L_k) u,
// L_k = d^2/dr^2 + (N-1)/r d/dr - k(k+N-2)/r^2, clamped at r = 1.
struct FdProblem {
    int k;
    int dim;
    double kappa;
    int grid_n;  // interior nodes; h = 1 / (grid_n + 1)
};

struct FdMode {
    double lambda;
    std::vector<double> r;  // node radii of the unknowns
    std::vector<double> u;  // eigenvector, normalized to max |u| = 1 with positive first extremum
};

inline constexpr int kFdMinGrid = 200;
inline constexpr int kFdMaxCount = 10;

// The `count` smallest eigenvalues, ascending.
std::vector<double> fd_radial_spectrum(const FdProblem& problem, int count);
std::vector<FdMode> fd_radial_modes(const FdProblem& problem, int count);

}  // namespace buckling
