#pragma once

#include <vector>

#include "buckling/bessel.hpp"

namespace buckling::zeros {

inline constexpr int kMaxZeroIndex = 10000;

// Snapshot of the first zeros of J_nu and J_nu' for one order.
// j[i] holds j_{nu,i+1}; jprime[i] holds j'_{nu,i+1}, with j'_{0,1} = 0.
struct ZeroTable {
    bessel::Order order;
    std::vector<double> j;
    std::vector<double> jprime;
};

// ell-th positive zero of J_nu (ell >= 1).
double j_zero(bessel::Order order, int ell);
// n-th zero of J_nu' (n >= 1); j'_{0,1} is 0 by convention.
double jprime_zero(bessel::Order order, int n);

// First `count` zeros of both kinds. Tables are built lazily, cached per
// order and shared between threads.
ZeroTable zero_table(bessel::Order order, int count);

}  // namespace buckling::zeros
