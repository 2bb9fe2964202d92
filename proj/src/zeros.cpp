#include "buckling/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "buckling/errors.hpp"

namespace buckling::zeros {

namespace {

using bessel::Order;

constexpr int kNewtonCap = 50;
constexpr double kScanStep = 0.5;
// Consecutive zeros of J_nu are more than 3.1 apart for every nu >= 0.
constexpr double kMinSpacing = 3.0;

// Newton on f/f' safeguarded by the sign-change interval [a, b]; falls back
// to bisection whenever a step leaves the interval.
template <class F, class DF>
double refine(F f, DF df, double a, double b, double guess) {
    double fa = f(a);
    double x = (guess > a && guess < b) ? guess : 0.5 * (a + b);
    for (int it = 0; it < kNewtonCap; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        const double step = fx / df(x);
        double next = x - step;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) return next;
        x = next;
    }
    // Bisection to the end of the safeguard interval.
    while (b - a > 4.0 * std::numeric_limits<double>::epsilon() * b) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double mcmahon_j(double nu, int ell) {
    const double beta = (ell + 0.5 * nu - 0.25) * std::numbers::pi;
    const double mu = 4.0 * nu * nu;
    const double b8 = 8.0 * beta;
    return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
}

double mcmahon_jprime(double nu, int n) {
    const double beta = (n + 0.5 * nu - 0.75) * std::numbers::pi;
    const double mu = 4.0 * nu * nu;
    const double b8 = 8.0 * beta;
    return beta - (mu + 3.0) / b8 - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * b8 * b8 * b8);
}

class Table {
public:
    explicit Table(Order order) : order_(order) {}

    double j(int ell) {
        std::lock_guard lock(mutex_);
        extend_j(ell);
        return j_[ell - 1];
    }

    double jprime(int n) {
        std::lock_guard lock(mutex_);
        extend_jprime(n);
        return jp_[n - 1];
    }

    ZeroTable snapshot(int count) {
        std::lock_guard lock(mutex_);
        extend_jprime(count);
        return ZeroTable{order_, {j_.begin(), j_.begin() + count},
                         {jp_.begin(), jp_.begin() + count}};
    }

private:
    void extend_j(int ell) {
        const double nu = order_.value();
        auto f = [&](double x) { return bessel::bessel_j(order_, x); };
        auto df = [&](double x) { return bessel::bessel_j_prime(order_, x); };
        while (static_cast<int>(j_.size()) < ell) {
            const int index = static_cast<int>(j_.size()) + 1;
            double a = j_.empty() ? nu : j_.back() + kMinSpacing;
            double fa = f(a);
            double b = a + kScanStep;
            double fb = f(b);
            while ((fa < 0.0) == (fb < 0.0) && fb != 0.0) {
                a = b;
                fa = fb;
                b += kScanStep;
                fb = f(b);
            }
            j_.push_back(fb == 0.0 ? b : refine(f, df, a, b, mcmahon_j(nu, index)));
        }
    }

    void extend_jprime(int n) {
        extend_j(n);
        const double nu = order_.value();
        auto f = [&](double x) { return bessel::bessel_j_prime(order_, x); };
        auto df = [&](double x) { return bessel::bessel_j_second(order_, x); };
        while (static_cast<int>(jp_.size()) < n) {
            const int index = static_cast<int>(jp_.size()) + 1;
            if (index == 1 && nu == 0.0) {
                jp_.push_back(0.0);
                continue;
            }
            // J_nu' > 0 on (0, j'_{nu,1}] side of nu; critical points
            // interlace with the zeros.
            const double a = (index == 1) ? std::max(nu, 1e-3) : j_[index - 2];
            const double b = j_[index - 1];
            jp_.push_back(refine(f, df, a, b, mcmahon_jprime(nu, index)));
        }
    }

    Order order_;
    std::mutex mutex_;
    std::vector<double> j_;
    std::vector<double> jp_;
};

Table& table_for(Order order) {
    static std::mutex registry_mutex;
    static std::map<double, std::unique_ptr<Table>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[order.value()];
    if (!slot) slot = std::make_unique<Table>(order);
    return *slot;
}

void check_index(int index, const char* fn) {
    if (index < 1 || index > kMaxZeroIndex)
        throw DomainError(std::string(fn) + ": index must be in [1, " +
                          std::to_string(kMaxZeroIndex) + "], got " + std::to_string(index));
}

}  // namespace

double j_zero(Order order, int ell) {
    check_index(ell, "j_zero");
    return table_for(order).j(ell);
}

double jprime_zero(Order order, int n) {
    check_index(n, "jprime_zero");
    return table_for(order).jprime(n);
}

ZeroTable zero_table(Order order, int count) {
    check_index(count, "zero_table");
    return table_for(order).snapshot(count);
}

}  // namespace buckling::zeros
