#pragma once

// Reference computations written independently of the library so that tests
// compare two implementations. Deliberately naive.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// Central angle from cos(alpha/2) = c * sin(beta/2).
inline double beta(double alpha, double c) {
    return 2.0 * std::asin(std::cos(alpha / 2.0) / c);
}

inline double fd1(const std::function<double(double)>& f, double t, double h = 1e-6) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline double fd2(const std::function<double(double)>& f, double t, double h = 1e-4) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

// Plain bisection for an increasing function with f(lo) < 0 < f(hi).
inline double bisect_increasing(const std::function<double(double)>& f, double lo, double hi, int iters = 300) {
    for (int k = 0; k < iters; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// cosh x of the circle tangent to every side of a polygon with the given angles.
inline double circumscribed_cosh(const std::vector<double>& angles) {
    auto excess = [&](double c) {
        double s = 0.0;
        for (double a : angles) {
            s += beta(a, c);
        }
        return 2.0 * pi - s;  // increasing in c
    };
    double hi = 2.0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
    }
    double lo = 1.0;
    for (double a : angles) {
        lo = std::max(lo, std::cos(a / 2.0));
    }
    return bisect_increasing(excess, lo, hi);
}

struct Census {
    std::vector<int> A;  // A[i-1], i = 1 .. l-1
    std::vector<int> B;  // B[j-3], j = 3 .. l
    int w = 0;
    int n = 0;
};

// Nested loops over count vectors with entries in [0, l], filtered by the
// three equations. Partial sums above l are skipped. Only for small l.
inline std::vector<Census> brute_force_censuses(int l) {
    std::vector<Census> out;
    const int na = l - 1;
    const int nb = l - 2;
    std::vector<int> a(static_cast<std::size_t>(na), 0);
    std::vector<int> b(static_cast<std::size_t>(nb), 0);
    std::function<void(int)> loop_b;
    std::function<void(int)> loop_a = [&](int pos) {
        if (pos == na) {
            int sum = 0;
            for (int v : a) sum += v;
            if (sum == l) loop_b(0);
            return;
        }
        int used = 0;
        for (int k = 0; k < pos; ++k) used += a[static_cast<std::size_t>(k)];
        for (int v = 0; v + used <= l; ++v) {
            a[static_cast<std::size_t>(pos)] = v;
            loop_a(pos + 1);
        }
        a[static_cast<std::size_t>(pos)] = 0;
    };
    loop_b = [&](int pos) {
        if (pos == nb) {
            int w = 0;
            int deg = 0;
            for (int i = 1; i <= na; ++i) deg += i * a[static_cast<std::size_t>(i - 1)];
            for (int j = 3; j <= l; ++j) {
                deg += j * b[static_cast<std::size_t>(j - 3)];
                w += b[static_cast<std::size_t>(j - 3)];
            }
            if (w <= l - 2 && deg == 2 * (l + w - 1)) out.push_back({a, b, w, deg});
            return;
        }
        int used = 0;
        for (int k = 0; k < pos; ++k) used += b[static_cast<std::size_t>(k)];
        for (int v = 0; v + used <= l; ++v) {
            b[static_cast<std::size_t>(pos)] = v;
            loop_b(pos + 1);
        }
        b[static_cast<std::size_t>(pos)] = 0;
    };
    loop_a(0);
    return out;
}

// Incircle equation of a census, written out term by term.
inline double h(const Census& c, int l, double beta) {
    double s = -2.0 * pi;
    for (int i = 1; i <= l - 1; ++i) {
        s += i * c.A[static_cast<std::size_t>(i - 1)] * 2.0 *
             std::asin(2.0 * std::cos(pi / (3.0 * i)) * std::sin(beta / 2.0));
    }
    for (int j = 3; j <= l; ++j) {
        s += j * c.B[static_cast<std::size_t>(j - 3)] * 2.0 *
             std::asin(std::min(1.0, 2.0 * std::cos(pi / j) * std::sin(beta / 2.0)));
    }
    return s;
}

inline double incircle_x(const Census& c, int l) {
    const double K = 2.0 * std::asin(1.0 / (2.0 * std::cos(pi / (3.0 * (l - 1)))));
    const double beta = bisect_increasing([&](double t) { return h(c, l, t); }, 0.0, K);
    return std::acosh(1.0 / (2.0 * std::sin(beta / 2.0)));
}

inline double circle_area(double x) {
    return 2.0 * pi * (std::cosh(x) - 1.0);
}

}  // namespace oracle
