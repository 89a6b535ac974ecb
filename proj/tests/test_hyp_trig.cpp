#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypin/errors.hpp"
#include "hypin/hyp_trig.hpp"
#include "oracles.hpp"

#include <random>

using namespace hypin;

namespace {
CoshRadius ch(double c) { return CoshRadius::from_cosh(c); }
double beta(double a, double c) { return beta_of_alpha(AngleValue(a), ch(c)).radians(); }
}  // namespace

TEST_CASE("angle value validation and clamping") {
    CHECK(AngleValue(0.0).radians() == 0.0);
    CHECK(AngleValue(kPi + 5e-15).radians() == kPi);
    CHECK(AngleValue(-5e-15).radians() == 0.0);
    CHECK_THROWS_AS(AngleValue(kPi + 1e-6), DomainError);
    CHECK_THROWS_AS(AngleValue(-1e-6), DomainError);
    CHECK_THROWS_AS(AngleValue(std::nan("")), DomainError);
}

TEST_CASE("cosh radius round trip") {
    CHECK_THROWS_AS(CoshRadius::from_cosh(1.0), DomainError);
    CHECK_THROWS_AS(CoshRadius::from_cosh(0.5), DomainError);
    CHECK_THROWS_AS(CoshRadius::from_distance(0.0), DomainError);
    for (double c : {1.0 + 1e-9, 1.5, 2.0, 10.0, 1e6}) {
        const auto r = ch(c);
        CHECK(std::abs(std::cosh(r.x()) - c) / c < 1e-12);
        const auto back = CoshRadius::from_distance(r.x());
        CHECK(std::abs(back.cosh_x() - c) / c < 1e-12);
    }
}

TEST_CASE("angle list polygon condition") {
    CHECK_NOTHROW(AngleList({1.0, 1.0, 1.0}));
    CHECK_THROWS_AS(AngleList({1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(AngleList({kPi / 3, kPi / 3, kPi / 3}), DomainError);  // Euclidean triangle
    CHECK_THROWS_AS(AngleList({0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(AngleList({kPi, 0.1, 0.1}), DomainError);
}

TEST_CASE("clamped inverse functions") {
    CHECK(clamped_asin(1.0 + 5e-15) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(clamped_asin(1.0 + 1e-10), DomainError);
    CHECK(clamped_acosh(1.0 - 5e-15) == 0.0);
    CHECK_THROWS_AS(clamped_acosh(0.9), DomainError);
}

TEST_CASE("beta_of_alpha examples") {
    const double golden = 1.0 / (2.0 * std::sin(kPi / 10.0));
    CHECK(std::abs(beta(2.0 * kPi / 3.0, golden) - kPi / 5.0) < 1e-12);
    CHECK(std::abs(beta(2.0 * kPi / 3.0, golden) - 0.628319) < 1e-6);
    CHECK(beta(kPi, 1.7) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(beta(kPi, 42.0) < 1e-15);

    // alpha = pi/3 at x = 1: the residual of the defining relation vanishes
    const double c = std::cosh(1.0);
    const double b = beta(kPi / 3.0, c);
    CHECK(std::abs(std::cos(kPi / 6.0) - c * std::sin(b / 2.0)) < 1e-12);
    CHECK(std::abs(b - oracle::beta(kPi / 3.0, c)) < 1e-14);
    CHECK(std::abs(b - 1.1917459) < 1e-7);
}

TEST_CASE("beta_of_alpha round trip and monotonicity on a grid") {
    for (int i = 0; i < 100; ++i) {
        const double a = 0.001 + (kPi - 0.002) * i / 99.0;
        for (int k = 0; k < 100; ++k) {
            const double c = 1.0 + 1e-6 + 9.0 * k / 99.0;
            const double b = beta(a, c);
            REQUIRE(std::abs(std::cos(a / 2.0) - c * std::sin(b / 2.0)) < 1e-12);
            if (i > 0) {
                const double a_prev = 0.001 + (kPi - 0.002) * (i - 1) / 99.0;
                REQUIRE(b < beta(a_prev, c));
            }
            if (k > 0) {
                REQUIRE(b < beta(a, 1.0 + 1e-6 + 9.0 * (k - 1) / 99.0));
            }
        }
    }
}

TEST_CASE("first derivative against finite differences") {
    auto check_at = [](double a, double c) {
        const double analytic = dbeta_dalpha(AngleValue(a), ch(c));
        const double fd = oracle::fd1([&](double t) { return oracle::beta(t, c); }, a);
        CHECK(std::abs(analytic - fd) < 1e-6);
        return analytic;
    };
    check_at(kPi / 3.0, 1.618034);
    CHECK(check_at(2.0 * kPi / 5.0, 1.5) < 0.0);
    // vanishes as alpha -> 0
    CHECK(std::abs(dbeta_dalpha(AngleValue(1e-8), ch(1.3))) < 1e-7);
    CHECK_THROWS_AS(dbeta_dalpha(AngleValue(0.0), ch(1.3)), DomainError);
    CHECK_THROWS_AS(dbeta_dalpha(AngleValue(kPi / 2), ch(1.3)), DomainError);
}

TEST_CASE("second derivative against second differences") {
    for (auto [a, c] : {std::pair{kPi / 3.0, 1.618034}, std::pair{kPi / 4.0, 2.0}}) {
        const double analytic = d2beta_dalpha2(AngleValue(a), ch(c));
        const double fd = oracle::fd2([&](double t) { return oracle::beta(t, c); }, a);
        CHECK(analytic < 0.0);
        CHECK(std::abs(analytic - fd) / std::abs(analytic) < 1e-4);
    }
}

TEST_CASE("concavity sweep") {
    for (double c : {1.1, 1.618, 3.0}) {
        for (int k = 0; k < 100; ++k) {
            const double a = 0.01 + (kPi / 2.0 - 0.02) * k / 99.0;
            REQUIRE(d2beta_dalpha2(AngleValue(a), ch(c)) < 0.0);
        }
    }
}

TEST_CASE("midpoint Jensen inequality on random pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.01, kPi - 0.01);
    std::uniform_real_distribution<double> cosh_dist(1.01, 6.0);
    int sine_pairs = 0;
    for (int k = 0; k < 1000; ++k) {
        const double a1 = angle(rng);
        const double a2 = angle(rng);
        const double c = cosh_dist(rng);
        const double lhs = std::sin(oracle::beta(0.5 * (a1 + a2), c));
        const double rhs = 0.5 * (std::sin(oracle::beta(a1, c)) + std::sin(oracle::beta(a2, c)));
        const double mid = beta(0.5 * (a1 + a2), c);
        const double chord = 0.5 * (beta(a1, c) + beta(a2, c));
        REQUIRE(mid >= chord);
        // sine is increasing only up to pi/2, so the sine form needs both central angles there
        if (std::abs(a1 - a2) > 1e-3 && std::max(beta(a1, c), beta(a2, c)) <= kPi / 2) {
            REQUIRE(lhs > rhs);
            ++sine_pairs;
        }
    }
    CHECK(sine_pairs > 100);
}

TEST_CASE("circumscribed radius examples") {
    const auto ten = solve_circumscribed_radius(AngleList(std::vector<double>(10, 2.0 * kPi / 3.0)));
    CHECK(std::abs(ten.x() - 1.061275061) < 1e-9);

    const std::vector<double> type1{2 * kPi / 3, 2 * kPi / 3, kPi / 3, kPi / 3, kPi / 3, kPi / 3};
    const auto six = solve_circumscribed_radius(AngleList(type1));
    CHECK(std::abs(six.x() - std::acosh(1.5)) < 1e-12);
    CHECK(std::abs(six.x() - 0.962423) < 1e-6);

    const std::vector<double> tri{kPi / 4, kPi / 4, kPi / 4};
    const auto r = solve_circumscribed_radius(AngleList(tri));
    CHECK(r.x() > 0.0);
    CHECK(std::abs(circumscribed_residual(AngleList(tri), r.cosh_x())) < 1e-12);
    CHECK(std::abs(r.cosh_x() - oracle::circumscribed_cosh(tri)) < 1e-12);
}

TEST_CASE("circumscribed radius on random lists and equal angles") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> count(3, 12);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = count(rng);
        std::vector<double> angles;
        double sum = 0.0;
        do {
            angles.clear();
            sum = 0.0;
            for (int k = 0; k < m; ++k) {
                angles.push_back(kPi * unit(rng));
                sum += angles.back();
            }
        } while (sum >= (m - 2) * kPi - 1e-3);
        const auto r = solve_circumscribed_radius(AngleList(angles));
        double total = 0.0;
        for (double a : angles) {
            total += oracle::beta(a, r.cosh_x());
        }
        REQUIRE(std::abs(total - kTwoPi) < 1e-11);
        REQUIRE(std::abs(r.cosh_x() - oracle::circumscribed_cosh(angles)) / r.cosh_x() < 1e-11);
    }
    for (int m = 3; m <= 12; ++m) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const double star = frac * (m - 2) * kPi / m;
            const auto r = solve_circumscribed_radius(AngleList(std::vector<double>(static_cast<std::size_t>(m), star)));
            REQUIRE(std::abs(r.cosh_x() - std::cos(star / 2.0) / std::sin(kPi / m)) < 1e-12);
        }
    }
}

TEST_CASE("circle area") {
    CHECK(std::abs(circle_area(1.061275061) - 3.883222071) < 1e-8);
    CHECK(circle_area(0.0) == 0.0);
    CHECK(std::abs(circle_area(2.0) - 4.0 * kPi * std::sinh(1.0) * std::sinh(1.0)) < 1e-12);
    CHECK(std::abs(circle_area(2.0) - oracle::circle_area(2.0)) < 1e-12);
    CHECK(std::abs(circle_area(ch(1.5)) - kPi) < 1e-12);
    CHECK_THROWS_AS(circle_area(-1.0), DomainError);
}

TEST_CASE("triangle defect") {
    CHECK(std::abs(triangle_defect(AngleValue(2 * kPi / 3), AngleValue(kPi / 5)) - kPi / 15) < 1e-15);
    CHECK(std::abs(triangle_defect(AngleValue(kPi / 3), AngleValue(kPi / 3)) - kPi / 6) < 1e-15);
    CHECK(triangle_defect(AngleValue(kPi / 2), AngleValue(kPi / 2 - 1e-9)) < 1e-9);
    CHECK(triangle_defect(AngleValue(kPi / 2), AngleValue(kPi / 2 - 1e-9)) > 0.0);
    CHECK_THROWS_AS(triangle_defect(AngleValue(kPi / 2), AngleValue(kPi / 2)), DomainError);
}

TEST_CASE("secant bound margins") {
    CHECK(jensen_upper_bound_margin(5, 1, JensenKind::rotational) > 0.0);
    CHECK(jensen_upper_bound_margin(5, 5, JensenKind::additional) > 0.0);
    double smallest = 1.0;
    for (int l = 5; l <= 12; ++l) {
        const double s = std::sin(kPi / (4 * l - 6));
        for (int i = 1; i <= l - 1; ++i) {
            const double m = jensen_upper_bound_margin(l, i, JensenKind::rotational);
            const double lhs = std::asin(2 * s * std::cos(kPi / (3 * i)));
            const double rhs = 3 / kPi * std::asin(2 * s) * (kPi / 2 - kPi / (3 * i));
            REQUIRE(m > 0.0);
            REQUIRE(std::abs(m - (rhs - lhs)) < 1e-14);
            smallest = std::min(smallest, m);
        }
        for (int j = 3; j <= l; ++j) {
            const double m = jensen_upper_bound_margin(l, j, JensenKind::additional);
            const double lhs = std::asin(2 * s * std::cos(kPi / j));
            const double rhs = 3 / kPi * std::asin(2 * s) * (kPi / 2 - kPi / j);
            REQUIRE(m > 0.0);
            REQUIRE(std::abs(m - (rhs - lhs)) < 1e-14);
            smallest = std::min(smallest, m);
        }
    }
    CHECK(smallest > 1e-4);
    MESSAGE("smallest secant-bound margin for l = 5..12: " << smallest);
    CHECK_THROWS_AS(jensen_upper_bound_margin(4, 1, JensenKind::rotational), InvalidArgument);
    CHECK_THROWS_AS(jensen_upper_bound_margin(5, 5, JensenKind::rotational), InvalidArgument);
    CHECK_THROWS_AS(jensen_upper_bound_margin(5, 2, JensenKind::additional), InvalidArgument);
}
