#include "cli/verify.hpp"

#include "hypin/errors.hpp"
#include "hypin/hyp_trig.hpp"
#include "hypin/incircle_solver.hpp"
#include "hypin/lagrange_opt.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace hypin::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Odometer over [0, bound]^slots.
template <typename Visit>
void odometer(int slots, int bound, Visit&& visit) {
    std::vector<int> digits(static_cast<std::size_t>(slots), 0);
    for (;;) {
        visit(digits);
        int pos = 0;
        while (pos < slots && digits[static_cast<std::size_t>(pos)] == bound) {
            digits[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == slots) {
            return;
        }
        ++digits[static_cast<std::size_t>(pos)];
    }
}

struct Accumulator {
    CheckResult result;
    explicit Accumulator(std::string name) {
        result.name = std::move(name);
        result.worst_margin = kInf;
        result.passed = true;
    }
    // margin >= 0 passes (strict checks pass margin - tiny).
    void sample(double margin, bool ok) {
        ++result.samples;
        result.worst_margin = std::min(result.worst_margin, margin);
        result.passed = result.passed && ok;
    }
};

CheckResult check_concavity(const VerifyOptions& opt) {
    Accumulator acc("beta_concavity");
    for (int row = 0; row < 100; ++row) {
        const auto r = CoshRadius::from_cosh(1.01 + 4.0 * row / 99.0);
        for (int k = 0; k < 100; ++k) {
            const double alpha = 0.01 + (kPi / 2.0 - 0.02) * k / 99.0;
            const double d2 = d2beta_dalpha2(AngleValue(alpha), r);
            acc.sample(-d2, d2 < 0.0);
        }
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.01, kPi - 0.01);
    std::uniform_real_distribution<double> cosh_dist(1.05, 5.0);
    for (int k = 0; k < 1000; ++k) {
        const double a1 = angle(rng);
        const double a2 = angle(rng);
        const auto r = CoshRadius::from_cosh(cosh_dist(rng));
        if (std::abs(a1 - a2) < 1e-6) {
            continue;
        }
        auto beta = [&](double a) { return beta_of_alpha(AngleValue(a), r).radians(); };
        const double mid = beta(0.5 * (a1 + a2));
        const double chord = 0.5 * (beta(a1) + beta(a2));
        const double sine_gap = std::sin(mid / 2.0) - 0.5 * (std::sin(beta(a1) / 2.0) + std::sin(beta(a2) / 2.0));
        acc.sample(mid - chord, mid > chord && sine_gap > 0.0);
    }
    acc.result.detail = "d2beta/dalpha2 < 0 on a 100x100 grid; midpoint Jensen on 1000 random pairs";
    return acc.result;
}

CheckResult check_derivatives(const VerifyOptions&) {
    Accumulator acc("derivative_finite_difference");
    for (double c : {1.1, 1.618034, 3.0}) {
        const auto r = CoshRadius::from_cosh(c);
        auto beta = [&](double a) { return beta_of_alpha(AngleValue(a), r).radians(); };
        for (int k = 0; k < 50; ++k) {
            const double a = 0.05 + (kPi / 2.0 - 0.1) * k / 49.0;
            const double h1 = 1e-6;
            const double fd1 = (beta(a + h1) - beta(a - h1)) / (2.0 * h1);
            const double err1 = std::abs(fd1 - dbeta_dalpha(AngleValue(a), r));
            const double h2 = 1e-4;
            const double fd2 = (beta(a + h2) - 2.0 * beta(a) + beta(a - h2)) / (h2 * h2);
            const double exact2 = d2beta_dalpha2(AngleValue(a), r);
            const double rel2 = std::abs(fd2 - exact2) / std::abs(exact2);
            acc.sample(std::min(1e-6 - err1, 1e-4 - rel2), err1 < 1e-6 && rel2 < 1e-4);
        }
    }
    acc.result.detail = "first derivative within 1e-6 absolute, second within 1e-4 relative";
    return acc.result;
}

CheckResult check_circumscribed_solver(const VerifyOptions& opt) {
    Accumulator acc("circumscribed_solver");
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_int_distribution<int> count(3, 12);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = count(rng);
        std::vector<double> angles;
        for (;;) {
            angles.clear();
            for (int k = 0; k < m; ++k) {
                angles.push_back(kPi * unit(rng));
            }
            if (std::accumulate(angles.begin(), angles.end(), 0.0) < (m - 2) * kPi - 1e-3) {
                break;
            }
        }
        const AngleList list(angles);
        const auto r = solve_circumscribed_radius(list);
        double sum = 0.0;
        for (double a : angles) {
            sum += beta_of_alpha(AngleValue(a), r).radians();
        }
        const double err = std::abs(sum - kTwoPi);
        acc.sample(1e-11 - err, err < 1e-11);

        const double star = angles.front();
        if (static_cast<double>(m) * star < (m - 2) * kPi) {
            const auto equal = solve_circumscribed_radius(AngleList(std::vector<double>(static_cast<std::size_t>(m), star)));
            const double closed = std::cos(star / 2.0) / std::sin(kPi / m);
            const double err_eq = std::abs(equal.cosh_x() - closed);
            acc.sample(1e-12 - err_eq, err_eq < 1e-12);
        }
    }
    acc.result.detail = "central angles close to 2pi within 1e-11; equal-angle closed form within 1e-12";
    return acc.result;
}

CheckResult check_secant_bounds(const VerifyOptions& opt) {
    Accumulator acc("secant_bound_margins");
    for (int l = 5; l <= opt.l_max; ++l) {
        for (int i = 1; i <= l - 1; ++i) {
            const double m = jensen_upper_bound_margin(l, i, JensenKind::rotational);
            acc.sample(m, m > 0.0);
        }
        for (int j = 3; j <= l; ++j) {
            const double m = jensen_upper_bound_margin(l, j, JensenKind::additional);
            acc.sample(m, m > 0.0);
        }
    }
    if (acc.result.samples == 0) {
        acc.result.worst_margin = 0.0;
        acc.result.detail = "no l >= 5 in range";
    } else {
        acc.result.detail = "secant bounds for all degrees, l = 5 .. l_max";
    }
    return acc.result;
}

CheckResult check_equalization(const VerifyOptions& opt) {
    Accumulator acc("equalization_improves_radius");
    std::mt19937_64 rng(opt.seed + 2);
    const auto layout = configuration_layout(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto config = random_feasible_configuration(5, rng);
        const auto before = configuration_radius(config);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < config.alphas.size(); ++i) {
            for (std::size_t j = i + 1; j < config.alphas.size(); ++j) {
                if (layout.alpha_groups[i] == layout.alpha_groups[j]) {
                    pairs.emplace_back(i, j);
                }
            }
        }
        const auto [i, j] = pairs[static_cast<std::size_t>(trial) % pairs.size()];
        const auto after = equalize_pair(config, i, j).second;
        const double gain = after.x() - before.x();
        const bool strict = std::abs(config.alphas[i] - config.alphas[j]) > 1e-9;
        acc.sample(gain, strict ? gain > 0.0 : gain > -1e-12);
    }
    acc.result.detail = "equalizing two angles of one additional point grows x (500 random type-5 configurations)";
    return acc.result;
}

CheckResult check_closed_form_optimum(const VerifyOptions& opt) {
    Accumulator acc("closed_form_optimum");
    for (int l = 4; l <= std::min(opt.l_max, 10); ++l) {
        const GroupSpec g(l);
        const auto [census, best] = best_over_types(g, opt.tol, opt.threads);
        const double closed = optimal_radius_closed_form(g).x();
        const double err = std::abs(best.x() - closed);
        const bool right_census = census.a(1) == l && census.b(3) == l - 2;
        acc.sample(1e-10 - err, err < 1e-10 && right_census);
    }
    acc.result.detail = "best census A1=l, B3=l-2 with x = arccosh(1/(2 sin(pi/(4l-6)))) for l = 4 .. min(l_max, 10)";
    return acc.result;
}

CheckResult check_area_constancy(const VerifyOptions& opt) {
    Accumulator acc("area_constancy");
    for (int l = 4; l <= std::min(opt.l_max, 10); ++l) {
        const GroupSpec g(l);
        const double expected = (4.0 * l / 3.0 - 4.0) * kPi;
        const auto censuses = enumerate_tree_types(g);
        const auto results = solve_all(g, opt.tol, opt.threads);
        for (std::size_t k = 0; k < censuses.size(); ++k) {
            const double err = std::abs(polygon_area(censuses[k], g, results[k]) - expected);
            acc.sample(1e-9 - err, err < 1e-9);
        }
    }
    acc.result.detail = "defect-sum polygon area equals (4l/3 - 4) pi within 1e-9";
    return acc.result;
}

CheckResult check_h_monotone(const VerifyOptions& opt) {
    Accumulator acc("h_monotone");
    for (int l = 4; l <= opt.l_max; ++l) {
        const GroupSpec g(l);
        const double K = beta_upper_limit(g).K_l.radians();
        for (const auto& census : enumerate_tree_types(g)) {
            double prev = h_eval(census, g, AngleValue(0.0));
            acc.sample(kInf, prev == -kTwoPi);
            for (int k = 1; k < 200; ++k) {
                const double cur = h_eval(census, g, AngleValue(K * k / 199.0));
                acc.sample(cur - prev, cur > prev);
                prev = cur;
            }
            acc.sample(prev, prev >= -1e-12);
        }
    }
    acc.result.detail = "h strictly increasing on a 200-point grid, h(0) = -2pi, h(K_l) >= 0";
    return acc.result;
}

CheckResult check_side_bounds(const VerifyOptions& opt) {
    Accumulator acc("side_count_bounds");
    for (int l = 4; l <= opt.l_max; ++l) {
        const GroupSpec g(l);
        const auto censuses = enumerate_tree_types(g);
        const auto [lo, hi] = std::minmax_element(censuses.begin(), censuses.end(),
                                                  [](const auto& a, const auto& b) { return a.n < b.n; });
        const auto bounds = side_bounds(g);
        acc.sample(0.0, lo->n == bounds.n_min && hi->n == bounds.n_max);
        const auto unique = std::count_if(censuses.begin(), censuses.end(),
                                          [&](const auto& c) { return c.w == max_additional_points(g); });
        acc.sample(0.0, unique == 1);
    }
    acc.result.detail = "min/max side counts equal (2l-2, 4l-6); one census with w = l-2";
    return acc.result;
}

CheckResult check_enumeration_oracle(const VerifyOptions& opt) {
    Accumulator acc("enumeration_oracle");
    for (int l = 4; l <= std::min(opt.l_max, 8); ++l) {
        auto fast = enumerate_tree_types(GroupSpec(l));
        auto brute = brute_force_censuses(l);
        std::sort(brute.begin(), brute.end(), canonical_less);
        acc.sample(0.0, fast == brute);
    }
    acc.result.detail = "enumeration set-equal to generate-and-test for l = 4 .. min(l_max, 8)";
    return acc.result;
}

CheckResult check_regular_density(const VerifyOptions& opt) {
    Accumulator acc("regular_density");
    const GroupSpec g(4);
    const auto censuses = enumerate_tree_types(g);
    const auto res = solve_incircle(censuses.back(), g, opt.tol);
    const double dx = std::abs(res.x() - 1.061275061);
    const double dd = std::abs(res.density - 0.9270509814);
    acc.sample(1e-8 - dx, dx < 1e-8);
    acc.sample(1e-7 - dd, dd < 1e-7);
    acc.result.detail = "l = 4 type 5: x within 1e-8 of 1.061275061, density within 1e-7 of 0.9270509814";
    return acc.result;
}

CheckResult check_lagrange(const VerifyOptions& opt) {
    Accumulator acc("lagrange_regular_points");
    const GroupSpec g(4);
    const auto censuses = enumerate_tree_types(g);
    for (int type : {3, 4, 5}) {
        const auto system = build_system(type);
        auto report = bordered_hessian_check(system, find_stationary(system, regular_configuration(type)));
        const auto res = solve_incircle(censuses[static_cast<std::size_t>(type - 1)], g, opt.tol);
        const double err = std::abs(report.objective - res.cosh_x.cosh_x());
        acc.sample(std::min(1e-8 - report.projected_gradient_norm, 1e-9 - err),
                   report.projected_gradient_norm < 1e-8 && err < 1e-9 &&
                       report.bordered_hessian_verdict == Verdict::local_max);
    }
    acc.result.detail = "types 3/4/5: stationary, bordered-Hessian local max, f = cosh x of the census solve";
    return acc.result;
}

using Check = std::function<CheckResult(const VerifyOptions&)>;

const std::vector<std::pair<std::string, Check>>& registry() {
    static const std::vector<std::pair<std::string, Check>> checks = {
        {"beta_concavity", check_concavity},
        {"derivative_finite_difference", check_derivatives},
        {"circumscribed_solver", check_circumscribed_solver},
        {"secant_bound_margins", check_secant_bounds},
        {"equalization_improves_radius", check_equalization},
        {"closed_form_optimum", check_closed_form_optimum},
        {"area_constancy", check_area_constancy},
        {"h_monotone", check_h_monotone},
        {"side_count_bounds", check_side_bounds},
        {"enumeration_oracle", check_enumeration_oracle},
        {"regular_density", check_regular_density},
        {"lagrange_regular_points", check_lagrange},
    };
    return checks;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckResult* VerifyReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<std::string> verification_check_names() {
    std::vector<std::string> names;
    for (const auto& [name, check] : registry()) {
        names.push_back(name);
    }
    return names;
}

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.l_max < 4 || options.l_max > 12) {
        throw InvalidArgument("l_max must lie in [4, 12]");
    }
    VerifyReport report;
    for (const auto& [name, check] : registry()) {
        CheckResult result;
        try {
            result = check(options);
        } catch (const Error& e) {
            result.name = name;
            result.passed = false;
            result.worst_margin = -kInf;
            result.detail = std::string("error: ") + e.what();
        }
        if (name == options.inject_fault) {
            result.passed = !result.passed;
            result.detail += " [fault injected]";
        }
        report.checks.push_back(std::move(result));
    }
    return report;
}

std::vector<TreeTypeSolution> brute_force_censuses(int l) {
    std::vector<std::vector<int>> a_vectors;
    odometer(l - 1, l, [&](const std::vector<int>& a) {
        if (std::accumulate(a.begin(), a.end(), 0) == l) {
            a_vectors.push_back(a);
        }
    });
    std::vector<std::vector<int>> b_vectors;
    odometer(l - 2, l - 2, [&](const std::vector<int>& b) {
        if (std::accumulate(b.begin(), b.end(), 0) <= l - 2) {
            b_vectors.push_back(b);
        }
    });
    std::vector<TreeTypeSolution> out;
    for (const auto& a : a_vectors) {
        int degree_a = 0;
        for (int i = 1; i <= l - 1; ++i) {
            degree_a += i * a[static_cast<std::size_t>(i - 1)];
        }
        for (const auto& b : b_vectors) {
            int degree = degree_a;
            int w = 0;
            for (int j = 3; j <= l; ++j) {
                degree += j * b[static_cast<std::size_t>(j - 3)];
                w += b[static_cast<std::size_t>(j - 3)];
            }
            if (degree == 2 * (l + w - 1)) {
                out.push_back(TreeTypeSolution{l, a, b, w, degree});
            }
        }
    }
    return out;
}

}  // namespace hypin::cli
