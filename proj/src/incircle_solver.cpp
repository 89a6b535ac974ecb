#include "hypin/incircle_solver.hpp"

#include "hypin/errors.hpp"
#include "hypin/parallel.hpp"

#include <string>

namespace hypin {

double rotational_corner_angle(int i) {
    return kTwoPi / (3.0 * i);
}

double additional_corner_angle(int j) {
    return kTwoPi / j;
}

namespace {

void check_census(const TreeTypeSolution& sol, const GroupSpec& g) {
    if (sol.l != g.l() || !sol.is_valid()) {
        throw InvalidArgument("census " + sol.descriptor() + " is not valid for l = " + std::to_string(g.l()));
    }
}

// Central angle of a corner with angle alpha when the leaf central angle is
// beta1: 2 asin(2 cos(alpha/2) sin(beta1/2)).
double central_from_leaf(double alpha, double sin_half_beta1) {
    return 2.0 * clamped_asin(2.0 * std::cos(alpha / 2.0) * sin_half_beta1);
}

double h_unchecked(const TreeTypeSolution& sol, double beta) {
    const double s = std::sin(beta / 2.0);
    double sum = 0.0;
    for (int i = 1; i <= sol.l - 1; ++i) {
        if (const int count = sol.a(i)) {
            sum += i * count * central_from_leaf(rotational_corner_angle(i), s);
        }
    }
    for (int j = 3; j <= sol.l; ++j) {
        if (const int count = sol.b(j)) {
            sum += j * count * central_from_leaf(additional_corner_angle(j), s);
        }
    }
    return sum - kTwoPi;
}

}  // namespace

BetaBound beta_upper_limit(const GroupSpec& g) {
    const double c = std::cos(kPi / (3.0 * (g.l() - 1)));
    return {AngleValue(2.0 * std::asin(1.0 / (2.0 * c)))};
}

double h_eval(const TreeTypeSolution& sol, const GroupSpec& g, AngleValue beta) {
    check_census(sol, g);
    return h_unchecked(sol, beta.radians());
}

IncircleResult solve_incircle(const TreeTypeSolution& sol, const GroupSpec& g, double tol) {
    check_census(sol, g);
    if (!(tol >= 1e-14 && tol <= 1e-6)) {
        throw InvalidArgument("beta tolerance must lie in [1e-14, 1e-6]");
    }
    const double K = beta_upper_limit(g).K_l.radians();
    double lo = 0.0;
    double hi = K;
    double root = K;
    const double h_at_K = h_unchecked(sol, K);
    if (h_at_K < 0.0) {
        if (h_at_K < -1e-12) {
            throw NoRootError("h(K_l) < 0 for census " + sol.descriptor());
        }
    } else {
        for (int it = 0; it < 128 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (h_unchecked(sol, mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        root = 0.5 * (lo + hi);
    }

    const double s = std::sin(root / 2.0);
    IncircleResult res{AngleValue(root), CoshRadius::from_cosh(1.0 / (2.0 * s)), {}, {}, 0.0, 0.0, 0.0};
    for (int i = 1; i <= sol.l - 1; ++i) {
        if (sol.a(i) > 0) {
            res.rotational_betas[i] = central_from_leaf(rotational_corner_angle(i), s);
        }
    }
    for (int j = 3; j <= sol.l; ++j) {
        if (sol.b(j) > 0) {
            res.additional_betas[j] = central_from_leaf(additional_corner_angle(j), s);
        }
    }
    res.polygon_area = polygon_area(sol, g, res);
    res.circle_area = circle_area(res.cosh_x);
    res.density = res.circle_area / res.polygon_area;
    return res;
}

double central_angle_sum(const TreeTypeSolution& sol, const IncircleResult& res) {
    double sum = 0.0;
    for (const auto& [i, beta] : res.rotational_betas) {
        sum += i * sol.a(i) * beta;
    }
    for (const auto& [j, beta] : res.additional_betas) {
        sum += j * sol.b(j) * beta;
    }
    return sum;
}

CoshRadius optimal_radius_closed_form(const GroupSpec& g) {
    return CoshRadius::from_cosh(1.0 / (2.0 * std::sin(kPi / (4.0 * g.l() - 6.0))));
}

std::vector<IncircleResult> solve_all(const GroupSpec& g, double tol, unsigned threads) {
    const auto censuses = enumerate_tree_types(g);
    return parallel_map(censuses.size(), threads,
                        [&](std::size_t k) { return solve_incircle(censuses[k], g, tol); });
}

std::pair<TreeTypeSolution, IncircleResult> best_over_types(const GroupSpec& g, double tol, unsigned threads) {
    const auto censuses = enumerate_tree_types(g);
    const auto results = parallel_map(censuses.size(), threads,
                                      [&](std::size_t k) { return solve_incircle(censuses[k], g, tol); });
    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k) {
        if (results[k].x() > results[best].x()) {
            best = k;
        }
    }
    return {censuses[best], results[best]};
}

double polygon_area(const TreeTypeSolution& sol, const GroupSpec& g, const IncircleResult& res) {
    check_census(sol, g);
    double area = 0.0;
    for (const auto& [i, beta] : res.rotational_betas) {
        area += i * sol.a(i) * 2.0 *
                triangle_defect(AngleValue(rotational_corner_angle(i)), AngleValue(beta));
    }
    for (const auto& [j, beta] : res.additional_betas) {
        area += j * sol.b(j) * 2.0 *
                triangle_defect(AngleValue(additional_corner_angle(j)), AngleValue(beta));
    }
    return area;
}

}  // namespace hypin
