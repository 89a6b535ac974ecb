#pragma once

// Largest inscribed circle for one fundamental-domain census.
//
// Corners of the unfolded polygon are equalized: a rotation center of tree
// degree i contributes i corners of angle 2pi/(3i), an additional point of
// degree j contributes j corners of angle 2pi/j. With beta the central angle
// of a leaf corner, cosh x = 1/(2 sin(beta/2)) and every other central angle
// follows as 2 asin(2 cos(alpha/2) sin(beta/2)). Closing the central angles
// to 2pi leaves the single equation
//
//   h(beta) = sum_i i A_i 2 asin(2 cos(pi/(3i)) sin(beta/2))
//           + sum_j j B_j 2 asin(2 cos(pi/j)    sin(beta/2)) - 2pi = 0
//
// on [0, K_l], K_l = 2 asin(1 / (2 cos(pi/(3(l-1))))). h is strictly
// increasing with h(0) = -2pi, so bisection finds the unique root.
//
// Tolerances: solve_incircle brackets beta to `tol` (default 1e-13).
// |dx/dbeta| = cos(beta/2) / (4 sin^2(beta/2) sinh x) stays below 7 for all
// censuses with l <= 12, so the default bracket bounds the radius error by
// about 1e-12.

#include "hypin/domain_enum.hpp"
#include "hypin/hyp_trig.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hypin {

inline constexpr double kDefaultBetaTolerance = 1e-13;

struct BetaBound {
    AngleValue K_l;
};

struct IncircleResult {
    AngleValue beta1;
    CoshRadius cosh_x;
    std::map<int, double> rotational_betas;   // i -> beta_i for each A_i > 0
    std::map<int, double> additional_betas;   // j -> beta_j for each B_j > 0
    double polygon_area = 0.0;
    double circle_area = 0.0;
    double density = 0.0;

    double x() const { return cosh_x.x(); }
};

/// Corner angle 2pi/(3i) at a rotation center of tree degree i.
double rotational_corner_angle(int i);
/// Corner angle 2pi/j at an additional point of tree degree j.
double additional_corner_angle(int j);

BetaBound beta_upper_limit(const GroupSpec& g);

double h_eval(const TreeTypeSolution& sol, const GroupSpec& g, AngleValue beta);

IncircleResult solve_incircle(const TreeTypeSolution& sol, const GroupSpec& g,
                              double tol = kDefaultBetaTolerance);

/// Sum of central angles sum i A_i beta_i + sum j B_j beta_j of a result.
double central_angle_sum(const TreeTypeSolution& sol, const IncircleResult& res);

/// Radius arccosh(1 / (2 sin(pi/(4l-6)))) of the best circle over all censuses.
CoshRadius optimal_radius_closed_form(const GroupSpec& g);

/// Solves every census of g in canonical order.
std::vector<IncircleResult> solve_all(const GroupSpec& g, double tol = kDefaultBetaTolerance,
                                      unsigned threads = 1);

/// The census with the largest incircle. Ties keep the earliest census.
std::pair<TreeTypeSolution, IncircleResult> best_over_types(const GroupSpec& g,
                                                            double tol = kDefaultBetaTolerance,
                                                            unsigned threads = 1);

/// Polygon area as the sum of the 2n right-triangle defects.
double polygon_area(const TreeTypeSolution& sol, const GroupSpec& g, const IncircleResult& res);

}  // namespace hypin
