#pragma once

// Constrained-extremum formulation of the free-angle domain types of
// G = [3,3,3,3]. Types 3, 4 and 5 contain additional points whose corner
// angles are free; the incircle radius is maximized over them.
//
// Variables are packed as X = (alpha_1..alpha_k, beta_1..beta_k, theta):
// the free corner angles, their central angles, and the central angle of a
// leaf corner (angle 2pi/3). The objective is f(X) = cosh x = 1/(2 sin(theta/2)).
// Equality constraints:
//
//   g_k      = 1/2 sin(beta_k/2) - cos(alpha_k/2) sin(theta/2)   (one per alpha)
//   closure  = sum beta_k + L theta + sum_c m_c phi_c(theta) - 2pi
//   group_p  = sum of the alphas at additional point p - 2pi
//
// with L leaf corners and m_c fixed corners of angle a_c whose central angle
// phi_c(theta) = 2 asin(2 cos(a_c/2) sin(theta/2)) is slaved to theta.
//
// Derivatives are central finite differences. Stationary points are located
// by Newton's method on the KKT system grad f + J^T lambda = 0, c = 0.
//
// Second-order test (bordered Hessian). With m constraints and n variables
// the bordered matrix is
//
//   [ 0    J ]
//   [ J^T  H ]     H = Hessian of f + lambda . c
//
// and D_k is its leading principal minor of order m + k. The point is a strict
// local maximum when sign(D_k) = (-1)^k for k = m+1 .. n, and a strict local
// minimum when sign(D_k) = (-1)^m for the same k. Variables are permuted so
// that the first m columns of J are its QR pivot columns, which keeps the
// leading m x m block of J non-singular as the criterion requires.

#include "hypin/hyp_trig.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypin {

/// Corners whose angle is fixed by the group but which are not leaves.
struct FixedCorner {
    double angle = 0.0;
    int count = 0;
};

struct ConfigurationVector {
    int type_id = 0;
    std::vector<double> alphas;
    std::vector<double> betas;
    double theta = 0.0;
    std::vector<int> alpha_groups;  // owning additional point of each alpha
    int leaf_count = 0;
    std::vector<FixedCorner> fixed_corners;

    /// Every component in [0, pi].
    bool in_box() const;
    int group_count() const;
    /// All polygon corner angles: alphas, leaves, fixed corners.
    std::vector<double> full_angle_list() const;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

struct LagrangeSystem {
    int type_id = 0;
    int dimension = 0;
    ScalarField objective;
    std::vector<ScalarField> equality_constraints;
    std::vector<std::string> constraint_names;
    ConfigurationVector layout;

    Eigen::VectorXd pack(const ConfigurationVector& config) const;
    ConfigurationVector unpack(const Eigen::VectorXd& X) const;
    Eigen::VectorXd constraint_values(const Eigen::VectorXd& X) const;
};

enum class Verdict { local_max, local_min, saddle, inconclusive };

std::string to_string(Verdict v);

struct StationaryReport {
    ConfigurationVector point;
    std::vector<double> multipliers;
    double objective = 0.0;
    double lagrangian_gradient_norm = 0.0;
    double constraint_residual_norm = 0.0;
    double projected_gradient_norm = 0.0;
    int iterations = 0;
    bool box_active = false;
    Verdict bordered_hessian_verdict = Verdict::inconclusive;
    std::vector<double> bordered_minors;
};

struct StationaryOptions {
    int max_iterations = 100;
    double gradient_step = 1e-6;
    double hessian_step = 1e-4;
    double tolerance = 1e-10;
    /// Gradient norm accepted once FD noise stalls progress.
    double gradient_acceptance = 1e-8;
};

/// Layout of type 3, 4 or 5; throws InvalidArgument otherwise.
ConfigurationVector configuration_layout(int type_id);

/// Completes a configuration from its free angles: the radius is solved from
/// the full corner list and betas and theta follow from it.
ConfigurationVector configuration_from_alphas(int type_id, std::vector<double> alphas);

/// Every free angle equal to 2pi / (degree of its additional point).
ConfigurationVector regular_configuration(int type_id);

/// Incircle radius of the configuration's corner angles.
CoshRadius configuration_radius(const ConfigurationVector& config);

LagrangeSystem build_system(int type_id);

Eigen::VectorXd numeric_gradient(const ScalarField& f, const Eigen::VectorXd& X, double step);
Eigen::MatrixXd numeric_jacobian(const LagrangeSystem& system, const Eigen::VectorXd& X, double step);
Eigen::MatrixXd numeric_hessian(const ScalarField& f, const Eigen::VectorXd& X, double step);

StationaryReport find_stationary(const LagrangeSystem& system, const ConfigurationVector& initial,
                                 const StationaryOptions& options = {});

StationaryReport bordered_hessian_check(const LagrangeSystem& system, StationaryReport report);

/// Replaces alphas i and j (same additional point) by their mean and re-solves
/// the radius.
std::pair<ConfigurationVector, CoshRadius> equalize_pair(const ConfigurationVector& config, std::size_t i,
                                                         std::size_t j);

/// Random configuration with each group of alphas summing to 2pi.
template <typename Rng>
ConfigurationVector random_feasible_configuration(int type_id, Rng& rng);

struct MultiStartResult {
    std::vector<StationaryReport> reports;  // converged starts, best first
    int failures = 0;
};

/// find_stationary + bordered_hessian_check from the regular point and
/// `starts - 1` jittered copies of it. Throws NonConvergence when no start
/// converges.
MultiStartResult multi_start(int type_id, std::uint64_t seed, int starts = 8, unsigned threads = 1);

}  // namespace hypin

#include "hypin/detail/random_configuration.hpp"
