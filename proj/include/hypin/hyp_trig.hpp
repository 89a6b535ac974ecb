#pragma once

// Hyperbolic trigonometry of polygons circumscribed about a circle.
//
// A convex polygon with vertex angles alpha_k circumscribed about a circle of
// radius x splits into right triangles (center, vertex, tangency point). Each
// vertex owns a central wedge beta_k and the right triangle gives
//
//     cos(alpha_k / 2) = cosh(x) * sin(beta_k / 2).
//
// All angles are radians in double precision. There is no degree API.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace hypin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Arguments this close outside an inverse-function domain are treated as
/// roundoff and clamped; anything farther raises DomainError.
inline constexpr double kClampSlack = 1e-14;

/// Domain margin for the derivative operations, which are defined on the
/// open interval (kDerivativeMargin, pi/2 - kDerivativeMargin).
inline constexpr double kDerivativeMargin = 1e-9;

double clamped_asin(double v);
double clamped_acosh(double v);

/// Radian angle in [0, pi].
class AngleValue {
public:
    AngleValue() = default;
    explicit AngleValue(double radians);

    double radians() const { return radians_; }

    friend bool operator==(const AngleValue&, const AngleValue&) = default;

private:
    double radians_ = 0.0;
};

/// Circle radius stored as cosh(x) > 1 together with x itself.
class CoshRadius {
public:
    static CoshRadius from_cosh(double cosh_x);
    static CoshRadius from_distance(double x);

    double cosh_x() const { return cosh_x_; }
    double x() const { return x_; }

private:
    CoshRadius(double cosh_x, double x) : cosh_x_(cosh_x), x_(x) {}

    double cosh_x_;
    double x_;
};

/// Vertex angles of a hyperbolic polygon: m >= 3 entries in (0, pi) whose sum
/// is below (m - 2) pi.
class AngleList {
public:
    explicit AngleList(std::vector<double> radians);

    std::span<const double> radians() const { return radians_; }
    std::size_t size() const { return radians_.size(); }

private:
    std::vector<double> radians_;
};

/// Central angle belonging to a vertex angle at a fixed incircle radius.
AngleValue beta_of_alpha(AngleValue alpha, CoshRadius r);

/// d beta / d alpha of beta_of_alpha. Restricted to alpha in (0, pi/2).
double dbeta_dalpha(AngleValue alpha, CoshRadius r);

/// Second derivative of beta_of_alpha; strictly negative on its domain.
double d2beta_dalpha2(AngleValue alpha, CoshRadius r);

/// Incircle radius of the unique polygon with the given angles that
/// circumscribes a circle (central angles closing to 2 pi).
///
/// S(c) = sum_k 2 asin(cos(alpha_k/2) / c) - 2 pi is strictly decreasing in
/// c = cosh x, positive at c = 1 and negative at c = 1/sin(pi/m); the root is
/// found by bisection on c.
CoshRadius solve_circumscribed_radius(const AngleList& angles);

/// S as a function of cosh x for the given angle list.
double circumscribed_residual(const AngleList& angles, double cosh_x);

/// Area 4 pi sinh^2(x/2) of a disc of radius x.
double circle_area(double x);
double circle_area(CoshRadius r);

/// Angle defect (= area) of the right triangle with acute angles alpha/2 and
/// beta/2.
double triangle_defect(AngleValue alpha, AngleValue beta);

enum class JensenKind { rotational, additional };

/// RHS - LHS of the secant-slope bound
///
///   asin(2 s cos(phi)) < (3/pi) asin(2 s) (pi/2 - phi),   s = sin(pi/(4l-6)),
///
/// with phi = pi/(3k) for a rotation center of degree k and phi = pi/k for an
/// additional point of degree k. Positive whenever the bound holds.
double jensen_upper_bound_margin(int l, int k, JensenKind kind);

}  // namespace hypin
