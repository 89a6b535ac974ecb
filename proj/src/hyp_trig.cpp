#include "hypin/hyp_trig.hpp"

#include "hypin/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hypin {

double clamped_asin(double v) {
    if (!(v >= -1.0 - kClampSlack && v <= 1.0 + kClampSlack)) {
        throw DomainError("asin argument out of range: " + std::to_string(v));
    }
    return std::asin(std::clamp(v, -1.0, 1.0));
}

double clamped_acosh(double v) {
    if (!(v >= 1.0 - kClampSlack)) {
        throw DomainError("acosh argument below 1: " + std::to_string(v));
    }
    return std::acosh(std::max(v, 1.0));
}

AngleValue::AngleValue(double radians) {
    if (!std::isfinite(radians) || radians < -kClampSlack || radians > kPi + kClampSlack) {
        throw DomainError("angle outside [0, pi]: " + std::to_string(radians));
    }
    radians_ = std::clamp(radians, 0.0, kPi);
}

CoshRadius CoshRadius::from_cosh(double cosh_x) {
    if (!std::isfinite(cosh_x) || !(cosh_x > 1.0)) {
        throw DomainError("cosh x must exceed 1: " + std::to_string(cosh_x));
    }
    return {cosh_x, std::acosh(cosh_x)};
}

CoshRadius CoshRadius::from_distance(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw DomainError("radius must be positive: " + std::to_string(x));
    }
    return {std::cosh(x), x};
}

AngleList::AngleList(std::vector<double> radians) : radians_(std::move(radians)) {
    const auto m = radians_.size();
    if (m < 3) {
        throw DomainError("a polygon needs at least 3 angles");
    }
    for (double a : radians_) {
        if (!std::isfinite(a) || !(a > 0.0) || !(a < kPi)) {
            throw DomainError("polygon angle outside (0, pi): " + std::to_string(a));
        }
    }
    const double sum = std::accumulate(radians_.begin(), radians_.end(), 0.0);
    if (!(sum < static_cast<double>(m - 2) * kPi)) {
        throw DomainError("angle sum violates the hyperbolic polygon condition");
    }
}

AngleValue beta_of_alpha(AngleValue alpha, CoshRadius r) {
    return AngleValue(2.0 * clamped_asin(std::cos(alpha.radians() / 2.0) / r.cosh_x()));
}

namespace {

struct HalfAngles {
    double a;      // alpha / 2
    double b;      // beta / 2
    double cos_b;
};

HalfAngles derivative_point(AngleValue alpha, CoshRadius r) {
    const double al = alpha.radians();
    if (!(al > kDerivativeMargin && al < kPi / 2.0 - kDerivativeMargin)) {
        throw DomainError("derivative requested outside (0, pi/2): " + std::to_string(al));
    }
    const double a = al / 2.0;
    const double b = clamped_asin(std::cos(a) / r.cosh_x());
    const double cos_b = std::cos(b);
    if (cos_b < 1e-12) {
        throw DomainError("derivative of beta(alpha) is singular");
    }
    return {a, b, cos_b};
}

}  // namespace

// With a = alpha/2, b = beta/2, c = cosh x and sin b = cos a / c:
//   b'(a)  = -sin a / (c cos b)
//   b''(a) = -sin b (c^2 - 1) / (c^2 cos^3 b)
// and beta(alpha) = 2 b(alpha/2) gives beta' = b'(a), beta'' = b''(a) / 2.
double dbeta_dalpha(AngleValue alpha, CoshRadius r) {
    const auto p = derivative_point(alpha, r);
    return -std::sin(p.a) / (r.cosh_x() * p.cos_b);
}

double d2beta_dalpha2(AngleValue alpha, CoshRadius r) {
    const auto p = derivative_point(alpha, r);
    const double c2 = r.cosh_x() * r.cosh_x();
    return -std::sin(p.b) * (c2 - 1.0) / (2.0 * c2 * p.cos_b * p.cos_b * p.cos_b);
}

double circumscribed_residual(const AngleList& angles, double cosh_x) {
    double sum = 0.0;
    for (double a : angles.radians()) {
        sum += 2.0 * clamped_asin(std::cos(a / 2.0) / cosh_x);
    }
    return sum - kTwoPi;
}

CoshRadius solve_circumscribed_radius(const AngleList& angles) {
    const double m = static_cast<double>(angles.size());
    double lo = 1.0 + 1e-12;
    double hi = 1.0 / std::sin(kPi / m);
    if (!(circumscribed_residual(angles, lo) > 0.0) || circumscribed_residual(angles, hi) > 0.0) {
        throw NoRootError("circumscribed radius equation does not change sign");
    }
    for (int it = 0; it < 200 && hi - lo >= 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (circumscribed_residual(angles, mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return CoshRadius::from_cosh(0.5 * (lo + hi));
}

double circle_area(double x) {
    if (!(x >= 0.0)) {
        throw DomainError("negative radius");
    }
    const double s = std::sinh(x / 2.0);
    return 4.0 * kPi * s * s;
}

double circle_area(CoshRadius r) {
    // 4 pi sinh^2(x/2) = 2 pi (cosh x - 1)
    return 2.0 * kPi * (r.cosh_x() - 1.0);
}

double triangle_defect(AngleValue alpha, AngleValue beta) {
    const double defect = kPi / 2.0 - alpha.radians() / 2.0 - beta.radians() / 2.0;
    if (!(defect > 0.0)) {
        throw DomainError("angles do not form a hyperbolic right triangle");
    }
    return defect;
}

double jensen_upper_bound_margin(int l, int k, JensenKind kind) {
    if (l < 5) {
        throw InvalidArgument("the secant bound is stated for l >= 5");
    }
    double phi = 0.0;
    if (kind == JensenKind::rotational) {
        if (k < 1 || k > l - 1) {
            throw InvalidArgument("rotational degree must lie in [1, l-1]");
        }
        phi = kPi / (3.0 * k);
    } else {
        if (k < 3 || k > l) {
            throw InvalidArgument("additional-point degree must lie in [3, l]");
        }
        phi = kPi / k;
    }
    const double two_s = 2.0 * std::sin(kPi / (4.0 * l - 6.0));
    const double lhs_arg = two_s * std::cos(phi);
    if (lhs_arg < 0.0 || lhs_arg > 1.0 || two_s > 1.0) {
        throw DomainError("asin argument leaves [0, 1]");
    }
    const double lhs = std::asin(lhs_arg);
    const double rhs = 3.0 / kPi * std::asin(two_s) * (kPi / 2.0 - phi);
    return rhs - lhs;
}

}  // namespace hypin
