#include "hypin/lagrange_opt.hpp"

#include "hypin/errors.hpp"
#include "hypin/parallel.hpp"

#include <algorithm>
#include <random>

namespace hypin {

namespace {

constexpr double kLeafAngle = kTwoPi / 3.0;

double fixed_central_angle(double corner_angle, double theta) {
    return 2.0 * clamped_asin(2.0 * std::cos(corner_angle / 2.0) * std::sin(theta / 2.0));
}

}  // namespace

bool ConfigurationVector::in_box() const {
    auto inside = [](double v) { return v >= 0.0 && v <= kPi; };
    return std::all_of(alphas.begin(), alphas.end(), inside) &&
           std::all_of(betas.begin(), betas.end(), inside) && inside(theta);
}

int ConfigurationVector::group_count() const {
    return alpha_groups.empty() ? 0 : *std::max_element(alpha_groups.begin(), alpha_groups.end()) + 1;
}

std::vector<double> ConfigurationVector::full_angle_list() const {
    std::vector<double> angles = alphas;
    angles.insert(angles.end(), static_cast<std::size_t>(leaf_count), kLeafAngle);
    for (const auto& corner : fixed_corners) {
        angles.insert(angles.end(), static_cast<std::size_t>(corner.count), corner.angle);
    }
    return angles;
}

ConfigurationVector configuration_layout(int type_id) {
    ConfigurationVector c;
    c.type_id = type_id;
    switch (type_id) {
    case 3:  // A1=4, B4=1: one additional point of degree 4
        c.alpha_groups = {0, 0, 0, 0};
        c.leaf_count = 4;
        break;
    case 4:  // A1=3, A2=1, B3=1: the degree-2 center shows up as two corners of pi/3
        c.alpha_groups = {0, 0, 0};
        c.leaf_count = 3;
        c.fixed_corners = {{kTwoPi / 6.0, 2}};
        break;
    case 5:  // A1=4, B3=2: alphas 1, 2, 6 at the first point, 3, 4, 5 at the second
        c.alpha_groups = {0, 0, 1, 1, 1, 0};
        c.leaf_count = 4;
        break;
    default:
        throw InvalidArgument("free-angle formulation exists for types 3, 4 and 5 only");
    }
    c.alphas.assign(c.alpha_groups.size(), 0.0);
    c.betas.assign(c.alpha_groups.size(), 0.0);
    return c;
}

CoshRadius configuration_radius(const ConfigurationVector& config) {
    return solve_circumscribed_radius(AngleList(config.full_angle_list()));
}

ConfigurationVector configuration_from_alphas(int type_id, std::vector<double> alphas) {
    auto c = configuration_layout(type_id);
    if (alphas.size() != c.alphas.size()) {
        throw InvalidArgument("wrong number of free angles for type " + std::to_string(type_id));
    }
    c.alphas = std::move(alphas);
    const auto r = configuration_radius(c);
    for (std::size_t k = 0; k < c.alphas.size(); ++k) {
        c.betas[k] = beta_of_alpha(AngleValue(c.alphas[k]), r).radians();
    }
    c.theta = beta_of_alpha(AngleValue(kLeafAngle), r).radians();
    return c;
}

ConfigurationVector regular_configuration(int type_id) {
    auto layout = configuration_layout(type_id);
    std::vector<int> degree(static_cast<std::size_t>(layout.group_count()), 0);
    for (int g : layout.alpha_groups) {
        ++degree[static_cast<std::size_t>(g)];
    }
    std::vector<double> alphas;
    for (int g : layout.alpha_groups) {
        alphas.push_back(kTwoPi / degree[static_cast<std::size_t>(g)]);
    }
    return configuration_from_alphas(type_id, std::move(alphas));
}

Eigen::VectorXd LagrangeSystem::pack(const ConfigurationVector& config) const {
    const auto k = static_cast<Eigen::Index>(config.alphas.size());
    Eigen::VectorXd X(2 * k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        X[i] = config.alphas[static_cast<std::size_t>(i)];
        X[k + i] = config.betas[static_cast<std::size_t>(i)];
    }
    X[2 * k] = config.theta;
    return X;
}

ConfigurationVector LagrangeSystem::unpack(const Eigen::VectorXd& X) const {
    ConfigurationVector c = layout;
    const auto k = static_cast<Eigen::Index>(c.alphas.size());
    for (Eigen::Index i = 0; i < k; ++i) {
        c.alphas[static_cast<std::size_t>(i)] = X[i];
        c.betas[static_cast<std::size_t>(i)] = X[k + i];
    }
    c.theta = X[2 * k];
    return c;
}

Eigen::VectorXd LagrangeSystem::constraint_values(const Eigen::VectorXd& X) const {
    Eigen::VectorXd c(static_cast<Eigen::Index>(equality_constraints.size()));
    for (std::size_t i = 0; i < equality_constraints.size(); ++i) {
        c[static_cast<Eigen::Index>(i)] = equality_constraints[i](X);
    }
    return c;
}

LagrangeSystem build_system(int type_id) {
    LagrangeSystem sys;
    sys.type_id = type_id;
    sys.layout = configuration_layout(type_id);
    const auto k = static_cast<Eigen::Index>(sys.layout.alphas.size());
    const Eigen::Index theta = 2 * k;
    sys.dimension = static_cast<int>(2 * k + 1);

    sys.objective = [theta](const Eigen::VectorXd& X) { return 1.0 / (2.0 * std::sin(X[theta] / 2.0)); };

    for (Eigen::Index i = 0; i < k; ++i) {
        sys.equality_constraints.push_back([i, k, theta](const Eigen::VectorXd& X) {
            return std::cos(kLeafAngle / 2.0) * std::sin(X[k + i] / 2.0) -
                   std::cos(X[i] / 2.0) * std::sin(X[theta] / 2.0);
        });
        sys.constraint_names.push_back("g" + std::to_string(i + 1));
    }

    const double leaves = sys.layout.leaf_count;
    const auto fixed = sys.layout.fixed_corners;
    sys.equality_constraints.push_back([k, theta, leaves, fixed](const Eigen::VectorXd& X) {
        double sum = X.segment(k, k).sum() + leaves * X[theta];
        for (const auto& corner : fixed) {
            sum += corner.count * fixed_central_angle(corner.angle, X[theta]);
        }
        return sum - kTwoPi;
    });
    sys.constraint_names.push_back("h");

    for (int group = 0; group < sys.layout.group_count(); ++group) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index i = 0; i < k; ++i) {
            if (sys.layout.alpha_groups[static_cast<std::size_t>(i)] == group) {
                members.push_back(i);
            }
        }
        sys.equality_constraints.push_back([members](const Eigen::VectorXd& X) {
            double sum = 0.0;
            for (auto i : members) {
                sum += X[i];
            }
            return sum - kTwoPi;
        });
        sys.constraint_names.push_back("h" + std::to_string(group + 1));
    }
    return sys;
}

Eigen::VectorXd numeric_gradient(const ScalarField& f, const Eigen::VectorXd& X, double step) {
    Eigen::VectorXd grad(X.size());
    Eigen::VectorXd Y = X;
    for (Eigen::Index i = 0; i < X.size(); ++i) {
        Y[i] = X[i] + step;
        const double up = f(Y);
        Y[i] = X[i] - step;
        const double down = f(Y);
        Y[i] = X[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

Eigen::MatrixXd numeric_jacobian(const LagrangeSystem& system, const Eigen::VectorXd& X, double step) {
    const auto m = static_cast<Eigen::Index>(system.equality_constraints.size());
    Eigen::MatrixXd J(m, X.size());
    for (Eigen::Index r = 0; r < m; ++r) {
        J.row(r) = numeric_gradient(system.equality_constraints[static_cast<std::size_t>(r)], X, step).transpose();
    }
    return J;
}

Eigen::MatrixXd numeric_hessian(const ScalarField& f, const Eigen::VectorXd& X, double step) {
    const auto n = X.size();
    Eigen::MatrixXd H(n, n);
    Eigen::VectorXd Y = X;
    const double f0 = f(X);
    for (Eigen::Index i = 0; i < n; ++i) {
        Y[i] = X[i] + step;
        const double up = f(Y);
        Y[i] = X[i] - step;
        const double down = f(Y);
        Y[i] = X[i];
        H(i, i) = (up - 2.0 * f0 + down) / (step * step);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            auto eval = [&](double si, double sj) {
                Y[i] = X[i] + si * step;
                Y[j] = X[j] + sj * step;
                const double v = f(Y);
                Y[i] = X[i];
                Y[j] = X[j];
                return v;
            };
            const double value = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * step * step);
            H(i, j) = value;
            H(j, i) = value;
        }
    }
    return H;
}

namespace {

ScalarField lagrangian(const LagrangeSystem& system, const Eigen::VectorXd& lambda) {
    return [&system, lambda](const Eigen::VectorXd& X) {
        double value = system.objective(X);
        for (std::size_t r = 0; r < system.equality_constraints.size(); ++r) {
            value += lambda[static_cast<Eigen::Index>(r)] * system.equality_constraints[r](X);
        }
        return value;
    };
}

Eigen::VectorXd least_squares_multipliers(const Eigen::MatrixXd& J, const Eigen::VectorXd& grad) {
    return J.transpose().colPivHouseholderQr().solve(-grad);
}

// Norm of the component of grad orthogonal to the row space of J.
double projected_norm(const Eigen::MatrixXd& J, const Eigen::VectorXd& grad) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    const auto rank = svd.rank();
    const auto& V = svd.matrixV();
    const Eigen::MatrixXd Z = V.rightCols(V.cols() - rank);
    return (Z.transpose() * grad).norm();
}

void fill_report(const LagrangeSystem& system, const Eigen::VectorXd& X, const Eigen::VectorXd& lambda,
                 double gradient_step, StationaryReport& report) {
    const Eigen::VectorXd grad = numeric_gradient(system.objective, X, gradient_step);
    const Eigen::MatrixXd J = numeric_jacobian(system, X, gradient_step);
    report.point = system.unpack(X);
    report.multipliers.assign(lambda.data(), lambda.data() + lambda.size());
    report.objective = system.objective(X);
    report.lagrangian_gradient_norm = (grad + J.transpose() * lambda).norm();
    report.constraint_residual_norm = system.constraint_values(X).norm();
    report.projected_gradient_norm = projected_norm(J, grad);
}

}  // namespace

StationaryReport find_stationary(const LagrangeSystem& system, const ConfigurationVector& initial,
                                 const StationaryOptions& options) {
    if (!initial.in_box()) {
        throw InvalidArgument("initial configuration leaves the box [0, pi]^n");
    }
    const auto n = static_cast<Eigen::Index>(system.dimension);
    const auto m = static_cast<Eigen::Index>(system.equality_constraints.size());
    Eigen::VectorXd X = system.pack(initial);
    Eigen::VectorXd lambda = least_squares_multipliers(numeric_jacobian(system, X, options.gradient_step),
                                                       numeric_gradient(system.objective, X, options.gradient_step));
    StationaryReport report;
    bool converged = false;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        const Eigen::VectorXd grad = numeric_gradient(system.objective, X, options.gradient_step);
        const Eigen::MatrixXd J = numeric_jacobian(system, X, options.gradient_step);
        const Eigen::VectorXd c = system.constraint_values(X);
        const Eigen::VectorXd r = grad + J.transpose() * lambda;
        if (r.norm() < options.tolerance && c.norm() < options.tolerance) {
            converged = true;
            break;
        }

        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
        K.topLeftCorner(n, n) = numeric_hessian(lagrangian(system, lambda), X, options.hessian_step);
        K.topRightCorner(n, m) = J.transpose();
        K.bottomLeftCorner(m, n) = J;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (!(sv[sv.size() - 1] > 0.0) || sv[0] / sv[sv.size() - 1] > 1e12) {
            throw SingularSystemError("KKT matrix is numerically singular");
        }
        Eigen::VectorXd rhs(n + m);
        rhs << -r, -c;
        const Eigen::VectorXd delta = svd.solve(rhs);
        X += delta.head(n);
        lambda += delta.tail(m);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (X[i] < 0.0 || X[i] > kPi) {
                X[i] = std::clamp(X[i], 0.0, kPi);
                report.box_active = true;
            }
        }
        // Below ~1e-9 the FD gradient is noise; stop once the step stalls there.
        if (delta.head(n).norm() < 1e-9 && c.norm() < options.tolerance && r.norm() < options.gradient_acceptance) {
            converged = true;
            ++it;
            break;
        }
    }
    const Eigen::MatrixXd J = numeric_jacobian(system, X, options.gradient_step);
    lambda = least_squares_multipliers(J, numeric_gradient(system.objective, X, options.gradient_step));
    fill_report(system, X, lambda, options.gradient_step, report);
    report.iterations = it;
    if (!converged && !(report.lagrangian_gradient_norm < options.gradient_acceptance &&
                        report.constraint_residual_norm < options.tolerance)) {
        throw NonConvergence("KKT Newton iteration did not converge in " + std::to_string(options.max_iterations) +
                             " iterations");
    }
    report.bordered_hessian_verdict = Verdict::inconclusive;
    return report;
}

StationaryReport bordered_hessian_check(const LagrangeSystem& system, StationaryReport report) {
    constexpr double kGradientGate = 1e-8;
    constexpr double kResidualGate = 1e-10;
    constexpr double kMinorFloor = 1e-9;
    if (!(report.lagrangian_gradient_norm < kGradientGate)) {
        throw InvalidArgument("bordered Hessian test needs a stationary point (gradient norm " +
                              std::to_string(report.lagrangian_gradient_norm) + ")");
    }
    report.bordered_minors.clear();
    report.bordered_hessian_verdict = Verdict::inconclusive;
    if (report.box_active || !(report.constraint_residual_norm < kResidualGate)) {
        return report;
    }

    const Eigen::VectorXd X = system.pack(report.point);
    const Eigen::VectorXd lambda =
        Eigen::Map<const Eigen::VectorXd>(report.multipliers.data(), static_cast<Eigen::Index>(report.multipliers.size()));
    const auto L = lagrangian(system, lambda);
    const Eigen::MatrixXd H = numeric_hessian(L, X, 1e-4);
    const Eigen::MatrixXd H_fine = numeric_hessian(L, X, 1e-5);
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H_fine).cwiseAbs().maxCoeff() > 1e-3 * scale) {
        return report;
    }

    // Unit-norm constraint rows: scaling a row by s > 0 scales every tested
    // minor by s^2, so the sign pattern is unchanged.
    Eigen::MatrixXd J = numeric_jacobian(system, X, 1e-6);
    for (Eigen::Index r = 0; r < J.rows(); ++r) {
        J.row(r).normalize();
    }
    const auto m = J.rows();
    const auto n = J.cols();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
    const auto perm = qr.colsPermutation().indices();

    Eigen::MatrixXd Bm = Eigen::MatrixXd::Zero(m + n, m + n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto pa = perm[a];
        Bm.block(0, m + a, m, 1) = J.col(pa);
        Bm.block(m + a, 0, 1, m) = J.col(pa).transpose();
        for (Eigen::Index b = 0; b < n; ++b) {
            Bm(m + a, m + b) = H(pa, perm[b]);
        }
    }

    bool is_max = true;
    bool is_min = true;
    for (Eigen::Index k = m + 1; k <= n; ++k) {
        const double minor = Bm.topLeftCorner(m + k, m + k).fullPivLu().determinant();
        report.bordered_minors.push_back(minor);
        if (std::abs(minor) < kMinorFloor) {
            return report;
        }
        const int sign = minor > 0.0 ? 1 : -1;
        is_max = is_max && sign == ((k % 2 == 0) ? 1 : -1);
        is_min = is_min && sign == ((m % 2 == 0) ? 1 : -1);
    }
    if (is_max) {
        report.bordered_hessian_verdict = Verdict::local_max;
    } else if (is_min) {
        report.bordered_hessian_verdict = Verdict::local_min;
    } else {
        report.bordered_hessian_verdict = Verdict::saddle;
    }
    return report;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::local_max:
        return "local_max";
    case Verdict::local_min:
        return "local_min";
    case Verdict::saddle:
        return "saddle";
    case Verdict::inconclusive:
        break;
    }
    return "inconclusive";
}

std::pair<ConfigurationVector, CoshRadius> equalize_pair(const ConfigurationVector& config, std::size_t i,
                                                         std::size_t j) {
    if (i >= config.alphas.size() || j >= config.alphas.size()) {
        throw InvalidArgument("alpha index out of range");
    }
    if (config.alpha_groups[i] != config.alpha_groups[j]) {
        throw InvalidArgument("equalized angles must belong to the same additional point");
    }
    ConfigurationVector out = config;
    const double mean = 0.5 * (config.alphas[i] + config.alphas[j]);
    out.alphas[i] = mean;
    out.alphas[j] = mean;
    const auto r = configuration_radius(out);
    for (std::size_t k = 0; k < out.alphas.size(); ++k) {
        out.betas[k] = beta_of_alpha(AngleValue(out.alphas[k]), r).radians();
    }
    out.theta = beta_of_alpha(AngleValue(kLeafAngle), r).radians();
    return {out, r};
}

MultiStartResult multi_start(int type_id, std::uint64_t seed, int starts, unsigned threads) {
    if (starts < 1) {
        throw InvalidArgument("need at least one start");
    }
    const auto system = build_system(type_id);
    std::vector<ConfigurationVector> initials;
    initials.push_back(regular_configuration(type_id));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    for (int s = 1; s < starts; ++s) {
        auto alphas = initials.front().alphas;
        for (double& a : alphas) {
            a += jitter(rng);
        }
        initials.push_back(configuration_from_alphas(type_id, std::move(alphas)));
    }

    auto outcomes = parallel_map(initials.size(), threads, [&](std::size_t s) -> std::optional<StationaryReport> {
        try {
            return bordered_hessian_check(system, find_stationary(system, initials[s]));
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    MultiStartResult result;
    for (auto& outcome : outcomes) {
        if (outcome) {
            result.reports.push_back(std::move(*outcome));
        } else {
            ++result.failures;
        }
    }
    if (result.reports.empty()) {
        throw NonConvergence("no start converged for type " + std::to_string(type_id));
    }
    std::stable_sort(result.reports.begin(), result.reports.end(), [&](const auto& a, const auto& b) {
        if (a.objective != b.objective) {
            return a.objective > b.objective;
        }
        const Eigen::VectorXd pa = system.pack(a.point);
        const Eigen::VectorXd pb = system.pack(b.point);
        return std::lexicographical_compare(pa.data(), pa.data() + pa.size(), pb.data(), pb.data() + pb.size());
    });
    return result;
}

}  // namespace hypin
