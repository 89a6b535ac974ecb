#include "hypin/domain_enum.hpp"

#include "hypin/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hypin {

GroupSpec::GroupSpec(int l) : l_(l) {
    if (l < 4) {
        throw InvalidL("l must be at least 4, got " + std::to_string(l));
    }
}

std::string TreeTypeSolution::descriptor() const {
    std::string out;
    auto append = [&out](char tag, int index, int count) {
        if (count == 0) {
            return;
        }
        if (!out.empty()) {
            out += ',';
        }
        out += tag;
        out += std::to_string(index);
        out += '=';
        out += std::to_string(count);
    };
    for (int i = 1; i <= l - 1; ++i) {
        append('A', i, a(i));
    }
    for (int j = 3; j <= l; ++j) {
        append('B', j, b(j));
    }
    return out;
}

bool TreeTypeSolution::is_valid() const {
    if (l < 4 || A.size() != static_cast<std::size_t>(l - 1) ||
        B.size() != static_cast<std::size_t>(l - 2)) {
        return false;
    }
    if (std::any_of(A.begin(), A.end(), [](int v) { return v < 0; }) ||
        std::any_of(B.begin(), B.end(), [](int v) { return v < 0; })) {
        return false;
    }
    int degree_sum = 0;
    for (int i = 1; i <= l - 1; ++i) {
        degree_sum += i * a(i);
    }
    for (int j = 3; j <= l; ++j) {
        degree_sum += j * b(j);
    }
    return std::accumulate(A.begin(), A.end(), 0) == l &&
           std::accumulate(B.begin(), B.end(), 0) == w && w >= 0 && w <= l - 2 &&
           n == 2 * (l + w - 1) && degree_sum == n;
}

bool canonical_less(const TreeTypeSolution& lhs, const TreeTypeSolution& rhs) {
    return std::tie(lhs.w, lhs.n, lhs.B, lhs.A) < std::tie(rhs.w, rhs.n, rhs.B, rhs.A);
}

namespace {

// Fills counts[pos..] (degrees first_degree + pos ..) so that the remaining
// count and degree budgets are met exactly.
class CompositionSearch {
public:
    CompositionSearch(int first_degree, int slots) : first_degree_(first_degree), counts_(slots, 0) {}

    template <typename Visit>
    void run(int count, int degree_sum, Visit&& visit) {
        recurse(0, count, degree_sum, visit);
    }

private:
    template <typename Visit>
    void recurse(std::size_t pos, int count, int degree_sum, Visit& visit) {
        const int slots = static_cast<int>(counts_.size());
        if (pos == counts_.size()) {
            if (count == 0 && degree_sum == 0) {
                visit(counts_);
            }
            return;
        }
        const int degree = first_degree_ + static_cast<int>(pos);
        const int max_degree = first_degree_ + slots - 1;
        // The remaining `count` items have degrees in [degree, max_degree].
        if (degree_sum < count * degree || degree_sum > count * max_degree) {
            return;
        }
        for (int c = 0; c <= count && c * degree <= degree_sum; ++c) {
            counts_[pos] = c;
            recurse(pos + 1, count - c, degree_sum - c * degree, visit);
        }
        counts_[pos] = 0;
    }

    int first_degree_;
    std::vector<int> counts_;
};

}  // namespace

std::vector<TreeTypeSolution> enumerate_tree_types(const GroupSpec& g) {
    const int l = g.l();
    std::vector<TreeTypeSolution> out;
    for (int w = 0; w <= l - 2; ++w) {
        const int n = 2 * (l + w - 1);
        CompositionSearch a_search(1, l - 1);
        // A's degree sum ranges over [l, n - 3w]; split the budget explicitly.
        for (int a_degree = l; a_degree <= n - 3 * w; ++a_degree) {
            std::vector<std::vector<int>> a_parts;
            a_search.run(l, a_degree, [&](const std::vector<int>& counts) { a_parts.push_back(counts); });
            if (a_parts.empty()) {
                continue;
            }
            std::vector<std::vector<int>> b_parts;
            CompositionSearch b_search(3, l - 2);
            b_search.run(w, n - a_degree, [&](const std::vector<int>& counts) { b_parts.push_back(counts); });
            for (const auto& a : a_parts) {
                for (const auto& b : b_parts) {
                    out.push_back(TreeTypeSolution{l, a, b, w, n});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

OrbifoldBounds side_bounds(const GroupSpec& g) {
    return {2 * g.l() - 2, 4 * g.l() - 6};
}

OrbifoldBounds orbifold_side_bounds(int orientability, int genus, int cone_points, int q, int q0,
                                    std::span<const int> corner_counts) {
    if (orientability != 1 && orientability != 2) {
        throw InvalidArgument("orientability factor must be 1 or 2");
    }
    if (genus < 0 || cone_points < 0 || q < 0 || q0 < 0 || q0 > q) {
        throw InvalidArgument("signature counts must be non-negative with q0 <= q");
    }
    if (corner_counts.size() != static_cast<std::size_t>(q)) {
        throw InvalidArgument("need one dihedral-corner count per boundary component");
    }
    if (std::any_of(corner_counts.begin(), corner_counts.end(), [](int v) { return v < 0; })) {
        throw InvalidArgument("dihedral-corner counts must be non-negative");
    }
    const int corners = std::accumulate(corner_counts.begin(), corner_counts.end(), 0);
    const int two_ag = 2 * orientability * genus;
    OrbifoldBounds bounds;
    if (cone_points == 0 && q == 0) {
        bounds.n_min = two_ag;
    } else {
        bounds.n_min = q0 + corners + two_ag + 2 * cone_points + 2 * q - 2;
    }
    bounds.n_max = corners + 6 * orientability * genus + 4 * cone_points + 5 * q - 6;
    if (bounds.n_min > bounds.n_max) {
        // Exceptional signatures with a unique domain fall outside the formulas.
        throw InvalidArgument("signature has no side-count range (n_min > n_max)");
    }
    return bounds;
}

int max_additional_points(const GroupSpec& g) {
    return g.l() - 2;
}

}  // namespace hypin
