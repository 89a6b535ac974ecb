#pragma once

// Combinatorial types of fundamental domains for G = [3,3,...,3] with l
// order-3 rotation centers. A domain is the unfolding of a tree drawn on the
// quotient sphere; its type is recorded as the degree census of that tree:
//
//   A_i  rotation centers of tree degree i     (i = 1 .. l-1)
//   B_j  additional points of tree degree j    (j = 3 .. l)
//
// subject to  sum A_i = l,  sum B_j = w,  sum i A_i + sum j B_j = 2(l+w-1) = n
// with 0 <= w <= l-2. Everything here is exact integer arithmetic.

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace hypin {

class GroupSpec {
public:
    /// Throws InvalidL when l < 4.
    explicit GroupSpec(int l);

    int l() const { return l_; }

private:
    int l_;
};

struct TreeTypeSolution {
    int l = 0;
    std::vector<int> A;  // A[i-1] for i = 1 .. l-1
    std::vector<int> B;  // B[j-3] for j = 3 .. l
    int w = 0;
    int n = 0;

    int a(int i) const { return A.at(static_cast<std::size_t>(i - 1)); }
    int b(int j) const { return B.at(static_cast<std::size_t>(j - 3)); }

    /// Compact form such as "A1=4,B3=2".
    std::string descriptor() const;

    /// True when every census invariant (sums, handshake, bounds) holds.
    bool is_valid() const;

    friend bool operator==(const TreeTypeSolution&, const TreeTypeSolution&) = default;
};

/// Canonical census order: w, then n, then the B vector, then the A vector,
/// each lexicographically. For l = 4 this is the row order of the classical
/// five-type table.
bool canonical_less(const TreeTypeSolution& lhs, const TreeTypeSolution& rhs);

struct OrbifoldBounds {
    int n_min = 0;
    int n_max = 0;

    friend bool operator==(const OrbifoldBounds&, const OrbifoldBounds&) = default;
};

std::vector<TreeTypeSolution> enumerate_tree_types(const GroupSpec& g);

/// Side-count bounds (2l - 2, 4l - 6) for the sphere with l order-3 centers.
OrbifoldBounds side_bounds(const GroupSpec& g);

/// Side-count bounds for a general orbifold signature.
///
/// orientability: 2 for orientable, 1 otherwise; genus g; l cone points;
/// q boundary components, q0 of which carry no dihedral corner; corner_counts
/// holds the number of dihedral corners on each of the q components.
OrbifoldBounds orbifold_side_bounds(int orientability, int genus, int cone_points, int q, int q0,
                                    std::span<const int> corner_counts);

int max_additional_points(const GroupSpec& g);

}  // namespace hypin
