#pragma once

#include <string>
#include <vector>

#include "cohomforge/intmat.hpp"

namespace cohomforge {

/// Finite group as a multiplication table on {0..n-1}, identity pinned at 0.
struct FiniteGroup {
    int order = 1;
    std::vector<std::vector<int>> table;
    std::vector<int> inverse;

    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    int element_order(int g) const;
    bool is_abelian() const;

    bool operator==(const FiniteGroup& o) const { return table == o.table; }
};

/// Validates the table, relabels so the identity sits at index 0, and
/// computes inverses. Throws NoIdentity / NotAssociative / NoInverse.
FiniteGroup make_group(const std::vector<std::vector<int>>& table);

struct Subgroup {
    FiniteGroup parent;
    std::vector<int> elements;  // sorted, contains 0
    std::vector<char> member;   // size parent.order

    bool contains(int g) const { return member[g] != 0; }
    int size() const { return static_cast<int>(elements.size()); }
};

Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> elements);

struct QuotientData {
    FiniteGroup parent;
    Subgroup normal;
    FiniteGroup quotient;
    std::vector<int> projection;  // length |parent|
    std::vector<int> section;     // length |quotient|, section[0] == 0
};

enum class StandardKind { Cyclic, Dihedral, Quaternion8, Heisenberg, Symmetric };

inline constexpr int kDefaultOrderBound = 64;

FiniteGroup make_standard(StandardKind kind, int param, int order_bound = kDefaultOrderBound);
FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H,
                           int order_bound = kDefaultOrderBound);

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);
bool is_normal(const FiniteGroup& G, const Subgroup& H);

/// Quotient with the deterministic minimal-index-representative section.
QuotientData quotient(const FiniteGroup& G, const Subgroup& N);

/// Subgroup generated by commutators [h,k] for h,k in H. When H is normal
/// in G the result is checked to be normal in G as well.
Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& H);

std::vector<int> center(const FiniteGroup& G);

/// The subgroup's own multiplication table (elements relabeled 0..|H|-1
/// in the sorted order of H.elements).
FiniteGroup subgroup_group(const Subgroup& H);

/// Exhaustive isomorphism search on generator images; intended for small
/// orders (the callers stay at order <= 16).
bool is_isomorphic(const FiniteGroup& A, const FiniteGroup& B);

}  // namespace cohomforge
