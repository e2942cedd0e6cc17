#pragma once

#include <string>
#include <vector>

#include "tiltmut/algebra.hpp"

namespace tiltmut {

inline constexpr int kGroupOrderCap = 2000;
inline constexpr int kGroupAlgebraDimCap = 512;

/// Finite group as a multiplication table; element 0 is the identity.
struct Group {
    int n = 0;
    std::vector<int> table;  // row-major: table[a*n + b] = a*b
    /// Permutation images when the group came from generators (diagnostic).
    std::vector<std::vector<int>> perm_elements;

    int mult(int a, int b) const { return table[size_t(a) * n + b]; }
    int inverse(int a) const;
    int power(int a, long e) const;
    void validate() const;
    std::vector<std::vector<int>> conjugacy_classes() const;

    /// Closure of 0-indexed permutations; element order is BFS discovery.
    static Group from_generators(const std::vector<std::vector<int>>& perms,
                                 int cap = kGroupOrderCap);
    static Group from_table(std::vector<int> table, int n);
    static Group cyclic(int n);
    static Group direct_product(const Group& a, const Group& b);
};

/// Subgroup on the given element subset (must be closed); returns the group
/// with its own indexing plus the embedding into the parent.
std::pair<Group, std::vector<int>> subgroup(const Group& G, std::vector<int> elements);

/// A normal inclusion G <= G~ of p-power index.
struct GroupPair {
    Group big;
    Group sub;
    std::vector<int> embedding;  // sub element -> big element
    int index = 0;

    /// Checks injectivity, homomorphism property, normality of the image and
    /// that the index is a power of p.
    void validate(uint32_t p) const;
    /// Coset representatives of the image in big (identity first).
    std::vector<int> coset_representatives() const;
};

/// Group algebra with basis the group elements in table order.
AlgebraPtr group_algebra(const Group& G, const FieldSpec& field);

/// Augmentation: sum of coordinates.
Fel augmentation(const Algebra& kG, const Vec& x);

/// A block of a group algebra: the central idempotent, the block as an
/// algebra in its own right, and its projective structure.
struct Block {
    AlgebraPtr parent;          // the group algebra
    Vec idem;                   // central primitive idempotent, parent coords
    Subalgebra alg;             // e*kG as an algebra with unit e
    IdempotentSet idems;        // primitive idempotents of the block algebra
};

std::vector<Vec> block_idempotents(const AlgebraPtr& kG);
Block make_block(const AlgebraPtr& kG, const Vec& e);
/// The block whose idempotent has augmentation 1 (does not annihilate the
/// trivial module); asserts uniqueness.
Block principal_block(const AlgebraPtr& kG);

/// g x g^{-1} on group algebra coordinates.
Vec conjugate_element(const Group& G, const Algebra& kG, int g, const Vec& x);

/// Push a kG-coordinate vector along the embedding into kG~ coordinates.
Vec embed_vector(const GroupPair& pair, const Vec& x);

/// The unique block of kG~ covering B (idempotent e_B of kG); throws
/// AmbiguousCover / NoCover when the hypothesis fails.
Vec covering_block_idempotent(const GroupPair& pair, const AlgebraPtr& kGt, const Vec& e_B);

/// Elements of G~ stabilizing e_B under conjugation, as a subgroup.
std::pair<Group, std::vector<int>> inertial_group(const GroupPair& pair,
                                                  const AlgebraPtr& kGt, const Vec& e_B);

Group group_from_json_text(const std::string& text);
std::string group_to_json_text(const Group& g);
GroupPair group_pair_from_json_text(const std::string& text);
std::string group_pair_to_json_text(const GroupPair& p);

}  // namespace tiltmut
