#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiltmut/algebra.hpp"

namespace tiltmut {

/// Planar tree with one optional exceptional vertex.  The cyclic order at
/// each vertex is stored counterclockwise; the walk successor of an edge at a
/// vertex is the next edge in that order.
struct BrauerTree {
    std::vector<std::string> edges;
    std::map<std::string, std::vector<std::string>> cyclic;  // vertex -> incident edges
    std::optional<std::string> exceptional_vertex;
    int multiplicity = 1;
};

/// All structural invariants; returned messages name the violated one.
std::vector<std::string> validate_brauer_tree(const BrauerTree& t);

struct BrauerAlgebra {
    AlgebraPtr algebra;
    IdempotentSet idempotents;  // one per edge, lexicographic edge order
    /// Coefficient functional of the socle basis elements; the bilinear form
    /// (a,b) -> socle_form(a*b) is symmetric and nondegenerate.
    Vec socle_coords;  // indicator of socle basis positions
};

/// Walk-basis construction of the Brauer tree algebra: basis indexed by the
/// partial walks around the two endpoints of each edge, with multiplicity at
/// the exceptional vertex.  Throws ValidationError on an invalid tree.
BrauerAlgebra brauer_tree_algebra(const BrauerTree& t, const FieldSpec& field);

/// Yields the socle functional value of x (sum of socle coefficients).
Fel socle_form(const BrauerAlgebra& B, const Vec& x);

BrauerTree brauer_tree_from_json_text(const std::string& text);
std::string brauer_tree_to_json_text(const BrauerTree& t);

/// Ready-made trees used by the verification suites.
BrauerTree make_line_tree(int edges, int multiplicity = 1);
BrauerTree make_star_tree(int edges, int multiplicity = 1);

}  // namespace tiltmut
