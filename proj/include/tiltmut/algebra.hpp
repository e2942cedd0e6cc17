#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tiltmut/linalg.hpp"

namespace tiltmut {

/// A finite-dimensional associative unital algebra over F_q, given by a basis
/// and structure constants.  Immutable after construction; all operations on
/// it are pure and safe to run concurrently on shared instances.
struct Algebra {
    FqPtr F;
    int dim = 0;
    std::vector<std::string> basis_labels;
    Vec unit;
    /// mul[i][j] = sparse expansion of b_i * b_j as (basis index, coefficient).
    using SparseVec = std::vector<std::pair<int, Fel>>;
    std::vector<std::vector<SparseVec>> mul;

    /// b_i * b_j as a dense coordinate vector.
    Vec mul_basis(int i, int j) const;
    Vec mulvec(const Vec& x, const Vec& y) const;
    /// Matrix of left multiplication by x on the regular representation
    /// (columns are x * b_j).
    FqMat left_mult(const Vec& x) const;
    FqMat right_mult(const Vec& x) const;
    Vec zero() const { return Vec(dim, 0); }
    Vec basis_vec(int i) const;
    Vec scale(const Vec& x, Fel c) const;
    Vec add(const Vec& x, const Vec& y) const;
    Vec sub(const Vec& x, const Vec& y) const;
    bool is_idempotent(const Vec& e) const;
    Vec power(const Vec& x, int k) const;

    /// Exact checks: unit axioms always; associativity on all dim^3 basis
    /// triples when `full` (or dim is small).
    void validate(bool full) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Complete set of orthogonal primitive idempotents with the partition of
/// the projectives e_i*A into isomorphism classes.
struct IdempotentSet {
    std::vector<Vec> idems;
    std::vector<int> class_of;        // idempotent index -> class id
    std::vector<int> representative;  // class id -> idempotent index
    int num_classes() const { return int(representative.size()); }
};

/// Jacobson radical as an echelon row space.  Kernel of the trace form when
/// p > dim; otherwise the layered characteristic-p chain built from the
/// p^i-th characteristic polynomial coefficients.
SpanSolver radical(const Algebra& A);

/// Complete orthogonal primitive set, lifted through the radical by Newton
/// iteration, with the iso-class partition decided by the two-sided
/// unit-composite test.  Throws NonSplitField when A/rad has a simple
/// summand over a proper extension field.
IdempotentSet primitive_idempotents(const Algebra& A);

/// Orthogonal decomposition of an arbitrary idempotent f into primitive
/// idempotents of A summing to f.
std::vector<Vec> decompose_idempotent(const Algebra& A, const Vec& f);

/// Entry (j,i) = dim e_j A e_i over class representatives.
std::vector<std::vector<long>> cartan_matrix(const Algebra& A, const IdempotentSet& E);

/// Basis of e_j A e_i (representatives of classes i and j), as echelon rows.
SpanSolver hom_space(const Algebra& A, const IdempotentSet& E, int i, int j);
/// Same for arbitrary idempotents.
SpanSolver peirce_space(const Algebra& A, const Vec& left, const Vec& right);

/// Minimal polynomial of x in A (monic, ascending coefficients).
std::vector<Fel> minimal_polynomial(const Algebra& A, const Vec& x);

/// A subalgebra (or non-unital corner) re-packaged as an algebra of its own,
/// with coordinate maps to and from the parent.
struct Subalgebra {
    AlgebraPtr alg;
    std::vector<Vec> basis_in_parent;
    SpanSolver expr;  // parent-width span of the basis, for coordinates

    Vec to_parent(const Vec& local) const;
    Vec from_parent(const Vec& parent) const;  // throws if not a member
};

/// Build the subalgebra spanned by `basis` (must be multiplicatively closed)
/// with the given unit.
Subalgebra make_subalgebra(AlgebraPtr A, const std::vector<Vec>& basis, const Vec& unit);

/// Corner algebra f*A*f with unit f.
Subalgebra corner_algebra(AlgebraPtr A, const Vec& f);

/// Center of A as a subalgebra.
Subalgebra center(const AlgebraPtr& A);

/// Central primitive idempotents of A (the block idempotents when A is a
/// group algebra), in parent coordinates.  Deterministic order.
std::vector<Vec> central_primitive_idempotents(const AlgebraPtr& A);

/// True when x * y is a unit of the local algebra e A e, i.e. lies outside
/// e*rad*e.  `rad` must be radical(A).
bool projectives_isomorphic(const Algebra& A, const SpanSolver& rad, const Vec& ei,
                            const Vec& ej);

/// Mutually inverse maps witnessing e_i A = e_j A: returns (a, b) with
/// a in ei*A*ej, b in ej*A*ei, a*b = ei and b*a = ej exactly.
std::optional<std::pair<Vec, Vec>> projective_iso_pair(const Algebra& A,
                                                       const SpanSolver& rad,
                                                       const Vec& ei, const Vec& ej);

}  // namespace tiltmut
