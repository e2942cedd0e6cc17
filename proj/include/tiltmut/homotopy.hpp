#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tiltmut/algebra.hpp"

namespace tiltmut {

/// Matrix whose entries are algebra elements (coordinate vectors).
struct ElemMat {
    int rows = 0, cols = 0;
    int width = 0;  // algebra dimension
    std::vector<Vec> e;

    ElemMat() = default;
    ElemMat(int r, int c, int w) : rows(r), cols(c), width(w), e(size_t(r) * c, Vec(w, 0)) {}
    Vec& at(int r, int c) { return e[size_t(r) * cols + c]; }
    const Vec& at(int r, int c) const { return e[size_t(r) * cols + c]; }
    bool operator==(const ElemMat& o) const = default;
};

/// An algebra with a chosen complete idempotent set and cached Peirce data
/// (cell bases, radical cells, scalar extraction).  Built once, shared
/// read-only; all downstream complex operations are pure.
class ProjAlgebra {
  public:
    static std::shared_ptr<const ProjAlgebra> make(AlgebraPtr A, IdempotentSet E);

    const Algebra& algebra() const { return *A_; }
    const AlgebraPtr& algebra_ptr() const { return A_; }
    const IdempotentSet& idempotents() const { return E_; }
    const SpanSolver& rad() const { return rad_; }
    int num_classes() const { return nclasses_; }
    const Vec& rep_idem(int c) const { return E_.idems[E_.representative[c]]; }
    /// Basis of Hom(P_i, P_j) = e_j A e_i.
    const SpanSolver& cell(int j, int i) const { return cells_[j][i]; }
    const SpanSolver& rad_cell(int j, int i) const { return rad_cells_[j][i]; }
    int cell_dim(int j, int i) const { return cells_[j][i].dim(); }
    Vec cell_coords(int j, int i, const Vec& x) const;
    Vec cell_from_coords(int j, int i, const Vec& coords) const;
    /// Residue of x in e_c A e_c modulo the radical, as a scalar.
    Fel scalar_mod_rad(int c, const Vec& x) const;
    /// True when x lies in e_j rad e_i (i.e. is a non-isomorphism component).
    bool entry_in_radical(const Vec& x) const { return rad_.contains(x); }
    /// Inverse of a unit element of e_c A e_c.
    Vec corner_inverse(int c, const Vec& x) const;
    std::string class_label(int c) const { return "P" + std::to_string(c + 1); }
    int class_by_label(const std::string& s) const;

  private:
    AlgebraPtr A_;
    IdempotentSet E_;
    SpanSolver rad_;
    int nclasses_ = 0;
    std::vector<std::vector<SpanSolver>> cells_, rad_cells_;
    std::vector<SpanSolver> scalar_;

    ProjAlgebra(AlgebraPtr A, IdempotentSet E)
        : A_(std::move(A)), E_(std::move(E)), rad_(A_->F, A_->dim) {}
};

using ProjAlgebraPtr = std::shared_ptr<const ProjAlgebra>;

/// Bounded cochain complex of projectives P_c = e_c A; the differential
/// raises degree, entries live in the matching Peirce cells, and d^2 = 0
/// exactly.  Terms are multisets of class indices.
struct ProjComplex {
    ProjAlgebraPtr PA;
    int lo = 0;
    std::vector<std::vector<int>> terms;  // terms[k] = classes in degree lo+k
    std::vector<ElemMat> diffs;           // diffs[k]: degree lo+k -> lo+k+1

    int hi() const { return lo + int(terms.size()) - 1; }
    bool is_zero() const { return terms.empty(); }
    const std::vector<int>& term(int degree) const;
    int term_count(int degree) const;
    const ElemMat* diff(int degree) const;  // nullptr when out of range

    void validate() const;
    /// Remove empty boundary degrees; the zero complex normalizes to lo = 0.
    void trim();
    /// Sort each degree's summands by class, permuting differential rows/cols.
    void sort_terms();
    bool minimal() const;  // all differential entries in the radical

    static ProjComplex zero(ProjAlgebraPtr PA);
    static ProjComplex stalk(ProjAlgebraPtr PA, int cls, int degree = 0);
    /// One projective per class, concentrated in degree 0 (the basic algebra
    /// as a stalk complex).
    static ProjComplex algebra_stalk(ProjAlgebraPtr PA);
};

ProjComplex shift(const ProjComplex& X, int n);
ProjComplex direct_sum(const ProjComplex& X, const ProjComplex& Y);
ProjComplex direct_sum(ProjAlgebraPtr PA, const std::vector<ProjComplex>& parts);

/// Degree-0 chain map between complexes over the same algebra.
struct ChainMap {
    ProjComplex src, dst;
    std::map<int, ElemMat> comps;  // degree -> matrix src.term(i) -> dst.term(i)

    const ElemMat* comp(int degree) const;
    void validate() const;  // commutes with the differentials
};

ChainMap identity_map(const ProjComplex& X);
/// cone(f)^i = X^{i+1} (+) Y^i with the standard differential; the canonical
/// maps Y -> cone(f) -> X[1] are chain maps.
ProjComplex cone(const ChainMap& f);

/// Integer class vector in K_0: alternating sum of term multiplicities.
std::vector<long> class_vector(const ProjComplex& X);

/// Window of shifts n for which Hom(X, Y[n]) can be nonzero.
std::pair<int, int> hom_window(const ProjComplex& X, const ProjComplex& Y);

/// Chain maps X -> Y[n] modulo null-homotopy, with enough structure to
/// compose and to reduce arbitrary chain maps.  `with_homotopy = false`
/// yields the plain chain-map space (no quotient).
class HomSpace {
  public:
    HomSpace(const ProjComplex& X, const ProjComplex& Y, int n, bool with_homotopy = true);

    int dim() const;
    int chain_dim() const;
    /// Chain-map representative of the k-th quotient basis class.
    ChainMap rep(int k) const;
    ChainMap chain_rep(int k) const;
    /// Chain map from coefficients over the chain basis.
    ChainMap chain_combination(const Vec& coeffs) const;
    /// Quotient coordinates of an arbitrary chain map X -> Y[n].
    Vec project(const ChainMap& f) const;

    const ProjComplex& source() const;
    const ProjComplex& target() const;  // Y[n]

  private:
    std::shared_ptr<const struct HomSpaceImpl> impl_;
};

int hom_dim(const ProjComplex& X, const ProjComplex& Y, int n);

/// f after g (g first).
ChainMap compose(const ChainMap& f, const ChainMap& g);

/// End_{K^b}(X) (modulo homotopy) as an algebra, with the hom-space giving
/// the correspondence between algebra coordinates and chain maps.
struct EndAlgebra {
    std::shared_ptr<HomSpace> hom;
    AlgebraPtr alg;
};
EndAlgebra end_algebra(const ProjComplex& X);
/// Chain endomorphisms without the homotopy quotient (for decompositions).
EndAlgebra end_algebra_chain(const ProjComplex& X);

/// Homotopy-equivalent complex with all differential entries in the radical
/// (Gaussian cancellation of unit entries).
ProjComplex minimize(const ProjComplex& X);

/// Krull-Schmidt decomposition of a minimized complex into indecomposables.
std::vector<ProjComplex> decompose(const ProjComplex& X);

bool is_isomorphic(const ProjComplex& X, const ProjComplex& Y);
/// Faster path when both sides are known indecomposable and minimized.
bool is_isomorphic_indec(const ProjComplex& X, const ProjComplex& Y);

/// Multiset fingerprint used to bucket candidates before full iso testing.
std::string fingerprint(const ProjComplex& X);

ProjComplex complex_from_json_text(ProjAlgebraPtr PA, const std::string& text);
std::string complex_to_json_text(const ProjComplex& X);

}  // namespace tiltmut
