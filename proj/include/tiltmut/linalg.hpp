#pragma once

#include <optional>
#include <vector>

#include "tiltmut/field.hpp"

namespace tiltmut {

using Vec = std::vector<Fel>;

/// Dense matrix over a shared F_q.  Row-major.
struct FqMat {
    FqPtr F;
    int rows = 0, cols = 0;
    std::vector<Fel> a;

    FqMat() = default;
    FqMat(FqPtr f, int r, int c) : F(std::move(f)), rows(r), cols(c), a(size_t(r) * c, 0) {}

    Fel& at(int r, int c) { return a[size_t(r) * cols + c]; }
    Fel at(int r, int c) const { return a[size_t(r) * cols + c]; }
    Vec row(int r) const { return Vec(a.begin() + size_t(r) * cols, a.begin() + size_t(r + 1) * cols); }
    void set_row(int r, const Vec& v);

    static FqMat identity(FqPtr f, int n);
    FqMat transposed() const;
    bool is_zero() const;
    bool operator==(const FqMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

namespace linalg {

/// OpenMP-parallel product (rows of the result are independent).
FqMat mul(const FqMat& A, const FqMat& B);
/// Serial reference product, kept for testing and benchmarking.
FqMat mul_serial(const FqMat& A, const FqMat& B);

Vec mat_vec(const FqMat& A, const Vec& x);
Vec vec_mat(const Vec& x, const FqMat& A);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(FqMat& A);
int rank(FqMat A);

/// Basis of the right kernel {x : A x = 0}, one vector per row of the result.
FqMat kernel(const FqMat& A);

/// Solve A x = b; empty optional when inconsistent.
std::optional<Vec> solve(const FqMat& A, const Vec& b);
std::optional<FqMat> inverse(const FqMat& A);

/// Characteristic polynomial det(tI - A), monic, ascending coefficients
/// (length n+1).  Hessenberg reduction, exact over F_q.
std::vector<Fel> charpoly(const FqMat& A);

}  // namespace linalg

/// Incremental row space with expression tracking: every added generator is
/// remembered, and express() writes vectors as combinations of the generators
/// that were actually inserted (not of the echelon rows).
class SpanSolver {
  public:
    explicit SpanSolver(FqPtr F, int width) : F_(std::move(F)), width_(width) {}

    /// Insert a generator; returns true if it enlarged the span.
    bool add(const Vec& v);
    bool contains(const Vec& v) const;
    /// Coefficients c with v = sum c_i * generator_i, if v is in the span.
    std::optional<Vec> express(const Vec& v) const;
    /// Coefficients over the echelon rows themselves (length dim()).
    std::optional<Vec> express_in_rows(const Vec& v) const;
    /// Residue of v after reduction against the echelon rows.
    Vec reduce(Vec v) const;

    int dim() const { return int(rows_.size()); }
    int width() const { return width_; }
    int generators() const { return ngen_; }
    /// Echelon basis rows (reduced, deterministic given insertion order).
    const std::vector<Vec>& echelon_rows() const { return rows_; }
    const FqPtr& field() const { return F_; }

  private:
    FqPtr F_;
    int width_;
    int ngen_ = 0;
    std::vector<Vec> rows_;    // echelon rows, width width_
    std::vector<Vec> exprs_;   // row i = sum exprs_[i][g] * generator_g
    std::vector<int> pivots_;  // pivot column of each row
};

}  // namespace tiltmut
