#include "tiltmut/linalg.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tiltmut {

void FqMat::set_row(int r, const Vec& v) {
    if (int(v.size()) != cols) throw ShapeMismatch("row width mismatch");
    std::copy(v.begin(), v.end(), a.begin() + size_t(r) * cols);
}

FqMat FqMat::identity(FqPtr f, int n) {
    FqMat m(std::move(f), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMat FqMat::transposed() const {
    FqMat t(F, cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

bool FqMat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](Fel x) { return x == 0; });
}

namespace linalg {

namespace {
inline void mul_row(const Fq& F, const FqMat& A, const FqMat& B, FqMat& C, int r) {
    for (int k = 0; k < A.cols; ++k) {
        Fel v = A.at(r, k);
        if (!v) continue;
        const Fel* brow = &B.a[size_t(k) * B.cols];
        Fel* crow = &C.a[size_t(r) * C.cols];
        for (int c = 0; c < B.cols; ++c)
            if (brow[c]) crow[c] = F.add(crow[c], F.mul(v, brow[c]));
    }
}
}  // namespace

FqMat mul_serial(const FqMat& A, const FqMat& B) {
    if (A.cols != B.rows) throw ShapeMismatch("matrix product shape mismatch");
    FqMat C(A.F, A.rows, B.cols);
    for (int r = 0; r < A.rows; ++r) mul_row(*A.F, A, B, C, r);
    return C;
}

FqMat mul(const FqMat& A, const FqMat& B) {
    if (A.cols != B.rows) throw ShapeMismatch("matrix product shape mismatch");
    FqMat C(A.F, A.rows, B.cols);
#ifdef _OPENMP
    if (size_t(A.rows) * A.cols * B.cols >= 1u << 16) {
#pragma omp parallel for schedule(static)
        for (int r = 0; r < A.rows; ++r) mul_row(*A.F, A, B, C, r);
        return C;
    }
#endif
    for (int r = 0; r < A.rows; ++r) mul_row(*A.F, A, B, C, r);
    return C;
}

Vec mat_vec(const FqMat& A, const Vec& x) {
    if (int(x.size()) != A.cols) throw ShapeMismatch("mat_vec shape mismatch");
    const Fq& F = *A.F;
    Vec y(A.rows, 0);
    for (int r = 0; r < A.rows; ++r) {
        Fel acc = 0;
        for (int c = 0; c < A.cols; ++c)
            if (A.at(r, c) && x[c]) acc = F.add(acc, F.mul(A.at(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

Vec vec_mat(const Vec& x, const FqMat& A) {
    if (int(x.size()) != A.rows) throw ShapeMismatch("vec_mat shape mismatch");
    const Fq& F = *A.F;
    Vec y(A.cols, 0);
    for (int r = 0; r < A.rows; ++r) {
        if (!x[r]) continue;
        for (int c = 0; c < A.cols; ++c)
            if (A.at(r, c)) y[c] = F.add(y[c], F.mul(x[r], A.at(r, c)));
    }
    return y;
}

std::vector<int> rref(FqMat& A) {
    const Fq& F = *A.F;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < A.cols && row < A.rows; ++col) {
        int sel = -1;
        for (int r = row; r < A.rows; ++r)
            if (A.at(r, col)) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int c = 0; c < A.cols; ++c) std::swap(A.at(row, c), A.at(sel, c));
        Fel inv = F.inv(A.at(row, col));
        for (int c = col; c < A.cols; ++c) A.at(row, c) = F.mul(A.at(row, c), inv);
        for (int r = 0; r < A.rows; ++r) {
            if (r == row) continue;
            Fel f = A.at(r, col);
            if (!f) continue;
            for (int c = col; c < A.cols; ++c)
                A.at(r, c) = F.sub(A.at(r, c), F.mul(f, A.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(FqMat A) { return int(rref(A).size()); }

FqMat kernel(const FqMat& A) {
    FqMat R = A;
    std::vector<int> pivots = rref(R);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    FqMat K(A.F, A.cols - int(pivots.size()), A.cols);
    int out = 0;
    for (int col = 0; col < A.cols; ++col) {
        if (is_pivot[col]) continue;
        K.at(out, col) = 1;
        for (int r = 0; r < int(pivots.size()); ++r)
            K.at(out, pivots[r]) = A.F->neg(R.at(r, col));
        ++out;
    }
    return K;
}

std::optional<Vec> solve(const FqMat& A, const Vec& b) {
    if (int(b.size()) != A.rows) throw ShapeMismatch("solve shape mismatch");
    FqMat Aug(A.F, A.rows, A.cols + 1);
    for (int r = 0; r < A.rows; ++r) {
        for (int c = 0; c < A.cols; ++c) Aug.at(r, c) = A.at(r, c);
        Aug.at(r, A.cols) = b[r];
    }
    std::vector<int> pivots = rref(Aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    Vec x(A.cols, 0);
    for (int r = 0; r < int(pivots.size()); ++r) x[pivots[r]] = Aug.at(r, A.cols);
    return x;
}

std::optional<FqMat> inverse(const FqMat& A) {
    if (A.rows != A.cols) throw ShapeMismatch("inverse of a non-square matrix");
    FqMat Aug(A.F, A.rows, 2 * A.cols);
    for (int r = 0; r < A.rows; ++r) {
        for (int c = 0; c < A.cols; ++c) Aug.at(r, c) = A.at(r, c);
        Aug.at(r, A.cols + r) = 1;
    }
    auto pivots = rref(Aug);
    if (int(pivots.size()) != A.rows || pivots.back() != A.rows - 1) return std::nullopt;
    FqMat Inv(A.F, A.rows, A.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) Inv.at(r, c) = Aug.at(r, A.cols + c);
    return Inv;
}

std::vector<Fel> charpoly(const FqMat& A) {
    if (A.rows != A.cols) throw ShapeMismatch("charpoly of a non-square matrix");
    const Fq& F = *A.F;
    const int n = A.rows;
    FqMat H = A;
    // Reduce to upper Hessenberg form by similarity transformations.
    for (int col = 0; col < n - 2; ++col) {
        int piv = -1;
        for (int r = col + 1; r < n; ++r)
            if (H.at(r, col)) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != col + 1) {
            for (int c = 0; c < n; ++c) std::swap(H.at(col + 1, c), H.at(piv, c));
            for (int r = 0; r < n; ++r) std::swap(H.at(r, col + 1), H.at(r, piv));
        }
        Fel inv = F.inv(H.at(col + 1, col));
        for (int r = col + 2; r < n; ++r) {
            Fel f = H.at(r, col);
            if (!f) continue;
            Fel m = F.mul(f, inv);
            for (int c = 0; c < n; ++c) H.at(r, c) = F.sub(H.at(r, c), F.mul(m, H.at(col + 1, c)));
            for (int rr = 0; rr < n; ++rr)
                H.at(rr, col + 1) = F.add(H.at(rr, col + 1), F.mul(m, H.at(rr, r)));
        }
    }
    // Characteristic polynomials of leading principal Hessenberg blocks.
    std::vector<std::vector<Fel>> p(n + 1);
    p[0] = {1};
    for (int k = 1; k <= n; ++k) {
        // p_k(t) = (t - H[k-1][k-1]) p_{k-1}(t) - sum_{i=1..k-1}
        //          H[k-1-i][k-1] * (prod_{j=1..i} H[k-j][k-j-1]) * p_{k-1-i}(t)
        std::vector<Fel> pk(k + 1, 0);
        for (size_t i = 0; i < p[k - 1].size(); ++i) {
            pk[i + 1] = F.add(pk[i + 1], p[k - 1][i]);
            pk[i] = F.sub(pk[i], F.mul(H.at(k - 1, k - 1), p[k - 1][i]));
        }
        Fel subprod = 1;
        for (int i = 1; i <= k - 1; ++i) {
            subprod = F.mul(subprod, H.at(k - i, k - i - 1));
            if (!subprod) break;
            Fel coeff = F.mul(H.at(k - 1 - i, k - 1), subprod);
            if (!coeff) continue;
            for (size_t j = 0; j < p[k - 1 - i].size(); ++j)
                pk[j] = F.sub(pk[j], F.mul(coeff, p[k - 1 - i][j]));
        }
        p[k] = std::move(pk);
    }
    return p[n];
}

}  // namespace linalg

bool SpanSolver::add(const Vec& v) {
    if (int(v.size()) != width_) throw ShapeMismatch("SpanSolver width mismatch");
    const Fq& F = *F_;
    Vec w = v;
    Vec expr(size_t(ngen_) + 1, 0);
    expr[ngen_] = 1;
    ++ngen_;
    for (auto& e : exprs_) e.resize(ngen_, 0);
    for (size_t i = 0; i < rows_.size(); ++i) {
        Fel c = w[pivots_[i]];
        if (!c) continue;
        for (int j = 0; j < width_; ++j) w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
        for (int g = 0; g < ngen_; ++g) expr[g] = F.sub(expr[g], F.mul(c, exprs_[i][g]));
    }
    int piv = -1;
    for (int j = 0; j < width_; ++j)
        if (w[j]) { piv = j; break; }
    if (piv < 0) return false;
    Fel inv = F.inv(w[piv]);
    for (int j = 0; j < width_; ++j) w[j] = F.mul(w[j], inv);
    for (int g = 0; g < ngen_; ++g) expr[g] = F.mul(expr[g], inv);
    // Back-substitute to keep the echelon reduced.
    for (size_t i = 0; i < rows_.size(); ++i) {
        Fel c = rows_[i][piv];
        if (!c) continue;
        for (int j = 0; j < width_; ++j) rows_[i][j] = F.sub(rows_[i][j], F.mul(c, w[j]));
        for (int g = 0; g < ngen_; ++g) exprs_[i][g] = F.sub(exprs_[i][g], F.mul(c, expr[g]));
    }
    // Insert sorted by pivot column.
    size_t pos = 0;
    while (pos < rows_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    exprs_.insert(exprs_.begin() + pos, std::move(expr));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

Vec SpanSolver::reduce(Vec v) const {
    const Fq& F = *F_;
    for (size_t i = 0; i < rows_.size(); ++i) {
        Fel c = v[pivots_[i]];
        if (!c) continue;
        for (int j = 0; j < width_; ++j) v[j] = F.sub(v[j], F.mul(c, rows_[i][j]));
    }
    return v;
}

bool SpanSolver::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Fel x) { return x == 0; });
}

std::optional<Vec> SpanSolver::express_in_rows(const Vec& v) const {
    const Fq& F = *F_;
    Vec w = v;
    Vec coeffs(rows_.size(), 0);
    for (size_t i = 0; i < rows_.size(); ++i) {
        Fel c = w[pivots_[i]];
        if (!c) continue;
        coeffs[i] = c;
        for (int j = 0; j < width_; ++j) w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
    }
    if (!std::all_of(w.begin(), w.end(), [](Fel x) { return x == 0; })) return std::nullopt;
    return coeffs;
}

std::optional<Vec> SpanSolver::express(const Vec& v) const {
    const Fq& F = *F_;
    Vec w = v;
    Vec expr(ngen_, 0);
    for (size_t i = 0; i < rows_.size(); ++i) {
        Fel c = w[pivots_[i]];
        if (!c) continue;
        for (int j = 0; j < width_; ++j) w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
        for (int g = 0; g < ngen_; ++g) expr[g] = F.add(expr[g], F.mul(c, exprs_[i][g]));
    }
    if (!std::all_of(w.begin(), w.end(), [](Fel x) { return x == 0; })) return std::nullopt;
    return expr;
}

}  // namespace tiltmut
