#include "tiltmut/homotopy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tiltmut {

// ---------------------------------------------------------------------------
// ProjAlgebra
// ---------------------------------------------------------------------------

std::shared_ptr<const ProjAlgebra> ProjAlgebra::make(AlgebraPtr A, IdempotentSet E) {
    auto pa = std::shared_ptr<ProjAlgebra>(new ProjAlgebra(std::move(A), std::move(E)));
    const Algebra& alg = *pa->A_;
    pa->rad_ = radical(alg);
    pa->nclasses_ = pa->E_.num_classes();
    const int n = pa->nclasses_;
    pa->cells_.assign(n, std::vector<SpanSolver>(n, SpanSolver(alg.F, alg.dim)));
    pa->rad_cells_.assign(n, std::vector<SpanSolver>(n, SpanSolver(alg.F, alg.dim)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const Vec& ej = pa->rep_idem(j);
            const Vec& ei = pa->rep_idem(i);
            for (int k = 0; k < alg.dim; ++k)
                pa->cells_[j][i].add(alg.mulvec(alg.mulvec(ej, alg.basis_vec(k)), ei));
            for (const Vec& r : pa->rad_.echelon_rows())
                pa->rad_cells_[j][i].add(alg.mulvec(alg.mulvec(ej, r), ei));
        }
    pa->scalar_.assign(n, SpanSolver(alg.F, alg.dim));
    for (int c = 0; c < n; ++c) {
        for (const Vec& r : pa->rad_cells_[c][c].echelon_rows()) pa->scalar_[c].add(r);
        pa->scalar_[c].add(pa->rep_idem(c));
        if (pa->scalar_[c].dim() != pa->cells_[c][c].dim())
            throw NonSplitField(pa->cells_[c][c].dim() - pa->rad_cells_[c][c].dim());
    }
    return pa;
}

Vec ProjAlgebra::cell_coords(int j, int i, const Vec& x) const {
    auto c = cells_[j][i].express_in_rows(x);
    if (!c) throw ValidationError("element does not lie in the expected Peirce cell");
    return *c;
}

Vec ProjAlgebra::cell_from_coords(int j, int i, const Vec& coords) const {
    const Algebra& alg = *A_;
    Vec r = alg.zero();
    const auto& rows = cells_[j][i].echelon_rows();
    for (size_t k = 0; k < coords.size(); ++k)
        if (coords[k]) r = alg.add(r, alg.scale(rows[k], coords[k]));
    return r;
}

Fel ProjAlgebra::scalar_mod_rad(int c, const Vec& x) const {
    auto coeffs = scalar_[c].express(x);
    if (!coeffs) throw ValidationError("element does not lie in the diagonal cell");
    return coeffs->back();
}

Vec ProjAlgebra::corner_inverse(int c, const Vec& x) const {
    const Algebra& alg = *A_;
    const auto& rows = cells_[c][c].echelon_rows();
    const int n = int(rows.size());
    FqMat M(alg.F, alg.dim, n);
    for (int col = 0; col < n; ++col) {
        Vec prod = alg.mulvec(x, rows[col]);
        for (int r = 0; r < alg.dim; ++r) M.at(r, col) = prod[r];
    }
    auto sol = linalg::solve(M, rep_idem(c));
    if (!sol) throw ValidationError("element is not invertible in its corner");
    Vec inv = alg.zero();
    for (int col = 0; col < n; ++col)
        if ((*sol)[col]) inv = alg.add(inv, alg.scale(rows[col], (*sol)[col]));
    if (alg.mulvec(inv, x) != rep_idem(c) || alg.mulvec(x, inv) != rep_idem(c))
        throw ValidationError("corner inverse is one-sided");
    return inv;
}

int ProjAlgebra::class_by_label(const std::string& s) const {
    if (s.size() > 1 && s[0] == 'P') {
        int v = std::atoi(s.c_str() + 1);
        if (v >= 1 && v <= nclasses_) return v - 1;
    }
    throw SchemaError("", "unknown projective label '" + s + "'");
}

// ---------------------------------------------------------------------------
// ElemMat helpers
// ---------------------------------------------------------------------------

namespace {

bool vec_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Fel x) { return x == 0; });
}

bool emat_zero(const ElemMat& m) {
    return std::all_of(m.e.begin(), m.e.end(), [](const Vec& v) { return vec_zero(v); });
}

// A o B with A: mid -> to, B: from -> mid; entries compose as A(u,s)*B(s,t).
ElemMat emat_compose(const Algebra& alg, const ElemMat& A, const ElemMat& B) {
    if (A.cols != B.rows) throw ShapeMismatch("ElemMat composition shape mismatch");
    ElemMat C(A.rows, B.cols, alg.dim);
    for (int u = 0; u < A.rows; ++u)
        for (int s = 0; s < A.cols; ++s) {
            if (vec_zero(A.at(u, s))) continue;
            for (int t = 0; t < B.cols; ++t) {
                if (vec_zero(B.at(s, t))) continue;
                C.at(u, t) = alg.add(C.at(u, t), alg.mulvec(A.at(u, s), B.at(s, t)));
            }
        }
    return C;
}

ElemMat emat_add(const Algebra& alg, const ElemMat& A, const ElemMat& B) {
    ElemMat C = A;
    for (size_t i = 0; i < C.e.size(); ++i) C.e[i] = alg.add(C.e[i], B.e[i]);
    return C;
}

ElemMat emat_sub(const Algebra& alg, const ElemMat& A, const ElemMat& B) {
    ElemMat C = A;
    for (size_t i = 0; i < C.e.size(); ++i) C.e[i] = alg.sub(C.e[i], B.e[i]);
    return C;
}

ElemMat emat_neg(const Algebra& alg, const ElemMat& A) {
    ElemMat C = A;
    for (auto& v : C.e) v = alg.sub(alg.zero(), v);
    return C;
}

ElemMat emat_identity(const ProjAlgebra& pa, const std::vector<int>& classes) {
    ElemMat I(int(classes.size()), int(classes.size()), pa.algebra().dim);
    for (size_t i = 0; i < classes.size(); ++i) I.at(int(i), int(i)) = pa.rep_idem(classes[i]);
    return I;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProjComplex
// ---------------------------------------------------------------------------

const std::vector<int>& ProjComplex::term(int degree) const {
    static const std::vector<int> empty;
    int k = degree - lo;
    if (k < 0 || k >= int(terms.size())) return empty;
    return terms[k];
}

int ProjComplex::term_count(int degree) const { return int(term(degree).size()); }

const ElemMat* ProjComplex::diff(int degree) const {
    int k = degree - lo;
    if (k < 0 || k >= int(diffs.size())) return nullptr;
    return &diffs[k];
}

void ProjComplex::validate() const {
    if (!PA) throw ValidationError("complex has no algebra");
    if (terms.empty()) return;
    if (diffs.size() + 1 != terms.size())
        throw ValidationError("complex needs one differential per adjacent degree pair");
    const Algebra& alg = PA->algebra();
    for (const auto& t : terms)
        for (int c : t)
            if (c < 0 || c >= PA->num_classes())
                throw ValidationError("term references an unknown projective class");
    for (size_t k = 0; k < diffs.size(); ++k) {
        const ElemMat& d = diffs[k];
        if (d.rows != int(terms[k + 1].size()) || d.cols != int(terms[k].size()))
            throw ValidationError("differential shape does not match the terms");
        for (int s = 0; s < d.rows; ++s)
            for (int t = 0; t < d.cols; ++t) {
                const Vec& x = d.at(s, t);
                if (int(x.size()) != alg.dim)
                    throw ValidationError("differential entry has wrong width");
                Vec proj = alg.mulvec(alg.mulvec(PA->rep_idem(terms[k + 1][s]), x),
                                      PA->rep_idem(terms[k][t]));
                if (proj != x)
                    throw ValidationError("differential entry lies outside its Peirce cell");
            }
    }
    for (size_t k = 0; k + 1 < diffs.size(); ++k)
        if (!emat_zero(emat_compose(alg, diffs[k + 1], diffs[k])))
            throw ValidationError("d^2 != 0");
}

void ProjComplex::trim() {
    while (!terms.empty() && terms.front().empty()) {
        terms.erase(terms.begin());
        if (!diffs.empty()) diffs.erase(diffs.begin());
        ++lo;
    }
    while (!terms.empty() && terms.back().empty()) {
        terms.pop_back();
        if (!diffs.empty()) diffs.pop_back();
    }
    if (terms.empty()) {
        lo = 0;
        diffs.clear();
    }
}

void ProjComplex::sort_terms() {
    for (size_t k = 0; k < terms.size(); ++k) {
        std::vector<int> perm(terms[k].size());
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](int a, int b) { return terms[k][a] < terms[k][b]; });
        std::vector<int> sorted;
        for (int p : perm) sorted.push_back(terms[k][p]);
        if (sorted == terms[k]) continue;
        if (k < diffs.size()) {
            ElemMat nd(diffs[k].rows, diffs[k].cols, diffs[k].width);
            for (int s = 0; s < nd.rows; ++s)
                for (int t = 0; t < nd.cols; ++t) nd.at(s, t) = diffs[k].at(s, perm[t]);
            diffs[k] = std::move(nd);
        }
        if (k > 0) {
            ElemMat nd(diffs[k - 1].rows, diffs[k - 1].cols, diffs[k - 1].width);
            for (int s = 0; s < nd.rows; ++s)
                for (int t = 0; t < nd.cols; ++t) nd.at(s, t) = diffs[k - 1].at(perm[s], t);
            diffs[k - 1] = std::move(nd);
        }
        terms[k] = std::move(sorted);
    }
}

bool ProjComplex::minimal() const {
    for (const ElemMat& d : diffs)
        for (const Vec& x : d.e)
            if (!PA->entry_in_radical(x)) return false;
    return true;
}

ProjComplex ProjComplex::zero(ProjAlgebraPtr PA) {
    ProjComplex X;
    X.PA = std::move(PA);
    return X;
}

ProjComplex ProjComplex::stalk(ProjAlgebraPtr PA, int cls, int degree) {
    ProjComplex X;
    X.PA = std::move(PA);
    X.lo = degree;
    X.terms = {{cls}};
    return X;
}

ProjComplex ProjComplex::algebra_stalk(ProjAlgebraPtr PA) {
    ProjComplex X;
    X.lo = 0;
    X.terms.resize(1);
    for (int c = 0; c < PA->num_classes(); ++c) X.terms[0].push_back(c);
    X.PA = std::move(PA);
    return X;
}

ProjComplex shift(const ProjComplex& X, int n) {
    ProjComplex Y = X;
    Y.lo -= n;
    if (n % 2 != 0)
        for (ElemMat& d : Y.diffs) d = emat_neg(X.PA->algebra(), d);
    return Y;
}

ProjComplex direct_sum(const ProjComplex& X, const ProjComplex& Y) {
    if (X.is_zero()) return Y;
    if (Y.is_zero()) return X;
    const Algebra& alg = X.PA->algebra();
    ProjComplex S;
    S.PA = X.PA;
    S.lo = std::min(X.lo, Y.lo);
    int hi = std::max(X.hi(), Y.hi());
    S.terms.resize(hi - S.lo + 1);
    for (int d = S.lo; d <= hi; ++d) {
        auto& t = S.terms[d - S.lo];
        for (int c : X.term(d)) t.push_back(c);
        for (int c : Y.term(d)) t.push_back(c);
    }
    if (S.terms.size() > 1) S.diffs.assign(S.terms.size() - 1, ElemMat());
    for (int d = S.lo; d < hi; ++d) {
        int rx = X.term_count(d + 1), cx = X.term_count(d);
        int ry = Y.term_count(d + 1), cy = Y.term_count(d);
        ElemMat m(rx + ry, cx + cy, alg.dim);
        if (const ElemMat* dx = X.diff(d))
            for (int s = 0; s < rx; ++s)
                for (int t = 0; t < cx; ++t) m.at(s, t) = dx->at(s, t);
        if (const ElemMat* dy = Y.diff(d))
            for (int s = 0; s < ry; ++s)
                for (int t = 0; t < cy; ++t) m.at(rx + s, cx + t) = dy->at(s, t);
        S.diffs[d - S.lo] = std::move(m);
    }
    return S;
}

ProjComplex direct_sum(ProjAlgebraPtr PA, const std::vector<ProjComplex>& parts) {
    ProjComplex S = ProjComplex::zero(std::move(PA));
    for (const auto& p : parts) S = direct_sum(S, p);
    return S;
}

// ---------------------------------------------------------------------------
// Chain maps and cones
// ---------------------------------------------------------------------------

const ElemMat* ChainMap::comp(int degree) const {
    auto it = comps.find(degree);
    return it == comps.end() ? nullptr : &it->second;
}

void ChainMap::validate() const {
    const Algebra& alg = src.PA->algebra();
    for (int d = std::min(src.lo, dst.lo) - 1; d <= std::max(src.hi(), dst.hi()); ++d) {
        int rows = dst.term_count(d + 1), cols = src.term_count(d);
        if (rows == 0 || cols == 0) continue;
        ElemMat lhs(rows, cols, alg.dim), rhs(rows, cols, alg.dim);
        if (const ElemMat* f = comp(d); f && dst.diff(d)) lhs = emat_compose(alg, *dst.diff(d), *f);
        if (const ElemMat* f1 = comp(d + 1); f1 && src.diff(d))
            rhs = emat_compose(alg, *f1, *src.diff(d));
        if (!(lhs == rhs)) throw ValidationError("chain map does not commute with differentials");
    }
}

ChainMap identity_map(const ProjComplex& X) {
    ChainMap f;
    f.src = X;
    f.dst = X;
    for (int d = X.lo; d <= X.hi(); ++d)
        if (X.term_count(d)) f.comps[d] = emat_identity(*X.PA, X.term(d));
    return f;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    const Algebra& alg = f.src.PA->algebra();
    ChainMap h;
    h.src = g.src;
    h.dst = f.dst;
    for (int d = std::min(g.src.lo, f.dst.lo); d <= std::max(g.src.hi(), f.dst.hi()); ++d) {
        int rows = f.dst.term_count(d), cols = g.src.term_count(d);
        if (rows == 0 || cols == 0) continue;
        const ElemMat* fm = f.comp(d);
        const ElemMat* gm = g.comp(d);
        ElemMat m(rows, cols, alg.dim);
        if (fm && gm) m = emat_compose(alg, *fm, *gm);
        h.comps[d] = std::move(m);
    }
    return h;
}

ProjComplex cone(const ChainMap& f) {
    f.validate();
    const ProjComplex& X = f.src;
    const ProjComplex& Y = f.dst;
    if (X.is_zero() && Y.is_zero()) return ProjComplex::zero(X.PA);
    const Algebra& alg = X.PA->algebra();
    ProjComplex C;
    C.PA = X.PA;
    int lo = Y.is_zero() ? X.lo - 1 : (X.is_zero() ? Y.lo : std::min(X.lo - 1, Y.lo));
    int hi = Y.is_zero() ? X.hi() - 1 : (X.is_zero() ? Y.hi() : std::max(X.hi() - 1, Y.hi()));
    C.lo = lo;
    C.terms.resize(hi - lo + 1);
    for (int d = lo; d <= hi; ++d) {
        auto& t = C.terms[d - lo];
        for (int c : X.term(d + 1)) t.push_back(c);
        for (int c : Y.term(d)) t.push_back(c);
    }
    if (C.terms.size() > 1) C.diffs.assign(C.terms.size() - 1, ElemMat());
    for (int d = lo; d < hi; ++d) {
        int rX = X.term_count(d + 2), rY = Y.term_count(d + 1);
        int cX = X.term_count(d + 1), cY = Y.term_count(d);
        ElemMat m(rX + rY, cX + cY, alg.dim);
        if (const ElemMat* dx = X.diff(d + 1))
            for (int s = 0; s < rX; ++s)
                for (int t = 0; t < cX; ++t) m.at(s, t) = alg.sub(alg.zero(), dx->at(s, t));
        if (const ElemMat* fc = f.comp(d + 1))
            for (int s = 0; s < rY; ++s)
                for (int t = 0; t < cX; ++t) m.at(rX + s, t) = fc->at(s, t);
        if (const ElemMat* dy = Y.diff(d))
            for (int s = 0; s < rY; ++s)
                for (int t = 0; t < cY; ++t) m.at(rX + s, cX + t) = dy->at(s, t);
        C.diffs[d - lo] = std::move(m);
    }
    C.trim();
    C.validate();
    return C;
}

std::vector<long> class_vector(const ProjComplex& X) {
    std::vector<long> v(X.PA->num_classes(), 0);
    for (int d = X.lo; d <= X.hi(); ++d)
        for (int c : X.term(d)) v[c] += (d % 2 == 0) ? 1 : -1;
    return v;
}

std::pair<int, int> hom_window(const ProjComplex& X, const ProjComplex& Y) {
    if (X.is_zero() || Y.is_zero()) return {0, -1};
    return {Y.lo - X.hi(), Y.hi() - X.lo};
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

namespace {

// Flattened coordinates for Hom(sum P_from, sum P_to).
struct HomLayout {
    const ProjAlgebra* pa = nullptr;
    std::vector<int> from, to;
    std::vector<std::vector<int>> off;
    int total = 0;

    HomLayout() = default;
    HomLayout(const ProjAlgebra& p, std::vector<int> f, std::vector<int> t)
        : pa(&p), from(std::move(f)), to(std::move(t)) {
        off.assign(to.size(), std::vector<int>(from.size(), 0));
        for (size_t s = 0; s < to.size(); ++s)
            for (size_t tt = 0; tt < from.size(); ++tt) {
                off[s][tt] = total;
                total += pa->cell_dim(to[s], from[tt]);
            }
    }

    void pack_into(const ElemMat& m, Vec& out, int base) const {
        for (size_t s = 0; s < to.size(); ++s)
            for (size_t t = 0; t < from.size(); ++t) {
                Vec c = pa->cell_coords(to[s], from[t], m.at(int(s), int(t)));
                for (size_t k = 0; k < c.size(); ++k) out[base + off[s][t] + k] = c[k];
            }
    }

    ElemMat unpack(const Vec& v, int base) const {
        ElemMat m(int(to.size()), int(from.size()), pa->algebra().dim);
        for (size_t s = 0; s < to.size(); ++s)
            for (size_t t = 0; t < from.size(); ++t) {
                int d = pa->cell_dim(to[s], from[t]);
                Vec c(v.begin() + base + off[s][t], v.begin() + base + off[s][t] + d);
                m.at(int(s), int(t)) = pa->cell_from_coords(to[s], from[t], c);
            }
        return m;
    }
};

}  // namespace

struct HomSpaceImpl {
    ProjComplex X, Z;
    int deg_lo = 0, deg_hi = -1;
    std::vector<HomLayout> layouts;
    std::vector<int> deg_base;
    int width = 0;
    std::vector<Vec> chain_basis;
    std::vector<Vec> quot_reps;
    std::vector<int> quot_slots;
    SpanSolver mixed;

    HomSpaceImpl(ProjComplex x, ProjComplex z)
        : X(std::move(x)), Z(std::move(z)), mixed(X.PA->algebra().F, 0) {}

    ChainMap unpack(const Vec& ambient) const {
        ChainMap f;
        f.src = X;
        f.dst = Z;
        for (int d = deg_lo; d <= deg_hi; ++d)
            f.comps[d] = layouts[d - deg_lo].unpack(ambient, deg_base[d - deg_lo]);
        return f;
    }

    Vec pack(const ChainMap& f) const {
        Vec out(width, 0);
        const Algebra& alg = X.PA->algebra();
        for (int d = deg_lo; d <= deg_hi; ++d) {
            const ElemMat* m = f.comp(d);
            ElemMat mm =
                m ? *m : ElemMat(int(Z.term(d).size()), int(X.term(d).size()), alg.dim);
            layouts[d - deg_lo].pack_into(mm, out, deg_base[d - deg_lo]);
        }
        return out;
    }
};

HomSpace::HomSpace(const ProjComplex& X, const ProjComplex& Y, int n, bool with_homotopy) {
    ProjComplex Z = shift(Y, n);
    auto impl = std::make_shared<HomSpaceImpl>(X, Z);
    const ProjAlgebra& pa = *X.PA;
    const Algebra& alg = pa.algebra();

    impl->deg_lo = std::max(X.lo, Z.lo);
    impl->deg_hi = std::min(X.hi(), Z.hi());
    for (int d = impl->deg_lo; d <= impl->deg_hi; ++d) {
        impl->layouts.emplace_back(pa, X.term(d), Z.term(d));
        impl->deg_base.push_back(impl->width);
        impl->width += impl->layouts.back().total;
    }
    impl->mixed = SpanSolver(alg.F, impl->width);

    if (impl->width == 0) {
        impl_ = impl;
        return;
    }

    // Chain condition: for every degree d, d_Z o f^d - f^{d+1} o d_X = 0.
    int total_rows = 0;
    std::vector<HomLayout> targets;
    std::vector<int> target_deg;
    for (int d = impl->deg_lo - 1; d <= impl->deg_hi; ++d) {
        if (X.term_count(d) == 0 || Z.term_count(d + 1) == 0) continue;
        targets.emplace_back(pa, X.term(d), Z.term(d + 1));
        target_deg.push_back(d);
        total_rows += targets.back().total;
    }
    FqMat C(alg.F, total_rows, impl->width);
    int row_base = 0;
    for (size_t ti = 0; ti < targets.size(); ++ti) {
        const HomLayout& tgt = targets[ti];
        const int d = target_deg[ti];
        if (d >= impl->deg_lo && d <= impl->deg_hi && Z.diff(d)) {
            // phi -> d_Z o phi, phi = f^d
            const HomLayout& src = impl->layouts[d - impl->deg_lo];
            const ElemMat& D = *Z.diff(d);
            for (size_t s = 0; s < src.to.size(); ++s)
                for (size_t t = 0; t < src.from.size(); ++t) {
                    int cd = pa.cell_dim(src.to[s], src.from[t]);
                    for (int k = 0; k < cd; ++k) {
                        Vec unit(cd, 0);
                        unit[k] = 1;
                        Vec b = pa.cell_from_coords(src.to[s], src.from[t], unit);
                        int col = impl->deg_base[d - impl->deg_lo] + src.off[s][t] + k;
                        for (size_t u = 0; u < tgt.to.size(); ++u) {
                            Vec prod = alg.mulvec(D.at(int(u), int(s)), b);
                            if (vec_zero(prod)) continue;
                            Vec cc = pa.cell_coords(tgt.to[u], tgt.from[t], prod);
                            for (size_t m = 0; m < cc.size(); ++m)
                                C.at(row_base + tgt.off[u][t] + int(m), col) = alg.F->add(
                                    C.at(row_base + tgt.off[u][t] + int(m), col), cc[m]);
                        }
                    }
                }
        }
        if (d + 1 >= impl->deg_lo && d + 1 <= impl->deg_hi && X.diff(d)) {
            // phi -> -(phi o d_X), phi = f^{d+1}
            const HomLayout& src = impl->layouts[d + 1 - impl->deg_lo];
            const ElemMat& D = *X.diff(d);
            for (size_t s = 0; s < src.to.size(); ++s)
                for (size_t t = 0; t < src.from.size(); ++t) {
                    int cd = pa.cell_dim(src.to[s], src.from[t]);
                    for (int k = 0; k < cd; ++k) {
                        Vec unit(cd, 0);
                        unit[k] = 1;
                        Vec b = pa.cell_from_coords(src.to[s], src.from[t], unit);
                        int col = impl->deg_base[d + 1 - impl->deg_lo] + src.off[s][t] + k;
                        for (size_t v = 0; v < tgt.from.size(); ++v) {
                            Vec prod = alg.mulvec(b, D.at(int(t), int(v)));
                            if (vec_zero(prod)) continue;
                            Vec cc = pa.cell_coords(tgt.to[s], tgt.from[v], prod);
                            for (size_t m = 0; m < cc.size(); ++m)
                                C.at(row_base + tgt.off[s][v] + int(m), col) = alg.F->sub(
                                    C.at(row_base + tgt.off[s][v] + int(m), col), cc[m]);
                        }
                    }
                }
        }
        row_base += tgt.total;
    }

    FqMat K = linalg::kernel(C);
    for (int r = 0; r < K.rows; ++r) impl->chain_basis.push_back(K.row(r));

    if (with_homotopy) {
        // h = (h^d: X^d -> Z^{d-1}) contributes d_Z h + h d_X.
        for (int d = X.lo; d <= X.hi(); ++d) {
            if (X.term_count(d) == 0 || Z.term_count(d - 1) == 0) continue;
            HomLayout hl(pa, X.term(d), Z.term(d - 1));
            for (size_t s = 0; s < hl.to.size(); ++s)
                for (size_t t = 0; t < hl.from.size(); ++t) {
                    int cd = pa.cell_dim(hl.to[s], hl.from[t]);
                    for (int k = 0; k < cd; ++k) {
                        Vec unit(cd, 0);
                        unit[k] = 1;
                        Vec b = pa.cell_from_coords(hl.to[s], hl.from[t], unit);
                        Vec img(impl->width, 0);
                        if (d >= impl->deg_lo && d <= impl->deg_hi && Z.diff(d - 1)) {
                            const HomLayout& tgt = impl->layouts[d - impl->deg_lo];
                            const ElemMat& D = *Z.diff(d - 1);
                            for (size_t u = 0; u < tgt.to.size(); ++u) {
                                Vec prod = alg.mulvec(D.at(int(u), int(s)), b);
                                if (vec_zero(prod)) continue;
                                Vec cc = pa.cell_coords(tgt.to[u], tgt.from[t], prod);
                                for (size_t m = 0; m < cc.size(); ++m) {
                                    int pos =
                                        impl->deg_base[d - impl->deg_lo] + tgt.off[u][t] + int(m);
                                    img[pos] = alg.F->add(img[pos], cc[m]);
                                }
                            }
                        }
                        if (d - 1 >= impl->deg_lo && d - 1 <= impl->deg_hi && X.diff(d - 1)) {
                            const HomLayout& tgt = impl->layouts[d - 1 - impl->deg_lo];
                            const ElemMat& D = *X.diff(d - 1);
                            for (size_t v = 0; v < tgt.from.size(); ++v) {
                                Vec prod = alg.mulvec(b, D.at(int(t), int(v)));
                                if (vec_zero(prod)) continue;
                                Vec cc = pa.cell_coords(tgt.to[s], tgt.from[v], prod);
                                for (size_t m = 0; m < cc.size(); ++m) {
                                    int pos = impl->deg_base[d - 1 - impl->deg_lo] +
                                              tgt.off[s][v] + int(m);
                                    img[pos] = alg.F->add(img[pos], cc[m]);
                                }
                            }
                        }
                        impl->mixed.add(img);
                    }
                }
        }
    }
    for (const Vec& v : impl->chain_basis) {
        int before = impl->mixed.dim();
        impl->mixed.add(v);
        if (impl->mixed.dim() > before) {
            impl->quot_reps.push_back(v);
            impl->quot_slots.push_back(impl->mixed.generators() - 1);
        }
    }
    impl_ = impl;
}

int HomSpace::dim() const { return int(impl_->quot_reps.size()); }
int HomSpace::chain_dim() const { return int(impl_->chain_basis.size()); }
const ProjComplex& HomSpace::source() const { return impl_->X; }
const ProjComplex& HomSpace::target() const { return impl_->Z; }

ChainMap HomSpace::rep(int k) const { return impl_->unpack(impl_->quot_reps.at(k)); }
ChainMap HomSpace::chain_rep(int k) const { return impl_->unpack(impl_->chain_basis.at(k)); }

ChainMap HomSpace::chain_combination(const Vec& coeffs) const {
    const Fq& F = *impl_->X.PA->algebra().F;
    Vec amb(impl_->width, 0);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k]) continue;
        for (int j = 0; j < impl_->width; ++j)
            amb[j] = F.add(amb[j], F.mul(coeffs[k], impl_->chain_basis[k][j]));
    }
    return impl_->unpack(amb);
}

Vec HomSpace::project(const ChainMap& f) const {
    Vec amb = impl_->pack(f);
    auto coeffs = impl_->mixed.express(amb);
    if (!coeffs) throw ValidationError("map is not a chain map in this hom space");
    Vec out(impl_->quot_reps.size(), 0);
    for (size_t k = 0; k < impl_->quot_slots.size(); ++k)
        out[k] = (*coeffs)[impl_->quot_slots[k]];
    return out;
}

int hom_dim(const ProjComplex& X, const ProjComplex& Y, int n) {
    return HomSpace(X, Y, n).dim();
}

// ---------------------------------------------------------------------------
// End algebras
// ---------------------------------------------------------------------------

namespace {

EndAlgebra end_algebra_impl(const ProjComplex& X, bool with_homotopy) {
    EndAlgebra E;
    E.hom = std::make_shared<HomSpace>(X, X, 0, with_homotopy);
    const int n = with_homotopy ? E.hom->dim() : E.hom->chain_dim();
    auto alg = std::make_shared<Algebra>();
    alg->F = X.PA->algebra().F;
    if (n == 0) {
        alg->dim = 1;
        alg->basis_labels = {"id"};
        alg->unit = {1};
        alg->mul.assign(1, std::vector<Algebra::SparseVec>(1));
        alg->mul[0][0].push_back({0, 1});
        E.alg = alg;
        return E;
    }
    alg->dim = n;
    for (int i = 0; i < n; ++i) alg->basis_labels.push_back("f" + std::to_string(i));
    std::vector<ChainMap> reps;
    for (int i = 0; i < n; ++i)
        reps.push_back(with_homotopy ? E.hom->rep(i) : E.hom->chain_rep(i));
    // Without the homotopy quotient, project() hands back plain chain-basis
    // coordinates, so the same call covers both cases.
    auto coords_of = [&](const ChainMap& f) -> Vec { return E.hom->project(f); };
    alg->unit = coords_of(identity_map(X));
    alg->mul.assign(n, std::vector<Algebra::SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec c = coords_of(compose(reps[i], reps[j]));
            for (int k = 0; k < n; ++k)
                if (c[k]) alg->mul[i][j].push_back({k, c[k]});
        }
    alg->validate(false);
    E.alg = alg;
    return E;
}

}  // namespace

EndAlgebra end_algebra(const ProjComplex& X) { return end_algebra_impl(X, true); }
EndAlgebra end_algebra_chain(const ProjComplex& X) { return end_algebra_impl(X, false); }

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

ProjComplex minimize(const ProjComplex& X) {
    ProjComplex W = X;
    W.trim();
    if (W.is_zero()) return W;
    const Algebra& alg = W.PA->algebra();
    bool changed = true;
    while (changed && !W.is_zero()) {
        changed = false;
        for (size_t k = 0; k < W.diffs.size() && !changed; ++k) {
            ElemMat& d = W.diffs[k];
            for (int s = 0; s < d.rows && !changed; ++s) {
                for (int t = 0; t < d.cols && !changed; ++t) {
                    int cs = W.terms[k + 1][s], ct = W.terms[k][t];
                    if (cs != ct) continue;
                    if (W.PA->entry_in_radical(d.at(s, t))) continue;
                    // unit entry: cancel source summand t against target s
                    Vec uinv = W.PA->corner_inverse(cs, d.at(s, t));
                    ElemMat nd(d.rows - 1, d.cols - 1, alg.dim);
                    for (int s2 = 0, so = 0; s2 < d.rows; ++s2) {
                        if (s2 == s) continue;
                        for (int t2 = 0, to = 0; t2 < d.cols; ++t2) {
                            if (t2 == t) continue;
                            Vec corr = alg.mulvec(alg.mulvec(d.at(s2, t), uinv), d.at(s, t2));
                            nd.at(so, to) = alg.sub(d.at(s2, t2), corr);
                            ++to;
                        }
                        ++so;
                    }
                    if (k + 1 < W.diffs.size()) {
                        ElemMat& up = W.diffs[k + 1];
                        ElemMat nu(up.rows, up.cols - 1, alg.dim);
                        for (int r = 0; r < up.rows; ++r)
                            for (int c2 = 0, co = 0; c2 < up.cols; ++c2) {
                                if (c2 == s) continue;
                                nu.at(r, co++) = up.at(r, c2);
                            }
                        up = std::move(nu);
                    }
                    if (k > 0) {
                        ElemMat& dn = W.diffs[k - 1];
                        ElemMat nl(dn.rows - 1, dn.cols, alg.dim);
                        for (int r = 0, ro = 0; r < dn.rows; ++r) {
                            if (r == t) continue;
                            for (int c2 = 0; c2 < dn.cols; ++c2) nl.at(ro, c2) = dn.at(r, c2);
                            ++ro;
                        }
                        dn = std::move(nl);
                    }
                    W.terms[k].erase(W.terms[k].begin() + t);
                    W.terms[k + 1].erase(W.terms[k + 1].begin() + s);
                    d = std::move(nd);
                    changed = true;
                }
            }
        }
    }
    W.trim();
    W.sort_terms();
    W.validate();
    if (!W.minimal()) throw ValidationError("minimization left a unit entry");
    return W;
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

namespace {

// Retraction/section pair splitting an idempotent endomorphism of one degree:
// selected coordinates, r, s with r o s = id_selected and s o r = m.
struct DegreeSplit {
    std::vector<int> selected;
    ElemMat r, s;
};

DegreeSplit split_degree_idempotent(const ProjAlgebra& pa, const std::vector<int>& classes,
                                    const ElemMat& m) {
    const Algebra& alg = pa.algebra();
    const int n = int(classes.size());
    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[classes[i]].push_back(i);

    // Diagonalize the semisimple part classwise; u lifts the conjugator.
    ElemMat u(n, n, alg.dim), uinv(n, n, alg.dim);
    std::vector<int> selected;
    for (const auto& [cls, pos] : by_class) {
        const int k = int(pos.size());
        FqMat mc(alg.F, k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                mc.at(a, b) = pa.scalar_mod_rad(cls, m.at(pos[a], pos[b]));
        FqMat R = mc;
        auto pivots = linalg::rref(R);
        FqMat W(alg.F, k, k);
        int col = 0;
        for (int pc : pivots) {
            for (int r = 0; r < k; ++r) W.at(r, col) = mc.at(r, pc);
            ++col;
        }
        FqMat K = linalg::kernel(mc);
        for (int r = 0; r < K.rows; ++r) {
            for (int c = 0; c < k; ++c) W.at(c, col) = K.at(r, c);
            ++col;
        }
        if (col != k) throw ValidationError("idempotent diagonalization rank mismatch");
        auto Winv = linalg::inverse(W);
        if (!Winv) throw ValidationError("idempotent diagonalization failed");
        const int rank = int(pivots.size());
        for (int a = 0; a < rank; ++a) selected.push_back(pos[a]);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                if (Winv->at(a, b))
                    u.at(pos[a], pos[b]) = alg.scale(pa.rep_idem(cls), Winv->at(a, b));
                if (W.at(a, b)) uinv.at(pos[a], pos[b]) = alg.scale(pa.rep_idem(cls), W.at(a, b));
            }
    }
    std::sort(selected.begin(), selected.end());

    ElemMat pi(n, n, alg.dim);
    for (int i : selected) pi.at(i, i) = pa.rep_idem(classes[i]);

    ElemMat eprime = emat_compose(alg, emat_compose(alg, u, m), uinv);
    ElemMat id = emat_identity(pa, classes);
    ElemMat one_m_e = emat_sub(alg, id, eprime);
    ElemMat one_m_pi = emat_sub(alg, id, pi);
    ElemMat v =
        emat_add(alg, emat_compose(alg, eprime, pi), emat_compose(alg, one_m_e, one_m_pi));
    // v = 1 - nu with nu nilpotent: invert by the geometric series.
    ElemMat nu = emat_sub(alg, id, v);
    ElemMat vinv = id;
    ElemMat power = nu;
    int guard = 0;
    while (!emat_zero(power)) {
        vinv = emat_add(alg, vinv, power);
        power = emat_compose(alg, power, nu);
        if (++guard > 2 * alg.dim + 4) throw ValidationError("correction term is not nilpotent");
    }
    ElemMat w = emat_compose(alg, vinv, u);
    ElemMat winv = emat_compose(alg, uinv, v);

    DegreeSplit out;
    out.selected = selected;
    const int ns = int(selected.size());
    ElemMat incl(n, ns, alg.dim), proj(ns, n, alg.dim);
    for (int i = 0; i < ns; ++i) {
        incl.at(selected[i], i) = pa.rep_idem(classes[selected[i]]);
        proj.at(i, selected[i]) = pa.rep_idem(classes[selected[i]]);
    }
    out.s = emat_compose(alg, winv, incl);
    out.r = emat_compose(alg, proj, w);
    ElemMat rs = emat_compose(alg, out.r, out.s);
    ElemMat id_sel(ns, ns, alg.dim);
    for (int i = 0; i < ns; ++i) id_sel.at(i, i) = pa.rep_idem(classes[selected[i]]);
    if (!(rs == id_sel)) throw ValidationError("degree split: r o s != id");
    ElemMat sr = emat_compose(alg, out.s, out.r);
    if (!(sr == m)) throw ValidationError("degree split: s o r != idempotent");
    return out;
}

}  // namespace

std::vector<ProjComplex> decompose(const ProjComplex& X0) {
    ProjComplex X = minimize(X0);
    if (X.is_zero()) return {};
    EndAlgebra E = end_algebra_chain(X);
    IdempotentSet prims = primitive_idempotents(*E.alg);
    if (prims.idems.size() == 1) return {X};
    const Algebra& alg = X.PA->algebra();
    std::vector<ProjComplex> out;
    for (const Vec& coords : prims.idems) {
        ChainMap e = E.hom->chain_combination(coords);
        std::map<int, DegreeSplit> splits;
        for (int d = X.lo; d <= X.hi(); ++d) {
            if (X.term_count(d) == 0) continue;
            const ElemMat* md = e.comp(d);
            ElemMat mm = md ? *md : ElemMat(X.term_count(d), X.term_count(d), alg.dim);
            splits.emplace(d, split_degree_idempotent(*X.PA, X.term(d), mm));
        }
        ProjComplex S;
        S.PA = X.PA;
        S.lo = X.lo;
        S.terms.resize(X.terms.size());
        for (int d = X.lo; d <= X.hi(); ++d) {
            if (!splits.count(d)) continue;
            for (int i : splits.at(d).selected) S.terms[d - X.lo].push_back(X.term(d)[i]);
        }
        if (S.terms.size() > 1) S.diffs.assign(S.terms.size() - 1, ElemMat());
        for (int d = X.lo; d < X.hi(); ++d) {
            int rows = int(S.terms[d + 1 - S.lo].size());
            int cols = int(S.terms[d - S.lo].size());
            ElemMat m(rows, cols, alg.dim);
            if (rows && cols && X.diff(d))
                m = emat_compose(alg, emat_compose(alg, splits.at(d + 1).r, *X.diff(d)),
                                 splits.at(d).s);
            S.diffs[d - S.lo] = std::move(m);
        }
        S.trim();
        S.sort_terms();
        S.validate();
        if (!S.is_zero()) out.push_back(std::move(S));
    }
    std::map<int, std::multiset<int>> want, got;
    for (int d = X.lo; d <= X.hi(); ++d)
        for (int c : X.term(d)) want[d].insert(c);
    for (const auto& S : out)
        for (int d = S.lo; d <= S.hi(); ++d)
            for (int c : S.term(d)) got[d].insert(c);
    if (want != got) throw ValidationError("decomposition does not reassemble the complex");
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

std::string fingerprint(const ProjComplex& X) {
    ProjComplex W = X;
    W.trim();
    std::ostringstream os;
    os << W.lo << '|';
    for (int d = W.lo; d <= W.hi(); ++d) {
        std::vector<int> t = W.term(d);
        std::sort(t.begin(), t.end());
        for (int c : t) os << c << ',';
        os << ';';
    }
    return os.str();
}

bool is_isomorphic_indec(const ProjComplex& X, const ProjComplex& Y) {
    if (fingerprint(X) != fingerprint(Y)) return false;
    HomSpace XY(X, Y, 0), YX(Y, X, 0);
    if (XY.dim() == 0 || YX.dim() == 0) return false;
    EndAlgebra E = end_algebra(X);
    SpanSolver radE = radical(*E.alg);
    for (int a = 0; a < YX.dim(); ++a) {
        ChainMap g = YX.rep(a);
        for (int b = 0; b < XY.dim(); ++b) {
            ChainMap f = XY.rep(b);
            Vec c = E.hom->project(compose(g, f));
            if (!radE.contains(c)) return true;
        }
    }
    return false;
}

bool is_isomorphic(const ProjComplex& X0, const ProjComplex& Y0) {
    ProjComplex X = minimize(X0);
    ProjComplex Y = minimize(Y0);
    if (X.is_zero() || Y.is_zero()) return X.is_zero() && Y.is_zero();
    if (fingerprint(X) != fingerprint(Y)) return false;
    std::vector<ProjComplex> xs = decompose(X);
    std::vector<ProjComplex> ys = decompose(Y);
    if (xs.size() != ys.size()) return false;
    std::vector<bool> used(ys.size(), false);
    for (const auto& x : xs) {
        bool matched = false;
        for (size_t j = 0; j < ys.size(); ++j) {
            if (used[j]) continue;
            if (is_isomorphic_indec(x, ys[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json element_to_json(const Fq& F, const Vec& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (Fel c : x) {
        if (F.m() == 1)
            arr.push_back(int(c));
        else {
            nlohmann::json digits = nlohmann::json::array();
            for (Fel d : F.digits(c)) digits.push_back(int(d));
            arr.push_back(digits);
        }
    }
    return arr;
}

Vec element_from_json(const Fq& F, const nlohmann::json& j, int dim, const std::string& ptr) {
    if (!j.is_array() || int(j.size()) != dim)
        throw SchemaError(ptr, "expected a coordinate vector of length " + std::to_string(dim));
    Vec x(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (j[i].is_number_integer())
            x[i] = F.from_int(j[i].get<long long>());
        else if (j[i].is_array()) {
            std::vector<Fel> digits;
            for (const auto& d : j[i]) digits.push_back(F.from_int(d.get<long long>()));
            x[i] = F.from_digits(digits);
        } else
            throw SchemaError(ptr + "/" + std::to_string(i), "expected an integer or digit array");
    }
    return x;
}

}  // namespace

ProjComplex complex_from_json_text(ProjAlgebraPtr PA, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("terms") || !j["terms"].is_object())
        throw SchemaError("/terms", "expected an object keyed by degree");
    std::map<int, std::vector<int>> terms;
    for (const auto& [key, arr] : j["terms"].items()) {
        int deg = std::atoi(key.c_str());
        if (!arr.is_array()) throw SchemaError("/terms/" + key, "expected an array of labels");
        std::vector<int> t;
        for (const auto& lbl : arr) {
            if (!lbl.is_string()) throw SchemaError("/terms/" + key, "labels must be strings");
            t.push_back(PA->class_by_label(lbl.get<std::string>()));
        }
        terms[deg] = t;
    }
    ProjComplex X;
    X.PA = PA;
    if (terms.empty()) return X;
    X.lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    X.terms.assign(hi - X.lo + 1, {});
    for (auto& [d, t] : terms) X.terms[d - X.lo] = t;
    const Algebra& alg = PA->algebra();
    if (X.terms.size() > 1) {
        X.diffs.assign(X.terms.size() - 1, ElemMat());
        for (size_t k = 0; k + 1 < X.terms.size(); ++k)
            X.diffs[k] = ElemMat(int(X.terms[k + 1].size()), int(X.terms[k].size()), alg.dim);
    }
    if (j.contains("diffs")) {
        for (const auto& [key, rows] : j["diffs"].items()) {
            int deg = std::atoi(key.c_str());
            int k = deg - X.lo;
            if (k < 0 || k >= int(X.diffs.size()))
                throw SchemaError("/diffs/" + key, "degree outside the term range");
            ElemMat& m = X.diffs[k];
            if (!rows.is_array() || int(rows.size()) != m.rows)
                throw SchemaError("/diffs/" + key, "expected " + std::to_string(m.rows) + " rows");
            for (int r = 0; r < m.rows; ++r) {
                if (!rows[r].is_array() || int(rows[r].size()) != m.cols)
                    throw SchemaError("/diffs/" + key + "/" + std::to_string(r),
                                      "expected " + std::to_string(m.cols) + " entries");
                for (int c = 0; c < m.cols; ++c)
                    m.at(r, c) = element_from_json(*alg.F, rows[r][c], alg.dim,
                                                   "/diffs/" + key + "/" + std::to_string(r) +
                                                       "/" + std::to_string(c));
            }
        }
    }
    try {
        X.validate();
    } catch (const ValidationError& e) {
        throw SchemaError("/diffs", e.what());
    }
    return X;
}

std::string complex_to_json_text(const ProjComplex& X) {
    nlohmann::json j;
    j["schema"] = 1;
    j["terms"] = nlohmann::json::object();
    j["diffs"] = nlohmann::json::object();
    for (int d = X.lo; d <= X.hi(); ++d) {
        if (X.term_count(d) == 0) continue;
        nlohmann::json arr = nlohmann::json::array();
        for (int c : X.term(d)) arr.push_back(X.PA->class_label(c));
        j["terms"][std::to_string(d)] = arr;
    }
    const Algebra& alg = X.PA->algebra();
    for (int d = X.lo; d < X.hi(); ++d) {
        const ElemMat* m = X.diff(d);
        if (!m || m->rows == 0 || m->cols == 0) continue;
        if (emat_zero(*m)) continue;
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < m->rows; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < m->cols; ++c) row.push_back(element_to_json(*alg.F, m->at(r, c)));
            rows.push_back(row);
        }
        j["diffs"][std::to_string(d)] = rows;
    }
    return j.dump(2) + "\n";
}

}  // namespace tiltmut
