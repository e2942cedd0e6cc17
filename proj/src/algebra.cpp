#include "tiltmut/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "tiltmut/poly.hpp"

namespace tiltmut {

Vec Algebra::mul_basis(int i, int j) const {
    Vec r(dim, 0);
    for (auto [k, c] : mul[i][j]) r[k] = F->add(r[k], c);
    return r;
}

Vec Algebra::mulvec(const Vec& x, const Vec& y) const {
    Vec r(dim, 0);
    for (int i = 0; i < dim; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < dim; ++j) {
            if (!y[j]) continue;
            Fel c = F->mul(x[i], y[j]);
            for (auto [k, s] : mul[i][j]) r[k] = F->add(r[k], F->mul(c, s));
        }
    }
    return r;
}

FqMat Algebra::left_mult(const Vec& x) const {
    FqMat M(F, dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            for (auto [k, s] : mul[i][j]) M.at(k, j) = F->add(M.at(k, j), F->mul(x[i], s));
        }
    }
    return M;
}

FqMat Algebra::right_mult(const Vec& x) const {
    FqMat M(F, dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (!x[j]) continue;
            for (auto [k, s] : mul[i][j]) M.at(k, i) = F->add(M.at(k, i), F->mul(x[j], s));
        }
    }
    return M;
}

Vec Algebra::basis_vec(int i) const {
    Vec v(dim, 0);
    v[i] = 1;
    return v;
}

Vec Algebra::scale(const Vec& x, Fel c) const {
    Vec r(dim);
    for (int i = 0; i < dim; ++i) r[i] = F->mul(x[i], c);
    return r;
}

Vec Algebra::add(const Vec& x, const Vec& y) const {
    Vec r(dim);
    for (int i = 0; i < dim; ++i) r[i] = F->add(x[i], y[i]);
    return r;
}

Vec Algebra::sub(const Vec& x, const Vec& y) const {
    Vec r(dim);
    for (int i = 0; i < dim; ++i) r[i] = F->sub(x[i], y[i]);
    return r;
}

bool Algebra::is_idempotent(const Vec& e) const { return mulvec(e, e) == e; }

Vec Algebra::power(const Vec& x, int k) const {
    Vec r = unit;
    for (int i = 0; i < k; ++i) r = mulvec(r, x);
    return r;
}

void Algebra::validate(bool full) const {
    if (dim <= 0 || int(basis_labels.size()) != dim || int(mul.size()) != dim)
        throw ValidationError("algebra table dimensions are inconsistent");
    for (const auto& row : mul)
        if (int(row.size()) != dim) throw ValidationError("algebra table dimensions are inconsistent");
    if (int(unit.size()) != dim) throw ValidationError("unit vector has wrong length");
    for (int i = 0; i < dim; ++i) {
        Vec b = basis_vec(i);
        if (mulvec(unit, b) != b || mulvec(b, unit) != b)
            throw ValidationError("unit is not a two-sided identity");
    }
    if (!full) return;
    for (int i = 0; i < dim; ++i) {
        Vec bi = basis_vec(i);
        for (int j = 0; j < dim; ++j) {
            Vec bij = mul_basis(i, j);
            for (int k = 0; k < dim; ++k) {
                Vec lhs = mulvec(bij, basis_vec(k));
                Vec rhs = mulvec(bi, mul_basis(j, k));
                if (lhs != rhs)
                    throw ValidationError("associativity fails on basis triple (" +
                                          std::to_string(i) + "," + std::to_string(j) + "," +
                                          std::to_string(k) + ")");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Radical
// ---------------------------------------------------------------------------

namespace {

// c_j(M) = j-th elementary symmetric function of the eigenvalues of M.
Fel charpoly_symmetric_coeff(const FqMat& M, uint64_t j) {
    auto cp = linalg::charpoly(M);
    const Fq& F = *M.F;
    size_t d = cp.size() - 1;
    Fel c = cp[d - j];
    // det(tI - M) = sum (-1)^j e_j t^(d-j)
    return (j % 2) ? F.neg(c) : c;
}

}  // namespace

SpanSolver radical(const Algebra& A) {
    const Fq& F = *A.F;
    const int d = A.dim;
    std::vector<Vec> cur;
    for (int i = 0; i < d; ++i) cur.push_back(A.basis_vec(i));

    uint64_t pk = 1;
    for (uint32_t level = 0; pk <= uint64_t(d); ++level, pk *= F.p()) {
        if (cur.empty()) break;
        const int m = int(cur.size());
        // Constraint: for all b in the current layer, the p^level-th
        // characteristic coefficient of L_{a b} vanishes; semilinear in a,
        // linearized by a Frobenius root on the constants.
        FqMat M(A.F, m, m);
        for (int bi = 0; bi < m; ++bi) {
            for (int t = 0; t < m; ++t) {
                Vec prod = A.mulvec(cur[t], cur[bi]);
                Fel c = charpoly_symmetric_coeff(A.left_mult(prod), pk);
                M.at(bi, t) = F.frobenius_inv(c, level % std::max<uint32_t>(F.m(), 1));
            }
        }
        FqMat K = linalg::kernel(M);
        std::vector<Vec> next;
        for (int r = 0; r < K.rows; ++r) {
            Vec v(d, 0);
            for (int t = 0; t < m; ++t) {
                if (!K.at(r, t)) continue;
                for (int j = 0; j < d; ++j) v[j] = F.add(v[j], F.mul(K.at(r, t), cur[t][j]));
            }
            next.push_back(std::move(v));
        }
        cur = std::move(next);
    }

    SpanSolver rad(A.F, d);
    for (const Vec& v : cur) rad.add(v);

    // The result must be nilpotent; power the subspace until it vanishes.
    std::vector<Vec> layer = rad.echelon_rows();
    int steps = 0;
    while (!layer.empty()) {
        if (++steps > d + 1) throw ValidationError("radical candidate is not nilpotent");
        SpanSolver next(A.F, d);
        for (const Vec& x : layer)
            for (const Vec& y : rad.echelon_rows()) next.add(A.mulvec(x, y));
        layer = next.echelon_rows();
    }
    return rad;
}

// ---------------------------------------------------------------------------
// Minimal polynomials, subalgebras
// ---------------------------------------------------------------------------

std::vector<Fel> minimal_polynomial(const Algebra& A, const Vec& x) {
    SpanSolver powers(A.F, A.dim);
    std::vector<Vec> pw = {A.unit};
    powers.add(A.unit);
    Vec cur = A.unit;
    while (true) {
        cur = A.mulvec(cur, x);
        if (auto coeffs = powers.express(cur)) {
            std::vector<Fel> mu(pw.size() + 1, 0);
            for (size_t i = 0; i < coeffs->size(); ++i) mu[i] = A.F->neg((*coeffs)[i]);
            mu[pw.size()] = 1;
            return mu;
        }
        powers.add(cur);
        pw.push_back(cur);
        if (int(pw.size()) > A.dim + 1)
            throw ValidationError("minimal polynomial search exceeded the dimension bound");
    }
}

Vec Subalgebra::to_parent(const Vec& local) const {
    const Fq& F = *expr.field();
    Vec r(expr.width(), 0);
    for (size_t i = 0; i < basis_in_parent.size(); ++i) {
        if (!local[i]) continue;
        for (int j = 0; j < expr.width(); ++j)
            r[j] = F.add(r[j], F.mul(local[i], basis_in_parent[i][j]));
    }
    return r;
}

Vec Subalgebra::from_parent(const Vec& parent) const {
    auto c = expr.express(parent);
    if (!c) throw ValidationError("vector is not in the subalgebra");
    return *c;
}

Subalgebra make_subalgebra(AlgebraPtr A, const std::vector<Vec>& basis, const Vec& unit) {
    Subalgebra S{nullptr, {}, SpanSolver(A->F, A->dim)};
    for (const Vec& v : basis) {
        if (S.expr.contains(v)) continue;
        S.expr.add(v);
        S.basis_in_parent.push_back(v);
    }
    const int n = int(S.basis_in_parent.size());
    if (n == 0) throw ValidationError("subalgebra has empty basis");
    auto alg = std::make_shared<Algebra>();
    alg->F = A->F;
    alg->dim = n;
    for (int i = 0; i < n; ++i) alg->basis_labels.push_back("c" + std::to_string(i));
    auto u = S.expr.express(unit);
    if (!u) throw ValidationError("subalgebra unit is not in the span");
    alg->unit = *u;
    alg->mul.assign(n, std::vector<Algebra::SparseVec>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Vec prod = A->mulvec(S.basis_in_parent[i], S.basis_in_parent[j]);
            auto c = S.expr.express(prod);
            if (!c) throw ValidationError("subalgebra basis is not multiplicatively closed");
            for (int k = 0; k < n; ++k)
                if ((*c)[k]) alg->mul[i][j].push_back({k, (*c)[k]});
        }
    }
    alg->validate(false);
    S.alg = alg;
    return S;
}

Subalgebra corner_algebra(AlgebraPtr A, const Vec& f) {
    std::vector<Vec> gens;
    for (int k = 0; k < A->dim; ++k)
        gens.push_back(A->mulvec(A->mulvec(f, A->basis_vec(k)), f));
    return make_subalgebra(A, gens, f);
}

Subalgebra center(const AlgebraPtr& A) {
    const int d = A->dim;
    // x central iff (L_b - R_b) x = 0 for every basis element b.
    FqMat M(A->F, d * d, d);
    for (int b = 0; b < d; ++b) {
        FqMat L = A->left_mult(A->basis_vec(b));
        FqMat R = A->right_mult(A->basis_vec(b));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                M.at(b * d + r, c) = A->F->sub(L.at(r, c), R.at(r, c));
    }
    FqMat K = linalg::kernel(M);
    std::vector<Vec> basis;
    for (int r = 0; r < K.rows; ++r) basis.push_back(K.row(r));
    return make_subalgebra(A, basis, A->unit);
}

// ---------------------------------------------------------------------------
// Idempotent splitting
// ---------------------------------------------------------------------------

namespace {

Vec poly_eval_in_algebra(const Algebra& A, const poly::P& f, const Vec& x) {
    Vec r = A.zero();
    for (size_t i = f.size(); i-- > 0;) {
        r = A.mulvec(r, x);
        if (f[i]) r = A.add(r, A.scale(A.unit, f[i]));
    }
    return r;
}

struct SplitGoal {
    Vec idem;       // idempotent in A coordinates
    bool primitive = false;
    int field_degree = 1;  // >1 when the corner is a proper extension field
};

// Deterministic candidate stream for splitting searches: basis vectors,
// pairwise sums and products, then a fixed xorshift sequence.
struct CandidateStream {
    const Algebra& A;
    int phase = 0;
    size_t i = 0, j = 0;
    uint64_t rng = 0x9e3779b97f4a7c15ull;
    int emitted = 0;

    explicit CandidateStream(const Algebra& a) : A(a) {}

    std::optional<Vec> next() {
        const int n = A.dim;
        if (++emitted > 20000) return std::nullopt;
        if (phase == 0) {
            if (i < size_t(n)) return A.basis_vec(int(i++));
            phase = 1; i = 0; j = 1;
        }
        if (phase == 1) {
            if (n >= 2) {
                Vec v = A.add(A.basis_vec(int(i)), A.basis_vec(int(j)));
                if (++j >= size_t(n)) { ++i; j = i + 1; }
                if (i + 1 >= size_t(n)) phase = 2, i = 0, j = 0;
                return v;
            }
            phase = 2; i = 0; j = 0;
        }
        if (phase == 2) {
            if (i < size_t(n)) {
                Vec v = A.mulvec(A.basis_vec(int(i)), A.basis_vec(int(j)));
                if (++j >= size_t(n)) { ++i; j = 0; }
                return v;
            }
            phase = 3;
        }
        // Fixed pseudorandom combinations; deterministic across runs.
        Vec v(A.dim, 0);
        for (int k = 0; k < A.dim; ++k) {
            rng ^= rng << 13; rng ^= rng >> 7; rng ^= rng << 17;
            v[k] = Fel(rng % A.F->q());
        }
        return v;
    }
};

bool is_scalar(const Algebra& A, const Vec& x) {
    for (uint32_t c = 0; c < A.F->q(); ++c)
        if (A.scale(A.unit, Fel(c)) == x) return true;
    return false;
}

// Split a semisimple algebra's unit into orthogonal primitive idempotents.
// Pieces that are proper extension fields are recorded with their degree.
void split_semisimple(const AlgebraPtr& A, const Vec& f, std::vector<SplitGoal>& out) {
    Subalgebra C = corner_algebra(A, f);
    const Algebra& CA = *C.alg;
    if (CA.dim == 1) {
        out.push_back({f, true, 1});
        return;
    }
    // Look for an element whose minimal polynomial has at least two coprime
    // irreducible parts; CRT then yields a proper idempotent.
    auto try_split = [&](const Vec& t_local) -> std::optional<std::pair<Vec, Vec>> {
        if (is_scalar(CA, t_local)) return std::nullopt;
        auto mu = minimal_polynomial(CA, t_local);
        auto factors = poly::factor(*CA.F, mu);
        if (factors.size() < 2) return std::nullopt;
        poly::P part = factors[0].first;
        for (int e = 1; e < factors[0].second; ++e)
            part = poly::mul(*CA.F, part, factors[0].first);
        poly::P rest = poly::divmod(*CA.F, mu, part).first;
        auto eg = poly::extgcd(*CA.F, part, rest);
        if (poly::degree(eg.g) != 0) return std::nullopt;
        // e = u*part evaluated at t is the identity on the `rest` component.
        poly::P h = poly::mul(*CA.F, eg.u, part);
        Vec e_local = poly_eval_in_algebra(CA, h, t_local);
        if (!CA.is_idempotent(e_local)) return std::nullopt;
        if (std::all_of(e_local.begin(), e_local.end(), [](Fel x) { return x == 0; }))
            return std::nullopt;
        if (e_local == CA.unit) return std::nullopt;
        Vec comp = CA.sub(CA.unit, e_local);
        return std::make_pair(C.to_parent(e_local), C.to_parent(comp));
    };

    bool commutative = true;
    for (int i = 0; i < CA.dim && commutative; ++i)
        for (int j = i + 1; j < CA.dim; ++j)
            if (CA.mul_basis(i, j) != CA.mul_basis(j, i)) { commutative = false; break; }

    // For small commutative corners, exhaust all elements before concluding
    // the corner is a field.
    if (commutative) {
        uint64_t total = 1;
        bool enumerable = true;
        for (int k = 0; k < CA.dim; ++k) {
            total *= CA.F->q();
            if (total > 1u << 20) { enumerable = false; break; }
        }
        if (enumerable) {
            std::vector<Fel> digits(CA.dim, 0);
            for (uint64_t idx = 1; idx < total; ++idx) {
                uint64_t v = idx;
                for (int k = 0; k < CA.dim; ++k) { digits[k] = Fel(v % CA.F->q()); v /= CA.F->q(); }
                if (auto sp = try_split(digits)) {
                    split_semisimple(A, sp->first, out);
                    split_semisimple(A, sp->second, out);
                    return;
                }
            }
            // No splitter in a commutative semisimple algebra: it is a field.
            out.push_back({f, true, CA.dim});
            return;
        }
    }

    CandidateStream cs(CA);
    while (auto cand = cs.next()) {
        if (auto sp = try_split(*cand)) {
            split_semisimple(A, sp->first, out);
            split_semisimple(A, sp->second, out);
            return;
        }
    }
    if (commutative) {
        out.push_back({f, true, CA.dim});
        return;
    }
    throw ValidationError("failed to split a semisimple corner of dimension " +
                          std::to_string(CA.dim));
}

// Newton iteration e <- 3e^2 - 2e^3, stabilizing to an idempotent congruent
// to the input modulo the nilpotent radical.
Vec newton_idempotent(const Algebra& A, Vec a) {
    for (int it = 0; it < 64; ++it) {
        Vec a2 = A.mulvec(a, a);
        if (a2 == a) return a;
        Vec a3 = A.mulvec(a2, a);
        a = A.sub(A.scale(a2, A.F->from_int(3)), A.scale(a3, A.F->from_int(2)));
    }
    throw ValidationError("idempotent lifting did not stabilize");
}

}  // namespace

IdempotentSet primitive_idempotents(const Algebra& A) {
    auto Aptr = std::make_shared<Algebra>(A);
    SpanSolver rad = radical(A);

    std::vector<Vec> prims;
    if (rad.dim() == 0) {
        std::vector<SplitGoal> goals;
        split_semisimple(Aptr, A.unit, goals);
        int lcm_deg = 1;
        for (const auto& g : goals)
            if (g.field_degree > 1)
                lcm_deg = int(std::lcm(long(lcm_deg), long(g.field_degree)));
        if (lcm_deg > 1) throw NonSplitField(lcm_deg);
        for (const auto& g : goals) prims.push_back(g.idem);
    } else {
        // Split the semisimple quotient, then lift through the radical.
        std::vector<Vec> qbasis = rad.echelon_rows();
        SpanSolver mixed(A.F, A.dim);
        for (const Vec& r : qbasis) mixed.add(r);
        std::vector<Vec> reps;
        for (int i = 0; i < A.dim; ++i) {
            Vec b = A.basis_vec(i);
            if (mixed.contains(b)) continue;
            mixed.add(b);
            reps.push_back(b);
        }
        const int nrad = int(qbasis.size());
        const int nq = int(reps.size());
        auto project = [&](const Vec& x) {
            auto c = mixed.express(x);
            if (!c) throw ValidationError("quotient projection failed");
            return Vec(c->begin() + nrad, c->end());
        };
        auto lift = [&](const Vec& qx) {
            Vec r = A.zero();
            for (int i = 0; i < nq; ++i)
                if (qx[i]) r = A.add(r, A.scale(reps[i], qx[i]));
            return r;
        };
        auto Q = std::make_shared<Algebra>();
        Q->F = A.F;
        Q->dim = nq;
        for (int i = 0; i < nq; ++i) Q->basis_labels.push_back("q" + std::to_string(i));
        Q->unit = project(A.unit);
        Q->mul.assign(nq, std::vector<Algebra::SparseVec>(nq));
        for (int i = 0; i < nq; ++i) {
            for (int j = 0; j < nq; ++j) {
                Vec prod = project(A.mulvec(reps[i], reps[j]));
                for (int k = 0; k < nq; ++k)
                    if (prod[k]) Q->mul[i][j].push_back({k, prod[k]});
            }
        }
        Q->validate(false);

        std::vector<SplitGoal> goals;
        split_semisimple(Q, Q->unit, goals);
        int lcm_deg = 1;
        for (const auto& g : goals)
            if (g.field_degree > 1)
                lcm_deg = int(std::lcm(long(lcm_deg), long(g.field_degree)));
        if (lcm_deg > 1) throw NonSplitField(lcm_deg);

        // Lift one by one inside the corner cut out by what is left.
        Vec left = A.unit;
        for (size_t t = 0; t < goals.size(); ++t) {
            Vec a = lift(goals[t].idem);
            a = A.mulvec(A.mulvec(left, a), left);
            Vec e = newton_idempotent(A, a);
            prims.push_back(e);
            left = A.sub(left, e);
        }
        if (!std::all_of(left.begin(), left.end(), [](Fel x) { return x == 0; }))
            throw ValidationError("primitive idempotents do not sum to the unit");
    }

    // Exact axioms.
    Vec sum = A.zero();
    for (const Vec& e : prims) {
        if (!A.is_idempotent(e)) throw ValidationError("lifted element is not idempotent");
        sum = A.add(sum, e);
    }
    if (sum != A.unit) throw ValidationError("idempotents do not sum to 1");
    for (size_t i = 0; i < prims.size(); ++i)
        for (size_t j = 0; j < prims.size(); ++j) {
            if (i == j) continue;
            Vec p = A.mulvec(prims[i], prims[j]);
            if (!std::all_of(p.begin(), p.end(), [](Fel x) { return x == 0; }))
                throw ValidationError("idempotents are not orthogonal");
        }
    // Primitivity and splitness: e A e must be local with one-dimensional top.
    for (const Vec& e : prims) {
        SpanSolver cell = peirce_space(A, e, e);
        int top = 0;
        SpanSolver acc(A.F, A.dim);
        for (const Vec& r : rad.echelon_rows()) acc.add(A.mulvec(A.mulvec(e, r), e));
        for (const Vec& r : cell.echelon_rows())
            if (acc.add(r)) ++top;
        if (top != 1)
            throw ValidationError("lifted idempotent is not primitive (top dimension " +
                                  std::to_string(top) + ")");
    }

    IdempotentSet E;
    E.idems = prims;
    E.class_of.assign(prims.size(), -1);
    for (size_t i = 0; i < prims.size(); ++i) {
        if (E.class_of[i] >= 0) continue;
        int cls = int(E.representative.size());
        E.class_of[i] = cls;
        E.representative.push_back(int(i));
        for (size_t j = i + 1; j < prims.size(); ++j) {
            if (E.class_of[j] >= 0) continue;
            if (projectives_isomorphic(A, rad, prims[i], prims[j])) E.class_of[j] = cls;
        }
    }
    return E;
}

std::vector<Vec> decompose_idempotent(const Algebra& A, const Vec& f) {
    if (std::all_of(f.begin(), f.end(), [](Fel x) { return x == 0; })) return {};
    if (!A.is_idempotent(f)) throw ValidationError("decompose_idempotent: not an idempotent");
    auto Aptr = std::make_shared<Algebra>(A);
    Subalgebra C = corner_algebra(Aptr, f);
    IdempotentSet E = primitive_idempotents(*C.alg);
    std::vector<Vec> out;
    for (const Vec& e : E.idems) out.push_back(C.to_parent(e));
    return out;
}

std::vector<std::vector<long>> cartan_matrix(const Algebra& A, const IdempotentSet& E) {
    const int n = E.num_classes();
    std::vector<std::vector<long>> C(n, std::vector<long>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            C[j][i] = hom_space(A, E, i, j).dim();
    return C;
}

SpanSolver peirce_space(const Algebra& A, const Vec& left, const Vec& right) {
    SpanSolver S(A.F, A.dim);
    for (int k = 0; k < A.dim; ++k)
        S.add(A.mulvec(A.mulvec(left, A.basis_vec(k)), right));
    return S;
}

SpanSolver hom_space(const Algebra& A, const IdempotentSet& E, int i, int j) {
    if (i < 0 || i >= E.num_classes() || j < 0 || j >= E.num_classes())
        throw ValidationError("hom_space: class index out of range");
    return peirce_space(A, E.idems[E.representative[j]], E.idems[E.representative[i]]);
}

std::vector<Vec> central_primitive_idempotents(const AlgebraPtr& A) {
    Subalgebra Z = center(A);
    IdempotentSet E = primitive_idempotents(*Z.alg);
    std::vector<Vec> out;
    for (const Vec& e : E.idems) out.push_back(Z.to_parent(e));
    std::sort(out.begin(), out.end());
    return out;
}

bool projectives_isomorphic(const Algebra& A, const SpanSolver& rad, const Vec& ei,
                            const Vec& ej) {
    SpanSolver Hij = peirce_space(A, ei, ej);  // maps e_j A -> e_i A
    SpanSolver Hji = peirce_space(A, ej, ei);
    for (const Vec& x : Hij.echelon_rows())
        for (const Vec& y : Hji.echelon_rows())
            if (!rad.contains(A.mulvec(x, y))) return true;
    return false;
}

std::optional<std::pair<Vec, Vec>> projective_iso_pair(const Algebra& A,
                                                       const SpanSolver& rad,
                                                       const Vec& ei, const Vec& ej) {
    SpanSolver Hij = peirce_space(A, ei, ej);
    SpanSolver Hji = peirce_space(A, ej, ei);
    for (const Vec& x : Hij.echelon_rows()) {
        for (const Vec& y : Hji.echelon_rows()) {
            Vec u = A.mulvec(x, y);  // in e_i A e_i
            if (rad.contains(u)) continue;
            // Invert u inside the corner e_i A e_i and correct y.
            SpanSolver cell = peirce_space(A, ei, ei);
            const auto& rows = cell.echelon_rows();
            const int n = cell.dim();
            FqMat M(A.F, A.dim, n);
            for (int c = 0; c < n; ++c) {
                Vec col = A.mulvec(u, rows[c]);
                for (int r = 0; r < A.dim; ++r) M.at(r, c) = col[r];
            }
            auto sol = linalg::solve(M, ei);
            if (!sol) continue;
            Vec uinv = A.zero();
            for (int c = 0; c < n; ++c)
                if ((*sol)[c]) uinv = A.add(uinv, A.scale(rows[c], (*sol)[c]));
            Vec b = A.mulvec(y, uinv);
            if (A.mulvec(x, b) != ei) continue;
            if (A.mulvec(b, x) != ej) continue;
            return std::make_pair(x, b);
        }
    }
    return std::nullopt;
}

}  // namespace tiltmut
