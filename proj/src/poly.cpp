#include "tiltmut/poly.hpp"

#include <algorithm>
#include <map>

namespace tiltmut {
namespace poly {

P normalize(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int degree(const P& a) { return int(a.size()) - 1; }

P add(const Fq& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        Fel x = i < a.size() ? a[i] : 0;
        Fel y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    return normalize(std::move(r));
}

P sub(const Fq& F, const P& a, const P& b) {
    P nb(b.size());
    for (size_t i = 0; i < b.size(); ++i) nb[i] = F.neg(b[i]);
    return add(F, a, nb);
}

P mul(const Fq& F, const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return normalize(std::move(r));
}

P scale(const Fq& F, const P& a, Fel c) {
    if (!c) return {};
    P r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return normalize(std::move(r));
}

std::pair<P, P> divmod(const Fq& F, const P& a, const P& b) {
    if (b.empty()) throw ValidationError("polynomial division by zero");
    P rem = a, quo;
    const Fel lead_inv = F.inv(b.back());
    const int db = degree(b);
    while (degree(rem) >= db) {
        int shift = degree(rem) - db;
        Fel c = F.mul(rem.back(), lead_inv);
        if (int(quo.size()) < shift + 1) quo.resize(shift + 1, 0);
        quo[shift] = F.add(quo[shift], c);
        for (int i = 0; i <= db; ++i)
            rem[i + shift] = F.sub(rem[i + shift], F.mul(c, b[i]));
        rem = normalize(std::move(rem));
    }
    return {normalize(std::move(quo)), rem};
}

P mod(const Fq& F, const P& a, const P& b) { return divmod(F, a, b).second; }

P monic(const Fq& F, const P& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

P gcd(const Fq& F, P a, P b) {
    while (!b.empty()) {
        P r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

ExtGcd extgcd(const Fq& F, const P& a, const P& b) {
    P r0 = a, r1 = b, u0 = {1}, u1 = {}, v0 = {}, v1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod(F, r0, r1);
        P u2 = sub(F, u0, mul(F, q, u1));
        P v2 = sub(F, v0, mul(F, q, v1));
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (!r0.empty()) {
        Fel c = F.inv(r0.back());
        r0 = scale(F, r0, c);
        u0 = scale(F, u0, c);
        v0 = scale(F, v0, c);
    }
    return {r0, u0, v0};
}

P derivative(const Fq& F, const P& a) {
    if (a.size() < 2) return {};
    P r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(long(i)));
    return normalize(std::move(r));
}

P powmod(const Fq& F, const P& base, uint64_t e, const P& modp) {
    P r = {1}, b = mod(F, base, modp);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, b), modp);
        b = mod(F, mul(F, b, b), modp);
        e >>= 1;
    }
    return r;
}

Fel eval(const Fq& F, const P& a, Fel x) {
    Fel r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

namespace {

// p-th root of a polynomial of the form g(x^p): pick every p-th coefficient
// and take p-th roots of the coefficients (Frobenius inverse).
P pth_root(const Fq& F, const P& a) {
    const uint32_t p = F.p();
    P r((a.size() + p - 1) / p);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.frobenius_inv(i * p < a.size() ? a[i * p] : Fel(0), 1);
    return normalize(std::move(r));
}

// Squarefree decomposition in characteristic p (Yun + p-th root recursion).
void squarefree(const Fq& F, const P& f, int mult, std::map<P, int>& out) {
    if (degree(f) < 1) return;
    P fp = derivative(F, f);
    if (fp.empty()) {
        squarefree(F, pth_root(F, f), mult * int(F.p()), out);
        return;
    }
    P c = gcd(F, f, fp);
    P w = divmod(F, f, c).first;
    int i = 1;
    while (degree(w) > 0) {
        P y = gcd(F, w, c);
        P z = divmod(F, w, y).first;
        if (degree(z) > 0) out[monic(F, z)] += mult * i;
        w = std::move(y);
        c = divmod(F, c, w).first;
        ++i;
    }
    if (degree(c) > 0) squarefree(F, c, mult, out);
}

// Berlekamp splitting of a squarefree monic polynomial.
void berlekamp(const Fq& F, const P& f, std::vector<P>& out) {
    const int n = degree(f);
    if (n <= 1) {
        if (n == 1) out.push_back(f);
        return;
    }
    // Matrix of x^(i*q) mod f in the basis 1, x, ..., x^(n-1), minus identity.
    std::vector<std::vector<Fel>> Q(n, std::vector<Fel>(n, 0));
    P xq = powmod(F, P{0, 1}, F.q(), f);
    P cur = {1};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < int(cur.size()); ++j) Q[i][j] = cur[j];
        Q[i][i] = F.sub(Q[i][i], 1);
        cur = mod(F, mul(F, cur, xq), f);
    }
    // Kernel of Q (row-vector convention: v * Q = 0 means sum_i v_i Q[i][j]=0).
    // Gaussian elimination on rows of Q^T; keep it self-contained here.
    std::vector<std::vector<Fel>> M(n, std::vector<Fel>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[j][i] = Q[i][j];
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int r = rank; r < n; ++r)
            if (M[r][col]) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(M[rank], M[sel]);
        Fel piv_inv = F.inv(M[rank][col]);
        for (int j = 0; j < n; ++j) M[rank][j] = F.mul(M[rank][j], piv_inv);
        for (int r = 0; r < n; ++r) {
            if (r == rank || !M[r][col]) continue;
            Fel c = M[r][col];
            for (int j = 0; j < n; ++j)
                M[r][j] = F.sub(M[r][j], F.mul(c, M[rank][j]));
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<P> basis;
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        P v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(M[r][col]);
        basis.push_back(normalize(std::move(v)));
    }
    if (basis.size() <= 1) {
        out.push_back(f);  // irreducible
        return;
    }
    // Split with gcd(f, v - c) over all scalars c, using the first basis
    // vector that is not a constant.
    for (const P& v : basis) {
        if (degree(v) < 1) continue;
        std::vector<P> pieces;
        P rest = f;
        for (uint32_t c = 0; c < F.q() && degree(rest) > 0; ++c) {
            P shifted = sub(F, v, P{Fel(c)});
            P g = gcd(F, rest, shifted);
            if (degree(g) > 0) {
                pieces.push_back(g);
                rest = divmod(F, rest, g).first;
            }
        }
        if (degree(rest) > 0) pieces.push_back(monic(F, rest));
        if (pieces.size() > 1) {
            for (const P& piece : pieces) berlekamp(F, piece, out);
            return;
        }
    }
    // All kernel elements acted as scalars; cannot happen for squarefree f
    // with kernel dimension > 1.
    throw ValidationError("Berlekamp splitting failed on a squarefree polynomial");
}

}  // namespace

std::vector<std::pair<P, int>> factor(const Fq& F, const P& a) {
    P f = monic(F, normalize(a));
    if (degree(f) < 1) throw ValidationError("cannot factor a constant polynomial");
    std::map<P, int> sqf;
    squarefree(F, f, 1, sqf);
    std::map<P, int> acc;
    for (const auto& [part, mult] : sqf) {
        std::vector<P> irr;
        berlekamp(F, part, irr);
        for (const P& g : irr) acc[g] += mult;
    }
    return {acc.begin(), acc.end()};
}

bool is_irreducible(const Fq& F, const P& a) {
    auto fs = factor(F, a);
    return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace poly
}  // namespace tiltmut
