#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tiltmut/linalg.hpp"

using namespace tiltmut;

namespace {

FqMat random_mat(FqPtr F, int r, int c, std::mt19937& rng) {
    FqMat m(F, r, c);
    std::uniform_int_distribution<uint32_t> d(0, F->q() - 1);
    for (auto& x : m.a) x = Fel(d(rng));
    return m;
}

// Naive characteristic polynomial by cofactor expansion of det(tI - A) over
// F_q[t]; independent of the Hessenberg path.
std::vector<Fel> naive_charpoly(const FqMat& A) {
    const Fq& F = *A.F;
    int n = A.rows;
    // polynomial matrix entries, each a coefficient vector
    std::vector<std::vector<std::vector<Fel>>> M(n, std::vector<std::vector<Fel>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Fel> p = {F.neg(A.at(i, j))};
            if (i == j) p.push_back(1);
            M[i][j] = p;
        }
    // recursive Laplace expansion
    std::function<std::vector<Fel>(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rows, std::vector<int> cols) -> std::vector<Fel> {
        if (rows.size() == 1) return M[rows[0]][cols[0]];
        std::vector<Fel> acc;
        for (size_t k = 0; k < cols.size(); ++k) {
            std::vector<int> subr(rows.begin() + 1, rows.end());
            std::vector<int> subc = cols;
            subc.erase(subc.begin() + k);
            auto sub = det(subr, subc);
            // multiply entry * sub
            const auto& e = M[rows[0]][cols[k]];
            std::vector<Fel> term(e.size() + sub.size(), 0);
            for (size_t i = 0; i < e.size(); ++i)
                for (size_t j = 0; j < sub.size(); ++j)
                    term[i + j] = F.add(term[i + j], F.mul(e[i], sub[j]));
            if (k % 2) for (auto& x : term) x = F.neg(x);
            if (term.size() > acc.size()) acc.resize(term.size(), 0);
            for (size_t i = 0; i < term.size(); ++i) acc[i] = F.add(acc[i], term[i]);
        }
        return acc;
    };
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    auto r = det(idx, idx);
    r.resize(n + 1, 0);
    return r;
}

}  // namespace

TEST_CASE("omp product equals serial reference") {
    auto F = Fq::make({3, 1, {}});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        FqMat A = random_mat(F, 40, 60, rng);
        FqMat B = random_mat(F, 60, 30, rng);
        CHECK(linalg::mul(A, B) == linalg::mul_serial(A, B));
    }
    auto F9 = Fq::make({3, 2, {}});
    FqMat A = random_mat(F9, 100, 90, rng);
    FqMat B = random_mat(F9, 90, 110, rng);
    CHECK(linalg::mul(A, B) == linalg::mul_serial(A, B));
}

TEST_CASE("rref, rank, kernel") {
    auto F = Fq::make({3, 1, {}});
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        FqMat A = random_mat(F, 8, 12, rng);
        FqMat K = linalg::kernel(A);
        CHECK(K.rows + linalg::rank(A) == A.cols);
        for (int r = 0; r < K.rows; ++r) {
            Vec x = K.row(r);
            Vec y = linalg::mat_vec(A, x);
            CHECK(std::all_of(y.begin(), y.end(), [](Fel v) { return v == 0; }));
        }
    }
}

TEST_CASE("solve and inverse") {
    auto F = Fq::make({3, 2, {}});
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        FqMat A = random_mat(F, 6, 6, rng);
        auto inv = linalg::inverse(A);
        if (inv) {
            CHECK(linalg::mul(A, *inv) == FqMat::identity(F, 6));
            Vec b(6);
            for (auto& x : b) x = Fel(rng() % 9);
            auto x = linalg::solve(A, b);
            REQUIRE(x.has_value());
            CHECK(linalg::mat_vec(A, *x) == b);
        }
    }
}

TEST_CASE("charpoly matches naive cofactor expansion") {
    std::mt19937 rng(17);
    for (auto spec : {FieldSpec{3, 1, {}}, FieldSpec{3, 2, {}}, FieldSpec{5, 1, {}}}) {
        auto F = Fq::make(spec);
        for (int trial = 0; trial < 8; ++trial) {
            FqMat A = random_mat(F, 5, 5, rng);
            CHECK(linalg::charpoly(A) == naive_charpoly(A));
        }
    }
}

TEST_CASE("SpanSolver expresses members over inserted generators") {
    auto F = Fq::make({3, 1, {}});
    SpanSolver S(F, 4);
    Vec g0 = {1, 2, 0, 1}, g1 = {0, 1, 1, 0}, g2 = {0, 0, 1, 2};
    CHECK(S.add(g0));
    CHECK(S.add(g1));
    CHECK(S.add(g2));
    // dependent vector: g0 + 2*g1
    Vec v = {1, 1, 2, 1};
    CHECK_FALSE(S.add(v));
    auto c = S.express(v);
    REQUIRE(c.has_value());
    // verify expression
    Vec acc(4, 0);
    std::vector<Vec> gens = {g0, g1, g2, v};
    for (size_t i = 0; i < c->size(); ++i)
        for (int j = 0; j < 4; ++j) acc[j] = F->add(acc[j], F->mul((*c)[i], gens[i][j]));
    CHECK(acc == v);
    CHECK(S.dim() == 3);
    Vec outside = {0, 0, 0, 2};
    CHECK(S.express(outside).has_value() == S.contains(outside));
}
