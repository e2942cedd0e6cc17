#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "tiltmut/algebra.hpp"

using namespace tiltmut;

namespace {

AlgebraPtr make_algebra(FqPtr F, std::vector<std::string> labels, Vec unit,
                        std::function<Vec(int, int)> mul_fn) {
    auto A = std::make_shared<Algebra>();
    A->F = F;
    A->dim = int(labels.size());
    A->basis_labels = std::move(labels);
    A->unit = std::move(unit);
    A->mul.assign(A->dim, std::vector<Algebra::SparseVec>(A->dim));
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < A->dim; ++j) {
            Vec v = mul_fn(i, j);
            for (int k = 0; k < A->dim; ++k)
                if (v[k]) A->mul[i][j].push_back({k, v[k]});
        }
    A->validate(true);
    return A;
}

// F_q[x]/(x^n), basis 1, x, ..., x^(n-1).
AlgebraPtr truncated_poly_algebra(FqPtr F, int n) {
    Vec unit(n, 0);
    unit[0] = 1;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x^" + std::to_string(i));
    return make_algebra(F, labels, unit, [n](int i, int j) {
        Vec v(n, 0);
        if (i + j < n) v[i + j] = 1;
        return v;
    });
}

// Group algebra from an explicit multiplication table.
AlgebraPtr table_group_algebra(FqPtr F, const std::vector<std::vector<int>>& table) {
    int n = int(table.size());
    Vec unit(n, 0);
    unit[0] = 1;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    return make_algebra(F, labels, unit, [&table, n](int i, int j) {
        Vec v(n, 0);
        v[table[i][j]] = 1;
        return v;
    });
}

std::vector<std::vector<int>> s3_table() {
    // elements s^i r^j, index = 3*i + j; r^3 = e, s^2 = e, r s = s r^{-1}
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int i1 = a / 3, j1 = a % 3, i2 = b / 3, j2 = b % 3;
            int i = (i1 + i2) % 2;
            int j = ((i2 ? (3 - j1) % 3 : j1) + j2) % 3;
            t[a][b] = 3 * i + j;
        }
    return t;
}

// The radical as the span of all elements generating a nilpotent two-sided
// ideal; exhaustive over F_3^dim, independent of the production algorithm.
SpanSolver brute_force_radical(const Algebra& A) {
    SpanSolver out(A.F, A.dim);
    uint64_t total = 1;
    for (int i = 0; i < A.dim; ++i) total *= A.F->q();
    for (uint64_t idx = 1; idx < total; ++idx) {
        Vec x(A.dim);
        uint64_t v = idx;
        for (int i = 0; i < A.dim; ++i) { x[i] = Fel(v % A.F->q()); v /= A.F->q(); }
        // two-sided ideal generated by x
        SpanSolver ideal(A.F, A.dim);
        std::vector<Vec> frontier = {x};
        ideal.add(x);
        while (!frontier.empty()) {
            std::vector<Vec> next;
            for (const Vec& w : frontier)
                for (int b = 0; b < A.dim; ++b) {
                    for (Vec prod : {A.mulvec(A.basis_vec(b), w), A.mulvec(w, A.basis_vec(b))})
                        if (ideal.add(prod)) next.push_back(prod);
                }
            frontier = std::move(next);
        }
        // nilpotency of the ideal
        std::vector<Vec> layer = ideal.echelon_rows();
        bool nil = false;
        for (int step = 0; step <= A.dim + 1; ++step) {
            if (layer.empty()) { nil = true; break; }
            SpanSolver nxt(A.F, A.dim);
            for (const Vec& a : layer)
                for (const Vec& b : ideal.echelon_rows()) nxt.add(A.mulvec(a, b));
            layer = nxt.echelon_rows();
        }
        if (nil) out.add(x);
    }
    return out;
}

}  // namespace

TEST_CASE("radical of F_3[x]/(x^3) is (x)") {
    auto F = Fq::make({3, 1, {}});
    auto A = truncated_poly_algebra(F, 3);
    SpanSolver rad = radical(*A);
    CHECK(rad.dim() == 2);
    CHECK(rad.contains(Vec{0, 1, 0}));
    CHECK(rad.contains(Vec{0, 0, 1}));
    CHECK_FALSE(rad.contains(Vec{1, 0, 0}));
}

TEST_CASE("radical of F_3 x F_3 is zero") {
    auto F = Fq::make({3, 1, {}});
    auto A = make_algebra(F, {"e1", "e2"}, Vec{1, 1}, [](int i, int j) {
        Vec v(2, 0);
        if (i == j) v[i] = 1;
        return v;
    });
    CHECK(radical(*A).dim() == 0);
}

TEST_CASE("radical of kS3 at p=3 is 4-dimensional, vs brute-force oracle") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, s3_table());
    SpanSolver rad = radical(*A);
    CHECK(rad.dim() == 4);
    SpanSolver oracle = brute_force_radical(*A);
    CHECK(oracle.dim() == rad.dim());
    for (const Vec& r : oracle.echelon_rows()) CHECK(rad.contains(r));
}

TEST_CASE("radical over F_9: kC3 at p=3") {
    auto F = Fq::make({3, 2, {}});
    auto A = table_group_algebra(F, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    SpanSolver rad = radical(*A);
    CHECK(rad.dim() == 2);  // augmentation ideal
    CHECK(rad.contains(Vec{1, F->neg(1), 0}));
}

TEST_CASE("primitive idempotents of kC2 at p=3") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, {{0, 1}, {1, 0}});
    CHECK(radical(*A).dim() == 0);
    auto E = primitive_idempotents(*A);
    REQUIRE(E.idems.size() == 2);
    CHECK(E.num_classes() == 2);
    std::vector<Vec> got = E.idems;
    std::sort(got.begin(), got.end());
    // 2(1+g) = (2,2), 2(1-g) = (2,1)
    std::vector<Vec> want = {Vec{2, 1}, Vec{2, 2}};
    CHECK(got == want);
}

TEST_CASE("primitive idempotents of a local algebra") {
    auto F = Fq::make({3, 1, {}});
    auto A = truncated_poly_algebra(F, 3);
    auto E = primitive_idempotents(*A);
    REQUIRE(E.idems.size() == 1);
    CHECK(E.idems[0] == A->unit);
    CHECK(E.num_classes() == 1);
}

TEST_CASE("primitive idempotents of kS3 at p=3: two classes") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, s3_table());
    auto E = primitive_idempotents(*A);
    REQUIRE(E.idems.size() == 2);
    CHECK(E.num_classes() == 2);
    // Peirce count: dim A = sum of dim e_i A, both projectives 3-dimensional
    long total = 0;
    for (const Vec& e : E.idems) {
        SpanSolver right(F, A->dim);
        for (int k = 0; k < A->dim; ++k) right.add(A->mulvec(e, A->basis_vec(k)));
        total += right.dim();
        CHECK(right.dim() == 3);
    }
    CHECK(total == A->dim);
}

TEST_CASE("NonSplitField: F_4 viewed as an F_2-algebra") {
    auto F = Fq::make({2, 1, {}});
    // basis 1, t with t^2 = t + 1
    auto A = make_algebra(F, {"1", "t"}, Vec{1, 0}, [](int i, int j) {
        if (i == 0 && j == 0) return Vec{1, 0};
        if (i + j == 1) return Vec{0, 1};
        return Vec{1, 1};  // t*t
    });
    CHECK(radical(*A).dim() == 0);
    try {
        primitive_idempotents(*A);
        FAIL("expected NonSplitField");
    } catch (const NonSplitField& e) {
        CHECK(e.required_degree == 2);
    }
}

TEST_CASE("cartan matrices") {
    auto F = Fq::make({3, 1, {}});
    auto A = truncated_poly_algebra(F, 3);
    auto E = primitive_idempotents(*A);
    auto C = cartan_matrix(*A, E);
    REQUIRE(C.size() == 1);
    CHECK(C[0][0] == 3);

    auto B = make_algebra(F, {"e1", "e2"}, Vec{1, 1}, [](int i, int j) {
        Vec v(2, 0);
        if (i == j) v[i] = 1;
        return v;
    });
    auto EB = primitive_idempotents(*B);
    auto CB = cartan_matrix(*B, EB);
    REQUIRE(CB.size() == 2);
    CHECK(CB[0][0] == 1);
    CHECK(CB[0][1] == 0);
    CHECK(CB[1][0] == 0);
    CHECK(CB[1][1] == 1);
}

TEST_CASE("hom_space basics") {
    auto F = Fq::make({3, 1, {}});
    auto A = truncated_poly_algebra(F, 3);
    auto E = primitive_idempotents(*A);
    CHECK(hom_space(*A, E, 0, 0).dim() == 3);

    auto B = make_algebra(F, {"e1", "e2"}, Vec{1, 1}, [](int i, int j) {
        Vec v(2, 0);
        if (i == j) v[i] = 1;
        return v;
    });
    auto EB = primitive_idempotents(*B);
    CHECK(hom_space(*B, EB, 0, 1).dim() == 0);
    CHECK_THROWS_AS(hom_space(*B, EB, 0, 5), ValidationError);
}

TEST_CASE("center of kS3 is spanned by class sums") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, s3_table());
    Subalgebra Z = center(A);
    CHECK(Z.alg->dim == 3);
    // class sums: e; r + r^2; s + sr + sr^2
    CHECK(Z.expr.contains(Vec{1, 0, 0, 0, 0, 0}));
    CHECK(Z.expr.contains(Vec{0, 1, 1, 0, 0, 0}));
    CHECK(Z.expr.contains(Vec{0, 0, 0, 1, 1, 1}));
}

TEST_CASE("block idempotents via the center") {
    auto F = Fq::make({3, 1, {}});
    auto kc2 = table_group_algebra(F, {{0, 1}, {1, 0}});
    auto blocks = central_primitive_idempotents(kc2);
    REQUIRE(blocks.size() == 2);

    auto ks3 = table_group_algebra(F, s3_table());
    auto blocks3 = central_primitive_idempotents(ks3);
    REQUIRE(blocks3.size() == 1);
    CHECK(blocks3[0] == ks3->unit);

    auto kc3 = table_group_algebra(F, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    auto blocksc3 = central_primitive_idempotents(kc3);
    REQUIRE(blocksc3.size() == 1);
}

TEST_CASE("projective iso pairs are exact two-sided inverses") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, s3_table());
    auto E = primitive_idempotents(*A);
    SpanSolver rad = radical(*A);
    for (size_t i = 0; i < E.idems.size(); ++i) {
        auto pair = projective_iso_pair(*A, rad, E.idems[i], E.idems[i]);
        REQUIRE(pair.has_value());
        CHECK(A->mulvec(pair->first, pair->second) == E.idems[i]);
    }
    CHECK_FALSE(projectives_isomorphic(*A, rad, E.idems[0], E.idems[1]));
}

TEST_CASE("minimal polynomial") {
    auto F = Fq::make({3, 1, {}});
    auto A = truncated_poly_algebra(F, 3);
    auto mu = minimal_polynomial(*A, Vec{0, 1, 0});
    CHECK(mu == std::vector<Fel>{0, 0, 0, 1});  // t^3
    auto mu1 = minimal_polynomial(*A, A->unit);
    CHECK(mu1 == std::vector<Fel>{2, 1});  // t - 1
}

TEST_CASE("decompose_idempotent splits the unit of kS3") {
    auto F = Fq::make({3, 1, {}});
    auto A = table_group_algebra(F, s3_table());
    auto parts = decompose_idempotent(*A, A->unit);
    REQUIRE(parts.size() == 2);
    Vec sum = A->zero();
    for (const Vec& e : parts) sum = A->add(sum, e);
    CHECK(sum == A->unit);
}
