#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiltmut/field.hpp"
#include "tiltmut/poly.hpp"

using namespace tiltmut;

TEST_CASE("prime field arithmetic") {
    auto F = Fq::make({3, 1, {}});
    CHECK(F->q() == 3);
    CHECK(F->add(2, 2) == 1);
    CHECK(F->mul(2, 2) == 1);
    CHECK(F->neg(1) == 2);
    CHECK(F->inv(2) == 2);
    CHECK(F->from_int(-1) == 2);
    for (Fel a = 1; a < 3; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
}

TEST_CASE("F_9 field axioms") {
    auto F = Fq::make({3, 2, {}});
    CHECK(F->q() == 9);
    // Field axioms by exhaustion.
    for (uint32_t a = 0; a < 9; ++a) {
        for (uint32_t b = 0; b < 9; ++b) {
            CHECK(F->add(Fel(a), Fel(b)) == F->add(Fel(b), Fel(a)));
            CHECK(F->mul(Fel(a), Fel(b)) == F->mul(Fel(b), Fel(a)));
            for (uint32_t c = 0; c < 9; ++c) {
                CHECK(F->mul(F->mul(Fel(a), Fel(b)), Fel(c)) ==
                      F->mul(Fel(a), F->mul(Fel(b), Fel(c))));
                CHECK(F->mul(Fel(a), F->add(Fel(b), Fel(c))) ==
                      F->add(F->mul(Fel(a), Fel(b)), F->mul(Fel(a), Fel(c))));
            }
        }
        if (a) CHECK(F->mul(Fel(a), F->inv(Fel(a))) == 1);
    }
    // Frobenius fixes exactly the prime subfield.
    int fixed = 0;
    for (uint32_t a = 0; a < 9; ++a)
        if (F->frobenius(Fel(a), 1) == a) ++fixed;
    CHECK(fixed == 3);
    for (uint32_t a = 0; a < 9; ++a)
        CHECK(F->frobenius(F->frobenius_inv(Fel(a), 1), 1) == a);
}

TEST_CASE("multiplicative order of F_9") {
    auto F = Fq::make({3, 2, {}});
    // x (index 3, digits (0,1)) generates the unit group for the Conway modulus.
    Fel x = F->from_digits({0, 1});
    Fel cur = 1;
    int order = 0;
    do {
        cur = F->mul(cur, x);
        ++order;
    } while (cur != 1);
    CHECK(order == 8);
}

TEST_CASE("polynomial factorization over F_3") {
    auto F = Fq::make({3, 1, {}});
    // x^3 - x = x(x-1)(x-2)
    poly::P f = {0, 2, 0, 1};
    auto fs = poly::factor(*F, f);
    CHECK(fs.size() == 3);
    for (auto& [g, m] : fs) {
        CHECK(poly::degree(g) == 1);
        CHECK(m == 1);
    }
    // (x^2+1) is irreducible over F_3
    CHECK(poly::is_irreducible(*F, {1, 0, 1}));
    // (x^2+1)^2 recovered with multiplicity
    auto sq = poly::mul(*F, {1, 0, 1}, {1, 0, 1});
    auto fs2 = poly::factor(*F, sq);
    REQUIRE(fs2.size() == 1);
    CHECK(fs2[0].second == 2);
    // x^9 - x splits into all linear and quadratic irreducibles: 3 + 3 deg-2
    poly::P f9(10, 0);
    f9[1] = 2;
    f9[9] = 1;
    auto fs3 = poly::factor(*F, f9);
    int lin = 0, quad = 0;
    for (auto& [g, m] : fs3) {
        CHECK(m == 1);
        if (poly::degree(g) == 1) ++lin;
        if (poly::degree(g) == 2) ++quad;
    }
    CHECK(lin == 3);
    CHECK(quad == 3);
}

TEST_CASE("extgcd identity") {
    auto F = Fq::make({3, 2, {}});
    poly::P a = {1, 2, 0, 1}, b = {2, 1, 1};
    auto eg = poly::extgcd(*F, a, b);
    auto lhs = poly::add(*F, poly::mul(*F, eg.u, a), poly::mul(*F, eg.v, b));
    CHECK(lhs == eg.g);
}
