#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracle_two_term.hpp"
#include "tiltmut/brauer.hpp"
#include "tiltmut/silting.hpp"

using namespace tiltmut;

namespace {

ProjAlgebraPtr tree_algebra(const BrauerTree& t) {
    auto B = brauer_tree_algebra(t, {3, 1, {}});
    return ProjAlgebra::make(B.algebra, B.idempotents);
}

EnumOptions opts() {
    EnumOptions o;
    o.check_involution = true;
    return o;
}

}  // namespace

TEST_CASE("presilting checks") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    CHECK(is_presilting(L.cpx));
    CHECK(is_tilting(L) == TiltingVerdict::kYes);

    // Lambda + Lambda[1] fails with a reported violation
    ProjComplex bad = direct_sum(L.cpx, shift(L.cpx, 1));
    auto viol = presilting_violation(bad);
    REQUIRE(viol.has_value());
    CHECK(viol->shift == 1);
    CHECK(viol->summand_from >= 0);
}

TEST_CASE("geq chain through a mutation") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    SiltingComplex mu = mutate(L, 0, true);
    CHECK(is_tilting(mu) == TiltingVerdict::kYesByMutationCertificate);
    ProjComplex L1 = shift(L.cpx, 1);
    CHECK(geq(L.cpx, L.cpx));
    CHECK(geq(L.cpx, L1));
    CHECK(geq(L.cpx, mu.cpx));
    CHECK(geq(mu.cpx, L1));
    CHECK_FALSE(geq(L1, L.cpx));
    CHECK_FALSE(geq(mu.cpx, L.cpx));
}

TEST_CASE("minimal left approximation examples") {
    auto PA = tree_algebra(make_line_tree(2));
    ProjComplex P0 = ProjComplex::stalk(PA, 0);
    ProjComplex P1 = ProjComplex::stalk(PA, 1);
    // empty target: X -> 0
    ChainMap f0 = minimal_left_approximation(P0, {});
    CHECK(f0.dst.is_zero());
    // X = P0, M = {P1}: the approximation is the 1-dim generator into P1
    ChainMap f = minimal_left_approximation(P0, {P1});
    CHECK(is_isomorphic(f.dst, P1));
    // X in add M: split monomorphism (a retraction exists)
    ChainMap g = minimal_left_approximation(P0, {P0, P1});
    HomSpace H(g.dst, P0, 0);
    bool has_retraction = false;
    EndAlgebra E = end_algebra(P0);
    SpanSolver radE = radical(*E.alg);
    for (int k = 0; k < H.dim(); ++k) {
        Vec c = E.hom->project(compose(H.rep(k), g));
        if (!radE.contains(c)) has_retraction = true;
    }
    CHECK(has_retraction);
}

TEST_CASE("mutation of a local algebra is the shift") {
    auto PA = tree_algebra(make_line_tree(1, 2));  // F_3[x]/(x^3)
    SiltingComplex L = silting_from_algebra(PA);
    SiltingComplex mu = mutate(L, 0, true);
    CHECK(is_isomorphic(mu.cpx, shift(L.cpx, 1)));
    SiltingComplex back = mutate(mu, 0, false);
    CHECK(is_isomorphic(back.cpx, L.cpx));
}

TEST_CASE("mutation over the line: cone plus complement, and round trip") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    SiltingComplex mu = mutate(L, 0, true);
    // expected: (P0 -> P1) + P1
    REQUIRE(mu.summands.size() == 2);
    ProjComplex two_term;
    two_term.PA = PA;
    two_term.lo = -1;
    two_term.terms = {{0}, {1}};
    ElemMat d(1, 1, PA->algebra().dim);
    d.at(0, 0) = PA->cell(1, 0).echelon_rows()[0];
    two_term.diffs = {d};
    bool has_cone = false, has_p1 = false;
    for (const auto& s : mu.summands) {
        if (is_isomorphic(s, two_term)) has_cone = true;
        if (is_isomorphic(s, ProjComplex::stalk(PA, 1))) has_p1 = true;
    }
    CHECK(has_cone);
    CHECK(has_p1);
    // right mutation at the new summand returns Lambda
    int new_idx = -1;
    for (int i = 0; i < 2; ++i)
        if (is_isomorphic(mu.summands[i], two_term)) new_idx = i;
    REQUIRE(new_idx >= 0);
    SiltingComplex back = mutate(mu, new_idx, false);
    CHECK(is_isomorphic(back.cpx, L.cpx));
}

TEST_CASE("two_tilt of a local algebra is the two-element chain") {
    auto PA = tree_algebra(make_line_tree(1, 2));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = two_tilt(L, opts());
    CHECK(S.members.size() == 2);
    CHECK(is_isomorphic(S.members[1].cpx, shift(L.cpx, 1)));
    auto deg = hasse_degree_profile(S);
    CHECK(deg == std::vector<int>{1, 1});
}

TEST_CASE("two_tilt of the 2-edge line: 6 members, 2-regular, oracle count") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = two_tilt(L, opts());
    CHECK(S.members.size() == 6);

    // unique maximum Lambda and minimum Lambda[1]
    int maxima = 0, minima = 0;
    for (size_t i = 0; i < S.members.size(); ++i) {
        bool is_max = true, is_min = true;
        for (size_t j = 0; j < S.members.size(); ++j) {
            if (i == j) continue;
            if (!S.order[i][j]) is_max = false;
            if (!S.order[j][i]) is_min = false;
        }
        maxima += is_max;
        minima += is_min;
        if (is_max) CHECK(is_isomorphic(S.members[i].cpx, L.cpx));
        if (is_min) CHECK(is_isomorphic(S.members[i].cpx, shift(L.cpx, 1)));
    }
    CHECK(maxima == 1);
    CHECK(minima == 1);

    // Hasse: 2-regular underlying graph; mutation edges == covers
    auto deg = hasse_degree_profile(S);
    for (int d : deg) CHECK(d == 2);

    // member count against the independent brute-force oracle at cap 2|classes|
    auto indecs = oracle::two_term_presilting_indecomposables(PA, 4);
    CHECK(indecs.size() == 6);
    CHECK(oracle::count_tilting_collections(PA, indecs) == 6);

    // full tilting vanishing for every member (symmetric algebra)
    for (const auto& m : S.members) {
        auto v = is_tilting(m);
        CHECK((v == TiltingVerdict::kYes || v == TiltingVerdict::kYesByMutationCertificate));
    }
}

TEST_CASE("Bongartz completion at two-term scale over the line") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = two_tilt(L, opts());
    auto indecs = oracle::two_term_presilting_indecomposables(PA, 4);
    for (const auto& Q : indecs) {
        auto hit = bongartz_search(Q, S);
        CHECK(hit.has_value());
    }
    // the projective stalk itself reports the top member
    auto hit = bongartz_search(ProjComplex::stalk(PA, 0), S);
    REQUIRE(hit.has_value());
    CHECK(*hit == 0);
}

TEST_CASE("two_tilt of the 3-edge star: 3-regular, oracle count") {
    auto PA = tree_algebra(make_star_tree(3));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = two_tilt(L, opts());
    auto deg = hasse_degree_profile(S);
    for (int d : deg) CHECK(d == 3);

    // oracle cap |classes| = 3; the assertion below keeps the comparison
    // two-sided: every engine summand stays within the oracle's universe
    for (const auto& m : S.members)
        for (const auto& s : m.summands) {
            CHECK(s.term_count(-1) <= 3);
            CHECK(s.term_count(0) <= 3);
        }
    auto indecs = oracle::two_term_presilting_indecomposables(PA, 3);
    long expect = oracle::count_tilting_collections(PA, indecs);
    CHECK(long(S.members.size()) == expect);
    // every oracle indecomposable occurs in the poset (Bongartz scan)
    for (const auto& Q : indecs) CHECK(bongartz_search(Q, S).has_value());
}

TEST_CASE("interval of a local algebra at ell = 2") {
    auto PA = tree_algebra(make_line_tree(1, 2));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = tilting_interval(L, 2, opts());
    REQUIRE(S.members.size() == 3);
    bool found0 = false, found1 = false, found2 = false;
    for (const auto& m : S.members) {
        if (is_isomorphic(m.cpx, L.cpx)) found0 = true;
        if (is_isomorphic(m.cpx, shift(L.cpx, 1))) found1 = true;
        if (is_isomorphic(m.cpx, shift(L.cpx, 2))) found2 = true;
    }
    CHECK(found0);
    CHECK(found1);
    CHECK(found2);
}

TEST_CASE("interval ell=2 over the line: finite, connected, right-closure equal") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    EnumOptions o;
    o.budget_steps = 100000;
    TiltingPoset S = tilting_interval(L, 2, o);
    CHECK(S.members.size() >= 11);
    // mutation-connected: edges form a connected graph on all members
    std::vector<int> comp(S.members.size());
    for (size_t i = 0; i < comp.size(); ++i) comp[i] = int(i);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (const auto& e : S.edges) comp[find(e.from)] = find(e.to);
    std::set<int> roots;
    for (size_t i = 0; i < comp.size(); ++i) roots.insert(find(int(i)));
    CHECK(roots.size() == 1);
    // completeness cross-check from the other end
    CHECK(interval_matches_right_closure(S, o));
    // layer-composition comparison: two_tilt(L) united with its shift
    TiltingPoset S1 = two_tilt(L, opts());
    long layer_union = 2 * long(S1.members.size()) - 1;
    MESSAGE("interval(2) members: ", S.members.size(), ", layer union: ", layer_union);
    CHECK(long(S.members.size()) >= layer_union);
    // ell = 1 equals two_tilt
    TiltingPoset S0 = tilting_interval(L, 1, opts());
    CHECK(S0.members.size() == S1.members.size());
}

TEST_CASE("budget exhaustion is a distinguished outcome") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    EnumOptions o;
    o.budget_steps = 1;
    CHECK_THROWS_AS(two_tilt(L, o), BudgetExceeded);
}

TEST_CASE("serial and parallel enumeration agree byte for byte") {
    auto PA = tree_algebra(make_star_tree(3));
    SiltingComplex L = silting_from_algebra(PA);
    EnumOptions serial;
    EnumOptions parallel;
    parallel.threads = 2;
    TiltingPoset A = two_tilt(L, serial);
    TiltingPoset B = two_tilt(L, parallel);
    CHECK(poset_to_json_text(A) == poset_to_json_text(B));
}

TEST_CASE("poset JSON and DOT") {
    auto PA = tree_algebra(make_line_tree(2));
    SiltingComplex L = silting_from_algebra(PA);
    TiltingPoset S = two_tilt(L, opts());
    std::string json = poset_to_json_text(S);
    CHECK(json.find("\"members\"") != std::string::npos);
    std::string dot = poset_to_dot_text(S);
    // 6 nodes. 2-regular underlying graph on 6 vertices has 6 edges
    CHECK(std::count(dot.begin(), dot.end(), '>') == 6);
}
