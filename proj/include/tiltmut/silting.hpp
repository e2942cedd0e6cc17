#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiltmut/homotopy.hpp"

namespace tiltmut {

struct PresiltingViolation {
    int summand_from = -1, summand_to = -1;  // -1 when reported on the whole complex
    int shift = 0;
};

enum class TiltingVerdict {
    kYes,                              // generation certain (the algebra itself)
    kYesByMutationCertificate,         // reached from the algebra by mutation
    kPresiltingGenerationUnverified,   // vanishing holds; thick-generation open
    kNotPresilting,
};

/// A certified silting complex: minimized basic complex, its indecomposable
/// summands in a fixed order, and how we know it generates.
struct SiltingComplex {
    ProjComplex cpx;
    std::vector<ProjComplex> summands;
    enum class Cert { kIdentity, kMutationPath, kUserSupplied } cert = Cert::kUserSupplied;
    std::vector<std::pair<int, bool>> path;  // (summand index, is_left) from the base
};

/// First violating (summand pair, shift) of Hom(P, P[n]) = 0 for n > 0, if any.
std::optional<PresiltingViolation> presilting_violation(const ProjComplex& P);
bool is_presilting(const ProjComplex& P);

/// Two-sided vanishing plus the generation verdict.
TiltingVerdict is_tilting(const SiltingComplex& P);

/// P >= Q: Hom(P, Q[i]) = 0 for all i > 0 (exact over the finite window).
bool geq(const ProjComplex& P, const ProjComplex& Q);

/// Minimal left add(M)-approximation f: X -> M' with M a list of pairwise
/// non-isomorphic indecomposables; the returned map's dst is the assembled
/// M'.  Verified: composing with Hom(M', M_j) reaches all of Hom(X, M_j).
ChainMap minimal_left_approximation(const ProjComplex& X, const std::vector<ProjComplex>& M);
ChainMap minimal_right_approximation(const ProjComplex& X, const std::vector<ProjComplex>& M);

/// The basic algebra stalk as the base silting complex.
SiltingComplex silting_from_algebra(ProjAlgebraPtr PA);
/// Wrap a user complex: minimized, decomposed, certificate kUserSupplied.
SiltingComplex silting_from_complex(const ProjComplex& P);

/// Irreducible mutation at the given summand.  Left mutations descend
/// strictly; right mutations invert them.
SiltingComplex mutate(const SiltingComplex& P, int summand, bool left);

struct EnumOptions {
    long budget_steps = 10000;
    double budget_seconds = 600.0;
    int threads = 1;
    /// Per-edge strict-descent and round-trip checks during enumeration.
    bool check_involution = false;
};

struct HasseEdge {
    int from = 0, to = 0, label = 0;
    auto operator<=>(const HasseEdge&) const = default;
};

struct TiltingPoset {
    std::vector<SiltingComplex> members;  // BFS order; members[0] is the top
    std::vector<std::vector<char>> order;  // order[i][j] = (member i >= member j)
    std::vector<HasseEdge> edges;          // left-mutation edges inside the poset
    int ell = 1;
    long steps_used = 0;
};

/// {T : P >= T >= P[1]} by breadth-first left mutation with membership
/// pruning; throws BudgetExceeded when a budget runs out.
TiltingPoset two_tilt(const SiltingComplex& P, const EnumOptions& opt);
TiltingPoset tilting_interval(const SiltingComplex& P, int ell, const EnumOptions& opt);

/// Covering relations recomputed from the order matrix; throws
/// MutationOrderMismatch if they differ from the mutation edges.  Returns the
/// per-vertex degrees of the underlying graph.
std::vector<int> hasse_degree_profile(const TiltingPoset& S);

/// Interval completeness cross-check: right-mutation closure upward from
/// P[ell] must reproduce the same member set.
bool interval_matches_right_closure(const TiltingPoset& S, const EnumOptions& opt);

/// Index of a member containing Q as a direct summand, if any.
std::optional<int> bongartz_search(const ProjComplex& Q, const TiltingPoset& poset);

/// True when the two basic complexes (given by their summand lists) agree up
/// to permutation and isomorphism of summands.
bool isomorphic_basic(const std::vector<ProjComplex>& a, const std::vector<ProjComplex>& b);

std::string poset_to_json_text(const TiltingPoset& S);
std::string poset_to_dot_text(const TiltingPoset& S);

}  // namespace tiltmut
