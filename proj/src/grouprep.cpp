#include "tiltmut/grouprep.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace tiltmut {

int Group::inverse(int a) const {
    for (int b = 0; b < n; ++b)
        if (mult(a, b) == 0) return b;
    throw ValidationError("group element has no inverse");
}

int Group::power(int a, long e) const {
    int r = 0;
    long k = e % n;
    if (k < 0) k += n;
    for (long i = 0; i < k; ++i) r = mult(r, a);
    return r;
}

void Group::validate() const {
    if (n <= 0 || int(table.size()) != n * n)
        throw ValidationError("group table has wrong shape");
    for (int a = 0; a < n; ++a) {
        if (mult(0, a) != a || mult(a, 0) != a)
            throw ValidationError("element 0 is not an identity");
        std::vector<bool> row(n, false), col(n, false);
        for (int b = 0; b < n; ++b) {
            int ab = mult(a, b), ba = mult(b, a);
            if (ab < 0 || ab >= n || ba < 0 || ba >= n)
                throw ValidationError("group table entry out of range");
            if (row[ab] || col[ba]) throw ValidationError("group table is not a Latin square");
            row[ab] = col[ba] = true;
        }
        inverse(a);
    }
    // Associativity: exhaustive for small orders, sampled above that.
    if (n <= 128) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mult(mult(a, b), c) != mult(a, mult(b, c)))
                        throw ValidationError("group multiplication is not associative");
    } else {
        uint64_t s = 0x2545f4914f6cdd1dull;
        for (int t = 0; t < 100000; ++t) {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            int a = int(s % n), b = int((s >> 20) % n), c = int((s >> 40) % n);
            if (mult(mult(a, b), c) != mult(a, mult(b, c)))
                throw ValidationError("group multiplication is not associative");
        }
    }
}

std::vector<std::vector<int>> Group::conjugacy_classes() const {
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> out;
    for (int a = 0; a < n; ++a) {
        if (cls[a] >= 0) continue;
        std::vector<int> orbit;
        int id = int(out.size());
        for (int g = 0; g < n; ++g) {
            int c = mult(mult(g, a), inverse(g));
            if (cls[c] < 0) {
                cls[c] = id;
                orbit.push_back(c);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(orbit);
    }
    return out;
}

Group Group::from_generators(const std::vector<std::vector<int>>& perms, int cap) {
    if (perms.empty()) throw ValidationError("no generators");
    size_t deg = perms[0].size();
    for (const auto& p : perms) {
        if (p.size() != deg) throw ValidationError("generators act on different point sets");
        std::vector<bool> seen(deg, false);
        for (int img : p) {
            if (img < 0 || img >= int(deg) || seen[img])
                throw ValidationError("generator is not a permutation");
            seen[img] = true;
        }
    }
    std::vector<int> id(deg);
    for (size_t i = 0; i < deg; ++i) id[i] = int(i);
    auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(deg);
        for (size_t i = 0; i < deg; ++i) r[i] = b[a[i]];
        return r;
    };
    std::vector<std::vector<int>> elems = {id};
    std::map<std::vector<int>, int> index = {{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : perms) {
            auto next = compose(elems[head], g);
            if (index.emplace(next, int(elems.size())).second) {
                elems.push_back(next);
                if (int(elems.size()) > cap)
                    throw CapExceeded("group closure exceeds the order cap of " +
                                      std::to_string(cap));
            }
        }
    }
    Group G;
    G.n = int(elems.size());
    G.table.assign(size_t(G.n) * G.n, 0);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            G.table[size_t(a) * G.n + b] = index.at(compose(elems[a], elems[b]));
    G.perm_elements = std::move(elems);
    G.validate();
    return G;
}

Group Group::from_table(std::vector<int> table, int n) {
    Group G;
    G.n = n;
    G.table = std::move(table);
    G.validate();
    return G;
}

Group Group::cyclic(int n) {
    Group G;
    G.n = n;
    G.table.assign(size_t(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.table[size_t(a) * n + b] = (a + b) % n;
    return G;
}

Group Group::direct_product(const Group& A, const Group& B) {
    Group G;
    G.n = A.n * B.n;
    G.table.assign(size_t(G.n) * G.n, 0);
    auto idx = [&](int a, int b) { return a * B.n + b; };
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2)
                    G.table[size_t(idx(a1, b1)) * G.n + idx(a2, b2)] =
                        idx(A.mult(a1, a2), B.mult(b1, b2));
    return G;
}

std::pair<Group, std::vector<int>> subgroup(const Group& G, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0)
        throw ValidationError("subgroup must contain the identity");
    std::map<int, int> local;
    for (size_t i = 0; i < elements.size(); ++i) local[elements[i]] = int(i);
    Group H;
    H.n = int(elements.size());
    H.table.assign(size_t(H.n) * H.n, 0);
    for (int a = 0; a < H.n; ++a)
        for (int b = 0; b < H.n; ++b) {
            int prod = G.mult(elements[a], elements[b]);
            auto it = local.find(prod);
            if (it == local.end()) throw ValidationError("subset is not closed under multiplication");
            H.table[size_t(a) * H.n + b] = it->second;
        }
    H.validate();
    return {H, elements};
}

void GroupPair::validate(uint32_t p) const {
    big.validate();
    sub.validate();
    if (int(embedding.size()) != sub.n) throw ValidationError("embedding has wrong length");
    std::set<int> image(embedding.begin(), embedding.end());
    if (int(image.size()) != sub.n) throw ValidationError("embedding is not injective");
    if (embedding[0] != 0) throw ValidationError("embedding must send identity to identity");
    for (int a = 0; a < sub.n; ++a)
        for (int b = 0; b < sub.n; ++b)
            if (big.mult(embedding[a], embedding[b]) != embedding[sub.mult(a, b)])
                throw ValidationError("embedding is not a homomorphism");
    for (int g = 0; g < big.n; ++g)
        for (int a : embedding)
            if (!image.count(big.mult(big.mult(g, a), big.inverse(g))))
                throw ValidationError("image of the embedding is not normal");
    if (big.n % sub.n != 0) throw ValidationError("subgroup order does not divide group order");
    int idx = big.n / sub.n;
    if (idx != index) throw ValidationError("stored index disagrees with |big|/|sub|");
    int r = idx;
    while (r % int(p) == 0) r /= int(p);
    if (r != 1)
        throw ValidationError("index " + std::to_string(idx) + " is not a power of p=" +
                              std::to_string(p));
}

std::vector<int> GroupPair::coset_representatives() const {
    std::set<int> image(embedding.begin(), embedding.end());
    std::vector<int> reps;
    std::set<int> covered;
    for (int g = 0; g < big.n; ++g) {
        if (covered.count(g)) continue;
        reps.push_back(g);
        for (int a : image) covered.insert(big.mult(a, g));
    }
    return reps;
}

AlgebraPtr group_algebra(const Group& G, const FieldSpec& field) {
    if (G.n > kGroupAlgebraDimCap)
        throw CapExceeded("group algebra dimension cap " +
                          std::to_string(kGroupAlgebraDimCap) + " exceeded");
    auto F = Fq::make(field);
    auto A = std::make_shared<Algebra>();
    A->F = F;
    A->dim = G.n;
    for (int i = 0; i < G.n; ++i) A->basis_labels.push_back("g" + std::to_string(i));
    A->unit.assign(G.n, 0);
    A->unit[0] = 1;
    A->mul.assign(G.n, std::vector<Algebra::SparseVec>(G.n));
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) A->mul[a][b].push_back({G.mult(a, b), 1});
    return A;
}

Fel augmentation(const Algebra& kG, const Vec& x) {
    Fel s = 0;
    for (Fel c : x) s = kG.F->add(s, c);
    return s;
}

std::vector<Vec> block_idempotents(const AlgebraPtr& kG) {
    return central_primitive_idempotents(kG);
}

Block make_block(const AlgebraPtr& kG, const Vec& e) {
    if (!kG->is_idempotent(e)) throw ValidationError("block selector is not idempotent");
    std::vector<Vec> gens;
    for (int k = 0; k < kG->dim; ++k) gens.push_back(kG->mulvec(e, kG->basis_vec(k)));
    Subalgebra alg = make_subalgebra(kG, gens, e);
    IdempotentSet idems = primitive_idempotents(*alg.alg);
    return Block{kG, e, std::move(alg), std::move(idems)};
}

Block principal_block(const AlgebraPtr& kG) {
    auto blocks = block_idempotents(kG);
    std::vector<Vec> hits;
    for (const Vec& e : blocks)
        if (augmentation(*kG, e) == 1) hits.push_back(e);
    if (hits.size() != 1)
        throw ValidationError("expected exactly one block with augmentation 1, found " +
                              std::to_string(hits.size()));
    return make_block(kG, hits[0]);
}

Vec conjugate_element(const Group& G, const Algebra& kG, int g, const Vec& x) {
    Vec r(kG.dim, 0);
    for (int h = 0; h < G.n; ++h) {
        if (!x[h]) continue;
        int c = G.mult(G.mult(g, h), G.inverse(g));
        r[c] = kG.F->add(r[c], x[h]);
    }
    return r;
}

Vec embed_vector(const GroupPair& pair, const Vec& x) {
    Vec r(pair.big.n, 0);
    for (int a = 0; a < pair.sub.n; ++a) r[pair.embedding[a]] = x[a];
    return r;
}

Vec covering_block_idempotent(const GroupPair& pair, const AlgebraPtr& kGt, const Vec& e_B) {
    Vec e_up = embed_vector(pair, e_B);
    auto blocks = block_idempotents(kGt);
    std::vector<Vec> covers;
    for (const Vec& et : blocks) {
        Vec prod = kGt->mulvec(et, e_up);
        if (!std::all_of(prod.begin(), prod.end(), [](Fel v) { return v == 0; }))
            covers.push_back(et);
    }
    if (covers.empty()) throw NoCover("no block of the big group algebra covers the given block");
    if (covers.size() > 1)
        throw AmbiguousCover("found " + std::to_string(covers.size()) +
                             " covering blocks; the p-power-index hypothesis fails");
    return covers[0];
}

std::pair<Group, std::vector<int>> inertial_group(const GroupPair& pair,
                                                  const AlgebraPtr& kGt, const Vec& e_B) {
    Vec e_up = embed_vector(pair, e_B);
    std::vector<int> stab;
    for (int g = 0; g < pair.big.n; ++g)
        if (conjugate_element(pair.big, *kGt, g, e_up) == e_up) stab.push_back(g);
    auto sg = subgroup(pair.big, stab);
    // The inertial group always contains the image of the small group.
    std::set<int> in(sg.second.begin(), sg.second.end());
    for (int a : pair.embedding)
        if (!in.count(a))
            throw ValidationError("inertial group does not contain the normal subgroup");
    return sg;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

Group group_from_json(const nlohmann::json& j, const std::string& base) {
    if (j.contains("generators")) {
        if (!j["generators"].is_array() || j["generators"].empty())
            throw SchemaError(base + "/generators", "expected a non-empty array");
        std::vector<std::vector<int>> perms;
        for (size_t g = 0; g < j["generators"].size(); ++g) {
            const auto& arr = j["generators"][g];
            if (!arr.is_array())
                throw SchemaError(base + "/generators/" + std::to_string(g),
                                  "expected an array of 1-indexed images");
            std::vector<int> p;
            for (size_t i = 0; i < arr.size(); ++i) {
                if (!arr[i].is_number_integer())
                    throw SchemaError(base + "/generators/" + std::to_string(g) + "/" +
                                          std::to_string(i),
                                      "expected an integer");
                p.push_back(arr[i].get<int>() - 1);  // files are 1-indexed
            }
            perms.push_back(p);
        }
        try {
            return Group::from_generators(perms);
        } catch (const Error& e) {
            throw SchemaError(base + "/generators", e.what());
        }
    }
    if (j.contains("table")) {
        const auto& tj = j["table"];
        if (!tj.is_array() || tj.empty()) throw SchemaError(base + "/table", "expected a square array");
        int n = int(tj.size());
        std::vector<int> table;
        for (int r = 0; r < n; ++r) {
            if (!tj[r].is_array() || int(tj[r].size()) != n)
                throw SchemaError(base + "/table/" + std::to_string(r), "expected a row of length " +
                                                                            std::to_string(n));
            for (int c = 0; c < n; ++c) table.push_back(tj[r][c].get<int>());
        }
        try {
            return Group::from_table(std::move(table), n);
        } catch (const Error& e) {
            throw SchemaError(base + "/table", e.what());
        }
    }
    throw SchemaError(base, "group needs either 'generators' or 'table'");
}

nlohmann::json group_to_json(const Group& g) {
    nlohmann::json j;
    j["schema"] = 1;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < g.n; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < g.n; ++c) row.push_back(g.mult(r, c));
        rows.push_back(row);
    }
    j["table"] = rows;
    return j;
}

}  // namespace

Group group_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return group_from_json(j, "");
}

std::string group_to_json_text(const Group& g) { return group_to_json(g).dump(2) + "\n"; }

GroupPair group_pair_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("big")) throw SchemaError("/big", "missing big group");
    if (!j.contains("sub")) throw SchemaError("/sub", "missing subgroup");
    GroupPair p;
    p.big = group_from_json(j["big"], "/big");
    p.sub = group_from_json(j["sub"], "/sub");
    if (!j.contains("embedding") || !j["embedding"].is_array())
        throw SchemaError("/embedding", "expected an array mapping sub elements to big elements");
    for (const auto& v : j["embedding"]) p.embedding.push_back(v.get<int>());
    if (p.sub.n == 0 || p.big.n % p.sub.n != 0)
        throw SchemaError("/embedding", "subgroup order does not divide group order");
    p.index = p.big.n / p.sub.n;
    return p;
}

std::string group_pair_to_json_text(const GroupPair& p) {
    nlohmann::json j;
    j["schema"] = 1;
    j["big"] = group_to_json(p.big);
    j["sub"] = group_to_json(p.sub);
    j["embedding"] = p.embedding;
    return j.dump(2) + "\n";
}

}  // namespace tiltmut
