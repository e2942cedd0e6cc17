#include "tiltmut/brauer.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "json.hpp"

namespace tiltmut {

std::vector<std::string> validate_brauer_tree(const BrauerTree& t) {
    std::vector<std::string> errs;
    if (t.edges.empty()) errs.push_back("tree has no edges");
    std::set<std::string> edge_set(t.edges.begin(), t.edges.end());
    if (edge_set.size() != t.edges.size()) errs.push_back("duplicate edge ids");
    if (t.multiplicity < 1) errs.push_back("multiplicity must be >= 1");
    if (!t.exceptional_vertex && t.multiplicity != 1)
        errs.push_back("multiplicity > 1 requires an exceptional vertex");
    if (t.exceptional_vertex && !t.cyclic.count(*t.exceptional_vertex))
        errs.push_back("exceptional vertex is not a vertex of the tree");

    // Each edge must occur in exactly two vertex lists, once per list.
    std::map<std::string, std::vector<std::string>> endpoints;
    for (const auto& [v, inc] : t.cyclic) {
        std::set<std::string> seen;
        for (const auto& e : inc) {
            if (!edge_set.count(e)) errs.push_back("unknown edge '" + e + "' at vertex '" + v + "'");
            if (!seen.insert(e).second)
                errs.push_back("edge '" + e + "' repeated in the cyclic order at '" + v + "'");
            endpoints[e].push_back(v);
        }
    }
    for (const auto& e : t.edges) {
        auto it = endpoints.find(e);
        size_t cnt = it == endpoints.end() ? 0 : it->second.size();
        if (cnt != 2)
            errs.push_back("edge '" + e + "' has " + std::to_string(cnt) +
                           " endpoints, expected 2");
    }
    if (!errs.empty()) return errs;

    // Tree check: connected with |V| = |E| + 1.
    if (t.cyclic.size() != t.edges.size() + 1) {
        errs.push_back("not a tree: vertex count != edge count + 1");
        return errs;
    }
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [e, vs] : endpoints) {
        adj[vs[0]].push_back(vs[1]);
        adj[vs[1]].push_back(vs[0]);
    }
    std::set<std::string> visited;
    std::vector<std::string> stack = {t.cyclic.begin()->first};
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (!visited.insert(v).second) continue;
        for (const auto& w : adj[v]) stack.push_back(w);
    }
    if (visited.size() != t.cyclic.size()) errs.push_back("not a tree: graph is disconnected");
    return errs;
}

namespace {

struct WalkData {
    std::map<std::string, std::array<std::string, 2>> ends;
    std::map<std::string, std::vector<std::string>> order;
    std::map<std::string, std::map<std::string, int>> pos;
    std::map<std::string, int> cycle_len;  // valence * multiplicity at the vertex

    std::string step(const std::string& vertex, const std::string& edge, int l) const {
        const auto& ord = order.at(vertex);
        int k = int(ord.size());
        int p = (pos.at(vertex).at(edge) + l) % k;
        return ord[p];
    }
};

}  // namespace

BrauerAlgebra brauer_tree_algebra(const BrauerTree& t, const FieldSpec& field) {
    auto errs = validate_brauer_tree(t);
    if (!errs.empty()) throw ValidationError("invalid Brauer tree: " + errs.front());
    auto F = Fq::make(field);

    std::vector<std::string> edges = t.edges;
    std::sort(edges.begin(), edges.end());

    WalkData wd;
    for (const auto& [v, inc] : t.cyclic) {
        wd.order[v] = inc;
        for (size_t i = 0; i < inc.size(); ++i) wd.pos[v][inc[i]] = int(i);
        int mult = (t.exceptional_vertex && *t.exceptional_vertex == v) ? t.multiplicity : 1;
        wd.cycle_len[v] = int(inc.size()) * mult;
    }
    for (const auto& [v, inc] : t.cyclic)
        for (const auto& e : inc) {
            auto it = wd.ends.find(e);
            if (it == wd.ends.end())
                wd.ends[e] = {v, v};
            else
                it->second[1] = v;
        }
    for (auto& [e, vs] : wd.ends)
        if (vs[0] > vs[1]) std::swap(vs[0], vs[1]);

    // Basis: for each edge (sorted): idempotent, proper walks around each
    // endpoint (lengths 1 .. cycle_len-1), socle = the full cycle.
    struct BasisEl {
        enum Kind { Idem, Walk, Socle } kind;
        std::string edge;    // starting edge
        std::string vertex;  // walk vertex (Walk only)
        int len = 0;
        std::string end;     // edge where the element ends
    };
    std::vector<BasisEl> basis;
    std::vector<std::string> labels;
    std::map<std::string, int> idem_index, socle_index;
    std::map<std::string, std::map<std::string, std::map<int, int>>> walk_index;
    for (const auto& e : edges) {
        idem_index[e] = int(basis.size());
        basis.push_back({BasisEl::Idem, e, "", 0, e});
        labels.push_back("e(" + e + ")");
        for (const auto& v : wd.ends[e]) {
            int L = wd.cycle_len[v];
            for (int l = 1; l <= L - 1; ++l) {
                walk_index[e][v][l] = int(basis.size());
                basis.push_back({BasisEl::Walk, e, v, l, wd.step(v, e, l)});
                labels.push_back("w(" + e + ";" + v + ";" + std::to_string(l) + ")");
            }
        }
        socle_index[e] = int(basis.size());
        basis.push_back({BasisEl::Socle, e, "", 0, e});
        labels.push_back("z(" + e + ")");
    }

    const int d = int(basis.size());
    auto A = std::make_shared<Algebra>();
    A->F = F;
    A->dim = d;
    A->basis_labels = labels;
    A->unit.assign(d, 0);
    for (const auto& e : edges) A->unit[idem_index[e]] = 1;
    A->mul.assign(d, std::vector<Algebra::SparseVec>(d));

    auto product = [&](int i, int j) -> int {  // basis index of b_i * b_j, or -1
        const BasisEl& a = basis[i];
        const BasisEl& b = basis[j];
        if (a.end != b.edge) return -1;
        if (a.kind == BasisEl::Idem) return j;
        if (b.kind == BasisEl::Idem) return i;
        if (a.kind == BasisEl::Socle || b.kind == BasisEl::Socle) return -1;
        if (a.vertex != b.vertex) return -1;
        int total = a.len + b.len;
        int L = wd.cycle_len.at(a.vertex);
        if (total < L) return walk_index.at(a.edge).at(a.vertex).at(total);
        if (total == L) return socle_index.at(a.edge);
        return -1;
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int k = product(i, j);
            if (k >= 0) A->mul[i][j].push_back({k, 1});
        }
    A->validate(d <= 48);

    BrauerAlgebra out;
    out.algebra = A;
    out.socle_coords.assign(d, 0);
    for (const auto& [e, idx] : socle_index) out.socle_coords[idx] = 1;
    IdempotentSet E;
    for (const auto& e : edges) {
        Vec v(d, 0);
        v[idem_index[e]] = 1;
        E.class_of.push_back(int(E.idems.size()));
        E.representative.push_back(int(E.idems.size()));
        E.idems.push_back(v);
    }
    out.idempotents = std::move(E);
    return out;
}

Fel socle_form(const BrauerAlgebra& B, const Vec& x) {
    const Fq& F = *B.algebra->F;
    Fel s = 0;
    for (size_t i = 0; i < x.size(); ++i)
        if (B.socle_coords[i]) s = F.add(s, x[i]);
    return s;
}

BrauerTree make_line_tree(int edges, int multiplicity) {
    BrauerTree t;
    t.multiplicity = multiplicity;
    for (int i = 0; i < edges; ++i) t.edges.push_back("a" + std::to_string(i));
    for (int v = 0; v <= edges; ++v) {
        std::vector<std::string> inc;
        if (v > 0) inc.push_back("a" + std::to_string(v - 1));
        if (v < edges) inc.push_back("a" + std::to_string(v));
        t.cyclic["v" + std::to_string(v)] = inc;
    }
    if (multiplicity > 1) t.exceptional_vertex = "v0";
    return t;
}

BrauerTree make_star_tree(int edges, int multiplicity) {
    BrauerTree t;
    t.multiplicity = multiplicity;
    std::vector<std::string> center;
    for (int i = 0; i < edges; ++i) {
        std::string e = "a" + std::to_string(i);
        t.edges.push_back(e);
        center.push_back(e);
        t.cyclic["u" + std::to_string(i)] = {e};
    }
    t.cyclic["c"] = center;
    if (multiplicity > 1) t.exceptional_vertex = "c";
    return t;
}

BrauerTree brauer_tree_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    BrauerTree t;
    if (!j.contains("edges") || !j["edges"].is_array())
        throw SchemaError("/edges", "expected an array of edge ids");
    for (size_t i = 0; i < j["edges"].size(); ++i) {
        if (!j["edges"][i].is_string())
            throw SchemaError("/edges/" + std::to_string(i), "edge id must be a string");
        t.edges.push_back(j["edges"][i].get<std::string>());
    }
    if (!j.contains("cyclic") || !j["cyclic"].is_object())
        throw SchemaError("/cyclic", "expected an object mapping vertices to edge lists");
    for (const auto& [v, arr] : j["cyclic"].items()) {
        if (!arr.is_array()) throw SchemaError("/cyclic/" + v, "expected an array");
        std::vector<std::string> inc;
        for (size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string())
                throw SchemaError("/cyclic/" + v + "/" + std::to_string(i),
                                  "edge id must be a string");
            inc.push_back(arr[i].get<std::string>());
        }
        t.cyclic[v] = inc;
    }
    if (j.contains("exceptional") && !j["exceptional"].is_null()) {
        const auto& ex = j["exceptional"];
        if (!ex.contains("vertex") || !ex["vertex"].is_string())
            throw SchemaError("/exceptional/vertex", "expected a vertex id");
        t.exceptional_vertex = ex["vertex"].get<std::string>();
        if (ex.contains("multiplicity")) {
            if (!ex["multiplicity"].is_number_integer())
                throw SchemaError("/exceptional/multiplicity", "expected an integer");
            t.multiplicity = ex["multiplicity"].get<int>();
        }
    }
    auto errs = validate_brauer_tree(t);
    if (!errs.empty()) throw SchemaError("", errs.front());
    return t;
}

std::string brauer_tree_to_json_text(const BrauerTree& t) {
    nlohmann::json j;
    j["schema"] = 1;
    j["edges"] = t.edges;
    for (const auto& [v, inc] : t.cyclic) j["cyclic"][v] = inc;
    if (t.exceptional_vertex) {
        j["exceptional"]["vertex"] = *t.exceptional_vertex;
        j["exceptional"]["multiplicity"] = t.multiplicity;
    }
    return j.dump(2) + "\n";
}

}  // namespace tiltmut
