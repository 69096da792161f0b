#include "ivd/instance.hpp"

#include "json.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ivd {

using nlohmann::json;

void canonicalize(std::vector<int>& verts) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
}

bool contains_vertex(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

long long Instance::total_size() const {
    long long total = n();
    for (const Cell& c : cells) total += static_cast<long long>(c.U.size());
    return total;
}

std::string Violation::to_string() const {
    switch (type) {
        case Type::NoCells: return "instance has no cells";
        case Type::BadVertexId:
            return "cell " + std::to_string(cell) + " references invalid vertex " +
                   std::to_string(vertex);
        case Type::CoverViolation:
            return "vertex " + std::to_string(vertex) + " belongs to no cell";
        case Type::NotATree: return "tree-kind instance is not a tree";
        case Type::Disconnected: return "graph is not connected";
    }
    return "unknown violation";
}

std::vector<Violation> validate_instance(const Instance& inst) {
    std::vector<Violation> out;
    int n = inst.n();
    if (inst.cells.empty()) out.push_back({Violation::Type::NoCells, -1, -1});
    std::vector<char> covered(n, 0);
    for (int i = 0; i < inst.k(); ++i) {
        const Cell& c = inst.cells[i];
        for (int v : c.U) {
            if (v < 0 || v >= n) {
                out.push_back({Violation::Type::BadVertexId, v, i});
            } else {
                covered[v] = 1;
            }
        }
        for (int v : c.S) {
            if (v < 0 || v >= n) out.push_back({Violation::Type::BadVertexId, v, i});
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!covered[v]) out.push_back({Violation::Type::CoverViolation, v, -1});
    }
    if (inst.kind == Kind::tree) {
        if (!inst.graph.is_tree()) out.push_back({Violation::Type::NotATree, -1, -1});
    } else if (!inst.graph.is_connected()) {
        out.push_back({Violation::Type::Disconnected, -1, -1});
    }
    return out;
}

namespace {

Rational parse_length(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    throw ParseError("edge length must be an integer or a \"p/q\" string");
}

std::vector<int> parse_vertex_list(const json& j, int n, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const json& e : j) {
        if (!e.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
        long long v = e.get<long long>();
        if (v < 0 || v >= n) throw ParseError(std::string(what) + ": vertex id out of range");
        out.push_back(static_cast<int>(v));
    }
    canonicalize(out);
    return out;
}

Instance parse_instance_json(const json& j);

}  // namespace

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_instance_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

namespace {

Instance parse_instance_json(const json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
        throw ParseError("missing integer field \"vertices\"");
    long long n = j["vertices"].get<long long>();
    if (n < 1 || n > (1LL << 30)) throw ParseError("vertex count out of range");

    Instance inst{Graph(static_cast<int>(n)), {}, Kind::graph};
    if (j.contains("kind")) {
        std::string kind = j["kind"].get<std::string>();
        if (kind == "tree") {
            inst.kind = Kind::tree;
        } else if (kind == "graph") {
            inst.kind = Kind::graph;
        } else {
            throw ParseError("kind must be \"tree\" or \"graph\"");
        }
    }

    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("missing array field \"edges\"");
    std::unordered_set<long long> seen_edges;
    for (const json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [u, v, length]");
        long long u = e[0].get<long long>(), v = e[1].get<long long>();
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("edge vertex id out of range");
        if (u == v) throw ParseError("self loops are not allowed");
        long long lo = std::min(u, v), hi = std::max(u, v);
        if (!seen_edges.insert(lo * n + hi).second) throw ParseError("duplicate edge");
        Rational len = parse_length(e[2]);
        if (len.sign() <= 0) throw ParseError("edge length must be positive");
        inst.graph.add_edge(static_cast<int>(u), static_cast<int>(v), Weight(std::move(len)));
    }

    if (!j.contains("cells") || !j["cells"].is_array())
        throw ParseError("missing array field \"cells\"");
    for (const json& c : j["cells"]) {
        if (!c.is_object() || !c.contains("U")) throw ParseError("cell must be an object with \"U\"");
        Cell cell;
        cell.U = parse_vertex_list(c["U"], static_cast<int>(n), "U");
        cell.S = c.contains("S") ? parse_vertex_list(c["S"], static_cast<int>(n), "S") : cell.U;
        inst.cells.push_back(std::move(cell));
    }
    return inst;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
    json j;
    j["version"] = 1;
    j["vertices"] = inst.n();
    j["kind"] = inst.kind == Kind::tree ? "tree" : "graph";
    json edges = json::array();
    int n = inst.n();
    for (int u = 0; u < n; ++u) {
        for (const EdgeTo& e : inst.graph.neighbors(u)) {
            if (e.to < u) continue;  // each undirected edge once
            if (!e.w.b.is_zero() || !e.w.c.is_zero())
                throw std::logic_error("cannot serialize symbolic edge weights");
            json len;
            if (e.w.a.is_small() && e.w.a.denominator_str() == "1") {
                len = std::stoll(e.w.a.numerator_str());
            } else {
                len = e.w.a.to_string();
            }
            edges.push_back(json::array({u, e.to, len}));
        }
    }
    j["edges"] = std::move(edges);
    json cells = json::array();
    for (const Cell& c : inst.cells) {
        json cj;
        cj["U"] = c.U;
        cj["S"] = c.S;
        cells.push_back(std::move(cj));
    }
    j["cells"] = std::move(cells);
    return j.dump();
}

Solution parse_solution(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("sites") || !j["sites"].is_array())
        throw ParseError("solution must be an object with a \"sites\" array");
    Solution sol;
    for (const json& e : j["sites"]) {
        if (!e.is_number_integer()) throw ParseError("site ids must be integers");
        long long v = e.get<long long>();
        if (v < 0 || v > (1LL << 30)) throw ParseError("site id out of range");
        sol.sites.push_back(static_cast<int>(v));
    }
    return sol;
}

std::string serialize_solution(const Solution& sol) {
    json j;
    j["sites"] = sol.sites;
    return j.dump();
}

}  // namespace ivd
