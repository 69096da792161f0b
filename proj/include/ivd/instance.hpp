#ifndef IVD_INSTANCE_HPP
#define IVD_INSTANCE_HPP

#include "ivd/graph.hpp"

#include <string>
#include <vector>

namespace ivd {

// Candidate Voronoi cell with its allowed site placements.
// Both lists are kept sorted ascending and duplicate-free.
struct Cell {
    std::vector<int> U;
    std::vector<int> S;
};

enum class Kind { tree, graph };

struct Instance {
    Graph graph;
    std::vector<Cell> cells;
    Kind kind = Kind::graph;

    int n() const { return graph.vertex_count(); }
    int k() const { return static_cast<int>(cells.size()); }
    // Input size measure: vertex count plus total cell membership.
    long long total_size() const;
};

struct Solution {
    std::vector<int> sites;  // one per cell, same order
};

struct Violation {
    enum class Type {
        NoCells,           // instance has an empty cell list
        BadVertexId,       // a U/S entry is outside 0..n-1
        CoverViolation,    // vertex belongs to no cell
        NotATree,          // tree-kind instance whose graph is not a tree
        Disconnected,      // graph-kind instance that is not connected
    };
    Type type;
    int vertex = -1;  // offending vertex where applicable
    int cell = -1;    // offending cell index where applicable

    std::string to_string() const;
};

std::vector<Violation> validate_instance(const Instance& inst);

// JSON round-trip. The on-disk format stores plain rational edge lengths;
// instances carrying symbolic weight components cannot be serialized.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);
Solution parse_solution(const std::string& text);
std::string serialize_solution(const Solution& sol);

// Sorts and dedupes a vertex list in place.
void canonicalize(std::vector<int>& verts);

// Sorted-membership helper used throughout.
bool contains_vertex(const std::vector<int>& sorted, int v);

}  // namespace ivd

#endif
