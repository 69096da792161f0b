#ifndef IVD_TWO_SAT_HPP
#define IVD_TWO_SAT_HPP

#include "ivd/instance.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace ivd {

/**
 * Polynomial special case for arbitrary graphs: when every cell keeps at
 * most two vertices that no other cell claims, a site placement is a
 * boolean choice per cell and the pairwise placement conflicts form a
 * 2-SAT formula. A cell whose every vertex is shared can never host its
 * site, which settles the instance outright.
 */

struct Literal {
    int var = 0;
    bool positive = true;

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.var == b.var && a.positive == b.positive;
    }
};

struct TwoSatFormula {
    int variables = 0;
    // one-literal clauses repeat the literal
    std::vector<std::pair<Literal, Literal>> clauses;
};

// Satisfying assignment found through the strongly connected components of
// the implication graph, or nullopt. Linear in the formula size. Throws
// std::invalid_argument on out-of-range variables.
std::optional<std::vector<char>> two_sat(const TwoSatFormula& f);

enum class OpenCellStatus {
    small_cells,  // every cell keeps one or two unshared vertices
    empty_cell,   // some cell has no unshared vertex: unsolvable
    large_cell,   // some cell keeps three or more unshared vertices
};

// Classifies the sizes of the unshared parts; empty_cell wins over
// large_cell. Throws std::invalid_argument on invalid instances.
OpenCellStatus open_cell_status(const Instance& inst);
bool eligible_for_2sat(const Instance& inst);

// Formula plus the site each truth value stands for: placement[i] holds
// the cell's unshared vertices in ascending order, -1 in the second slot
// for one-vertex cells. Variable i true means the first slot.
struct SatEncoding {
    TwoSatFormula formula;
    std::vector<std::array<int, 2>> placement;
};

// Encodes an instance whose unshared parts all have size 1 or 2: a forcing
// clause per one-vertex cell and per placement outside the cell's allowed
// sites, and a clause per conflicting placement pair. Throws
// std::invalid_argument otherwise.
SatEncoding build_formula(const Instance& inst);

// Decides an instance through the encoding and decodes the sites. Returns
// nullopt when some cell has no unshared vertex or the formula is
// unsatisfiable. Throws std::invalid_argument when some unshared part has
// three or more vertices.
std::optional<Solution> solve_via_2sat(const Instance& inst);

}  // namespace ivd

#endif
