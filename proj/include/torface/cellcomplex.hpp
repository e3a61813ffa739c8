#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torface/errors.hpp"

namespace torface {

/// Raw user input for a cell complex: cells with dimensions, order pairs
/// [lower, upper], and the incidence table on covering pairs.
struct RawComplex {
    std::vector<std::pair<std::string, int>> cells; // (id, dim)
    std::vector<std::pair<std::string, std::string>> order;
    std::vector<std::tuple<std::string, std::string, int>> incidence; // (upper, lower, sign)
};

/// A validated finite regular cell complex, seen purely as a graded poset
/// with an incidence function. Cells carry dense internal ids in input
/// order; the empty cell has dim -1 and is the unique minimum.
/// Immutable after validation; safe for concurrent reads.
class CellComplex {
public:
    static CellComplex validate(const RawComplex& raw);

    int size() const { return (int)names_.size(); }
    int empty_cell() const { return empty_; }
    int dim(int c) const { return dims_[(size_t)c]; }
    const std::string& name(int c) const { return names_[(size_t)c]; }
    int cell_by_name(const std::string& n) const; // throws on unknown id
    int max_dim() const { return max_dim_; }

    bool leq(int lo, int hi) const { return leq_[(size_t)lo][(size_t)hi] != 0; }
    int incidence(int upper, int lower) const; // 0 when not a covering pair

    const std::vector<int>& covers_up(int c) const { return covers_up_[(size_t)c]; }
    const std::vector<int>& covers_down(int c) const { return covers_down_[(size_t)c]; }

    /// All tau >= c, sorted by (dim, internal id).
    std::vector<int> upper_set(int c) const;
    std::vector<int> lower_set(int c) const;

    int meet(int a, int b) const { return meet_[(size_t)a][(size_t)b]; }
    /// Minimal common upper bound; unique when any common upper cell exists.
    std::optional<int> min_common_upper(int a, int b) const;

    std::vector<int> maximal_cells() const;
    std::vector<int> cells_of_dim(int d) const;

private:
    std::vector<std::string> names_;
    std::vector<int> dims_;
    int empty_ = -1;
    int max_dim_ = -1;
    std::vector<std::vector<char>> leq_;
    std::map<std::pair<int, int>, int> eps_;
    std::vector<std::vector<int>> covers_up_, covers_down_;
    std::vector<std::vector<int>> meet_;
    std::vector<std::vector<int>> min_upper_; // -1 = none
};

/// Facets given as vertex lists; produces all faces, the containment
/// order, and the alternating-sign incidence function derived from the
/// vertex ordering.
RawComplex make_simplicial(const std::vector<std::vector<std::string>>& facets,
                           const std::string& empty_id = "o");

} // namespace torface
