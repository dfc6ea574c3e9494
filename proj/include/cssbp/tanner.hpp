#pragma once

#include <vector>

#include "cssbp/css_code.hpp"

namespace cssbp {

/// Edge-indexed view of one binary Tanner graph.  Edge ids are assigned by
/// walking rows in order with columns ascending, so message layouts are
/// deterministic.
struct TannerGraph {
    int checks = 0;
    int vars = 0;
    std::vector<int> edge_check;               ///< per edge: check index
    std::vector<int> edge_var;                 ///< per edge: variable index
    std::vector<std::vector<int>> check_edges; ///< per check: edge ids, column-ascending
    std::vector<std::vector<int>> var_edges;   ///< per variable: edge ids, check-ascending

    int edges() const { return static_cast<int>(edge_check.size()); }

    static TannerGraph build(const RowSupports& rows, int vars);
};

}  // namespace cssbp
