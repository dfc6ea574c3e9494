#include "cssbp/tanner.hpp"

#include <stdexcept>

namespace cssbp {

TannerGraph TannerGraph::build(const RowSupports& rows, int vars) {
    TannerGraph g;
    g.checks = static_cast<int>(rows.size());
    g.vars = vars;
    g.check_edges.resize(g.checks);
    g.var_edges.resize(vars);
    for (int i = 0; i < g.checks; ++i) {
        for (int j : rows[i]) {
            if (j < 0 || j >= vars) throw std::invalid_argument("row support exceeds variable count");
            const int e = g.edges();
            g.edge_check.push_back(i);
            g.edge_var.push_back(j);
            g.check_edges[i].push_back(e);
            g.var_edges[j].push_back(e);
        }
    }
    return g;
}

}  // namespace cssbp
