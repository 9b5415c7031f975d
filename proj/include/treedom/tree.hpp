#ifndef TREEDOM_TREE_HPP
#define TREEDOM_TREE_HPP

#include <cstdint>
#include <vector>

#include "treedom/common.hpp"

namespace treedom::oracle {

/// Rooted truncation of the d-ary tree: the root has d+1 children, every
/// other internal vertex has d, vertices are indexed breadth-first.
struct FiniteTree {
    int d = 2;
    int depth = 0;
    std::vector<int> parent;    // parent[0] == -1
    std::vector<int> level;     // distance from the root

    int n_vertices() const { return static_cast<int>(parent.size()); }

    bool same_shape(const FiniteTree& o) const {
        return d == o.d && depth == o.depth && parent == o.parent;
    }
};

/// Number of vertices of the depth-`depth` ball: 1 + (d+1)(d^depth - 1)/(d-1).
inline std::uint64_t tree_size(int d, int depth) {
    std::uint64_t n = 1, layer = 1;
    for (int k = 1; k <= depth; ++k) {
        layer *= (k == 1) ? static_cast<std::uint64_t>(d) + 1 : static_cast<std::uint64_t>(d);
        n += layer;
        if (n > (std::uint64_t(1) << 62))
            throw SizeError("tree_size: vertex count overflow");
    }
    return n;
}

inline FiniteTree build_tree(int d, int depth,
                             std::uint64_t max_vertices = std::uint64_t(-1)) {
    if (d < 2)
        throw std::domain_error("build_tree: d must be >= 2");
    if (depth < 0)
        throw std::domain_error("build_tree: depth must be >= 0");
    const std::uint64_t n = tree_size(d, depth);
    if (n > max_vertices)
        throw SizeError("build_tree: vertex cap exceeded");

    FiniteTree t;
    t.d = d;
    t.depth = depth;
    t.parent.reserve(n);
    t.level.reserve(n);
    t.parent.push_back(-1);
    t.level.push_back(0);
    int next = 1;
    std::vector<int> frontier{0};
    for (int k = 1; k <= depth; ++k) {
        std::vector<int> nf;
        const int nch = (k == 1) ? d + 1 : d;
        for (int v : frontier) {
            for (int c = 0; c < nch; ++c) {
                t.parent.push_back(v);
                t.level.push_back(k);
                nf.push_back(next++);
            }
        }
        frontier = std::move(nf);
    }
    return t;
}

}  // namespace treedom::oracle

#endif
