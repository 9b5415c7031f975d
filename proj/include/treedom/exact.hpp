#ifndef TREEDOM_EXACT_HPP
#define TREEDOM_EXACT_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "treedom/chain.hpp"
#include "treedom/common.hpp"
#include "treedom/maxflow.hpp"
#include "treedom/tree.hpp"

// Exact distributions over {-1,+1}^V for finite rooted trees, and two
// independent deciders for stochastic domination between them:
//   - dominates_exact: Strassen coupling feasibility as a max-flow problem,
//   - dominates_brute: inequality on every upward-closed event.
// Configurations are indexed vertex-major: bit i of the index is 1 iff
// vertex i carries spin +1.

namespace treedom::oracle {

struct Caps {
    static constexpr int kDistributionVertices = 20;  // 2^20 probabilities
    static constexpr int kFlowVertices = 12;          // 2 * 2^12 flow nodes
    static constexpr int kBruteVertices = 5;
};

struct ConfigDistribution {
    FiniteTree tree;
    std::vector<double> probs;  // length 2^{|V|}

    int n_vertices() const { return tree.n_vertices(); }
};

/// Exact law of the completely homogeneous chain on a finite tree:
/// P(config) = root_dist(spin at root) * prod over edges of P(parent, child).
inline ConfigDistribution chain_distribution(const FiniteTree& tree,
                                             const TransitionMatrix2& P,
                                             const Distribution2& root_dist,
                                             int max_vertices = Caps::kDistributionVertices) {
    const int n = tree.n_vertices();
    if (n > max_vertices)
        throw SizeError("chain_distribution: tree exceeds the vertex cap");
    const double row[2][2] = {{P.p_mm, P.p_mp}, {P.p_pm, P.p_pp}};
    const double nu[2] = {root_dist.prob_minus, root_dist.prob_plus};

    ConfigDistribution out;
    out.tree = tree;
    out.probs.resize(std::size_t(1) << n);
    for (std::uint32_t cfg = 0; cfg < out.probs.size(); ++cfg) {
        double p = nu[cfg & 1u];
        for (int v = 1; v < n; ++v)
            p *= row[(cfg >> tree.parent[v]) & 1u][(cfg >> v) & 1u];
        out.probs[cfg] = p;
    }
    return out;
}

/// Product measure with per-site plus-probability p on the same index space.
inline ConfigDistribution product_distribution(const FiniteTree& tree, double p,
                                               int max_vertices = Caps::kDistributionVertices) {
    require_finite(p, "p");
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("product_distribution: p must lie in [0,1]");
    const int n = tree.n_vertices();
    if (n > max_vertices)
        throw SizeError("product_distribution: tree exceeds the vertex cap");
    ConfigDistribution out;
    out.tree = tree;
    out.probs.resize(std::size_t(1) << n);
    for (std::uint32_t cfg = 0; cfg < out.probs.size(); ++cfg) {
        double w = 1.0;
        for (int v = 0; v < n; ++v)
            w *= ((cfg >> v) & 1u) ? p : (1.0 - p);
        out.probs[cfg] = w;
    }
    return out;
}

/// Strassen feasibility: D1 dominates D2 iff a coupling supported on
/// {eta <= xi} exists, iff the max flow
///   source -> (configs of D2) -> {pairs eta <= xi} -> (configs of D1) -> sink
/// carries the whole unit of mass.  Verdict tolerance `tol` against 1.
inline bool dominates_exact(const ConfigDistribution& D1, const ConfigDistribution& D2,
                            double tol = 1e-10, int max_vertices = Caps::kFlowVertices) {
    if (!D1.tree.same_shape(D2.tree))
        throw std::domain_error("dominates_exact: distributions live on different trees");
    const int n = D1.n_vertices();
    if (n > max_vertices)
        throw SizeError("dominates_exact: tree exceeds the flow vertex cap");
    const std::uint32_t m = std::uint32_t(1) << n;

    // Node ids: 0 = source, 1..m = configs of D2, m+1..2m = configs of D1,
    // 2m+1 = sink.
    MaxFlow net(static_cast<int>(2 * m + 2));
    const int src = 0, snk = static_cast<int>(2 * m + 1);
    for (std::uint32_t y = 0; y < m; ++y)
        if (D2.probs[y] > 0.0)
            net.add_edge(src, static_cast<int>(1 + y), D2.probs[y]);
    for (std::uint32_t x = 0; x < m; ++x)
        if (D1.probs[x] > 0.0)
            net.add_edge(static_cast<int>(1 + m + x), snk, D1.probs[x]);
    const std::uint32_t full = m - 1;
    for (std::uint32_t y = 0; y < m; ++y) {
        if (D2.probs[y] <= 0.0)
            continue;
        // supersets of y's plus-set: exactly the configs above y
        const std::uint32_t rest = full & ~y;
        std::uint32_t s = rest;
        for (;;) {
            const std::uint32_t x = y | s;
            if (D1.probs[x] > 0.0)
                net.add_edge(static_cast<int>(1 + y), static_cast<int>(1 + m + x), 2.0);
            if (s == 0)
                break;
            s = (s - 1) & rest;
        }
    }
    const double flow = net.run(src, snk);
    if (flow > 1.0 + 1e-6)
        throw InternalError("dominates_exact: flow exceeds total mass");
    return flow >= 1.0 - tol;
}

namespace detail {

// Recursive antichain extension: every up-set is the up-closure of a unique
// antichain of minimal elements, and extending in increasing config order
// visits each antichain exactly once (a config below an earlier pick would
// have a smaller index, a config above it is screened by the membership
// mask).  Sums are maintained incrementally.
inline bool upsets_ok(const std::vector<double>& p1, const std::vector<double>& p2,
                      const std::vector<std::uint32_t>& cones, std::uint32_t first,
                      std::uint32_t members, double s1, double s2, double tol) {
    const std::uint32_t m = static_cast<std::uint32_t>(cones.size());
    for (std::uint32_t c = first; c < m; ++c) {
        if (members & (std::uint32_t(1) << c))
            continue;  // comparable to a chosen element
        double t1 = s1, t2 = s2;
        for (std::uint32_t x = cones[c] & ~members; x != 0; x &= x - 1) {
            const int b = std::countr_zero(x);
            t1 += p1[static_cast<std::size_t>(b)];
            t2 += p2[static_cast<std::size_t>(b)];
        }
        if (t1 < t2 - tol)
            return false;
        if (!upsets_ok(p1, p2, cones, c + 1, members | cones[c], t1, t2, tol))
            return false;
    }
    return true;
}

}  // namespace detail

/// Brute-force domination: D1(U) >= D2(U) - tol for every up-set U of the
/// configuration lattice.  Restricted to very small trees.
inline bool dominates_brute(const ConfigDistribution& D1, const ConfigDistribution& D2,
                            double tol = 1e-12) {
    if (!D1.tree.same_shape(D2.tree))
        throw std::domain_error("dominates_brute: distributions live on different trees");
    const int n = D1.n_vertices();
    if (n > Caps::kBruteVertices)
        throw SizeError("dominates_brute: tree too large for up-set enumeration");
    const std::uint32_t m = std::uint32_t(1) << n;
    std::vector<std::uint32_t> cones(m);
    const std::uint32_t full = m - 1;
    for (std::uint32_t y = 0; y < m; ++y) {
        std::uint32_t cone = 0;
        const std::uint32_t rest = full & ~y;
        std::uint32_t s = rest;
        for (;;) {
            cone |= std::uint32_t(1) << (y | s);
            if (s == 0)
                break;
            s = (s - 1) & rest;
        }
        cones[y] = cone;
    }
    return detail::upsets_ok(D1.probs, D2.probs, cones, 0, 0, 0.0, 0.0, tol);
}

/// D dominates the density-p product measure?
inline bool product_dominates_exact(const ConfigDistribution& D, double p,
                                    double tol = 1e-10,
                                    int max_vertices = Caps::kFlowVertices) {
    return dominates_exact(D, product_distribution(D.tree, p, max_vertices), tol,
                           max_vertices);
}

}  // namespace treedom::oracle

#endif
