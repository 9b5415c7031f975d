#ifndef TREEDOM_MAXFLOW_HPP
#define TREEDOM_MAXFLOW_HPP

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

namespace treedom::oracle {

/// Dinic max-flow with double capacities.  Residual capacities below kEps are
/// treated as saturated, so the answer is exact up to accumulated rounding of
/// the capacity sums.
class MaxFlow {
  public:
    explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int u, int v, double cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0.0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    double run(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            it_ = head_;
            for (;;) {
                const double pushed = dfs(s, t, kInf);
                if (pushed <= 0.0)
                    break;
                flow += pushed;
            }
        }
        return flow;
    }

  private:
    static constexpr double kEps = 1e-14;
    static constexpr double kInf = 1e30;

    struct Edge {
        int to;
        int next;
        double cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next) {
                if (edges_[e].cap > kEps && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    double dfs(int u, int t, double limit) {
        if (u == t)
            return limit;
        for (int& e = it_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > kEps && level_[ed.to] == level_[u] + 1) {
                const double pushed = dfs(ed.to, t, std::min(limit, ed.cap));
                if (pushed > 0.0) {
                    ed.cap -= pushed;
                    edges_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        level_[u] = -1;
        return 0.0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
};

}  // namespace treedom::oracle

#endif
