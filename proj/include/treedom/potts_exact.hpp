#ifndef TREEDOM_POTTS_EXACT_HPP
#define TREEDOM_POTTS_EXACT_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "treedom/common.hpp"

// Exact q-state Potts transfer recursions on the d-ary tree with spin-1
// boundary conditioning.  These never use the reduced two-value odds map;
// they carry full q-vector messages, so they are an independent check of the
// closed-form ratio system.

namespace treedom::oracle {

namespace detail {

// Message of a depth-0 subtree root: d boundary children fixed to spin 1.
inline std::vector<double> potts_leaf_message(int q, double e2, int d) {
    std::vector<double> m(static_cast<std::size_t>(q), 1.0);
    m[0] = std::pow(e2, d);
    return m;
}

// One upward step: combine `nch` identical child messages through the edge
// weights w(i,j) = e^{2J [i==j]}, then renormalize by the maximum.
inline std::vector<double> potts_step(const std::vector<double>& m, int q, double e2,
                                      int nch) {
    std::vector<double> w(static_cast<std::size_t>(q));
    double mx = 0.0;
    for (int i = 0; i < q; ++i) {
        double s = 0.0;
        for (int j = 0; j < q; ++j)
            s += (i == j ? e2 : 1.0) * m[static_cast<std::size_t>(j)];
        w[static_cast<std::size_t>(i)] = std::pow(s, nch);
        mx = std::max(mx, w[static_cast<std::size_t>(i)]);
    }
    for (double& x : w)
        x /= mx;
    return w;
}

inline void check_potts_args(int q, double J, int d) {
    if (q < 2)
        throw std::domain_error("potts oracle: q must be >= 2");
    if (d < 2)
        throw std::domain_error("potts oracle: d must be >= 2");
    require_finite(J, "J");
    if (J < 0.0)
        throw std::domain_error("potts oracle: J must be >= 0");
}

}  // namespace detail

/// Odds P(X(x)=1)/P(X(x)=2) at the root of a depth-truncated subtree (d
/// children per vertex) whose generation depth+1 is fixed to spin 1.
/// Converges to the subtree ratio c as depth grows.
inline double potts_subtree_ratio_exact(int q, double J, int d, int depth) {
    detail::check_potts_args(q, J, d);
    if (depth < 0 || depth > 30)
        throw std::domain_error("potts_subtree_ratio_exact: depth must lie in [0, 30]");
    const double e2 = std::exp(2.0 * J);
    std::vector<double> m = detail::potts_leaf_message(q, e2, d);
    for (int k = 0; k < depth; ++k)
        m = detail::potts_step(m, q, e2, d);
    return m[0] / m[1];
}

/// 1/|V_n| power of  sum_{i=1..r} P( X == i on the whole ball V_n )  under
/// the plus-boundary infinite-volume Potts measure, computed by saturating
/// the subtree message below the ball and assembling the cylinder probability
/// in log space.
inline double all_minus_rate(int q, double J, int r, int d, int depth) {
    detail::check_potts_args(q, J, d);
    if (r < 1 || r > q - 1)
        throw std::domain_error("all_minus_rate: r must lie in [1, q-1]");
    if (depth < 0 || depth > 20)
        throw std::domain_error("all_minus_rate: depth must lie in [0, 20]");
    const double e2 = std::exp(2.0 * J);

    // Saturate the message entering from below the truncation.
    std::vector<double> u = detail::potts_leaf_message(q, e2, d);
    {
        double mx = 0.0;
        for (double x : u)
            mx = std::max(mx, x);
        for (double& x : u)
            x /= mx;
    }
    for (int it = 0; it < 200000; ++it) {
        const std::vector<double> nu_ = detail::potts_step(u, q, e2, d);
        double diff = 0.0;
        for (int j = 0; j < q; ++j)
            diff = std::max(diff, std::fabs(nu_[static_cast<std::size_t>(j)] -
                                            u[static_cast<std::size_t>(j)]));
        u = nu_;
        if (diff < 1e-16)
            break;
    }
    // Per boundary-child factor seen by a ball leaf of spin i.
    std::vector<double> W(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        double s = 0.0;
        for (int j = 0; j < q; ++j)
            s += (i == j ? e2 : 1.0) * u[static_cast<std::size_t>(j)];
        W[static_cast<std::size_t>(i)] = s;
    }

    // Ball geometry.
    std::uint64_t nv = 1, layer = 1, leaves = 1;
    for (int k = 1; k <= depth; ++k) {
        layer *= (k == 1) ? static_cast<std::uint64_t>(d) + 1 : static_cast<std::uint64_t>(d);
        nv += layer;
        leaves = layer;
    }
    const double edges = static_cast<double>(nv - 1);

    // log Z over the ball, upward in log space; leaves absorb W^d from below
    // (the depth-0 ball is just the root, with d+1 saturated children).
    std::vector<double> logm(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j)
        logm[static_cast<std::size_t>(j)] = (depth == 0 ? 0.0 : d) *
                                            std::log(W[static_cast<std::size_t>(j)]);
    for (int lev = depth - 1; lev >= 0; --lev) {
        const int nch = lev == 0 ? d + 1 : d;
        double mx = logm[0];
        for (double x : logm)
            mx = std::max(mx, x);
        std::vector<double> nxt(static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) {
            double s = 0.0;
            for (int j = 0; j < q; ++j)
                s += (i == j ? e2 : 1.0) * std::exp(logm[static_cast<std::size_t>(j)] - mx);
            nxt[static_cast<std::size_t>(i)] = nch * (std::log(s) + mx);
        }
        logm = nxt;
    }
    if (depth == 0)
        for (int j = 0; j < q; ++j)
            logm[static_cast<std::size_t>(j)] = (d + 1) * std::log(W[static_cast<std::size_t>(j)]);
    double mx = logm[0];
    for (double x : logm)
        mx = std::max(mx, x);
    double z = 0.0;
    for (double x : logm)
        z += std::exp(x - mx);
    const double logZ = std::log(z) + mx;

    // log numerator for the constant-i configuration, i = 1..r.
    const double per_leaf = static_cast<double>(d) * static_cast<double>(leaves);
    auto lognum = [&](int i) {
        const double boundary = depth == 0
                                    ? (d + 1) * std::log(W[static_cast<std::size_t>(i)])
                                    : per_leaf * std::log(W[static_cast<std::size_t>(i)]);
        return 2.0 * J * edges + boundary;
    };
    double nmx = lognum(0);
    for (int i = 1; i < r; ++i)
        nmx = std::max(nmx, lognum(i));
    double acc = 0.0;
    for (int i = 0; i < r; ++i)
        acc += std::exp(lognum(i) - nmx);
    const double logP = std::log(acc) + nmx - logZ;
    return std::exp(logP / static_cast<double>(nv));
}

}  // namespace treedom::oracle

#endif
