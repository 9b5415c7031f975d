#ifndef TREEDOM_FUZZY_HPP
#define TREEDOM_FUZZY_HPP

#include <cmath>
#include <optional>

#include "treedom/chain.hpp"
#include "treedom/common.hpp"

// Fuzzy Potts model on the d-ary tree: a q-state Potts configuration mapped
// to +-1 by the two-block projection {1..r} -> -1, {r+1..q} -> +1.  The free
// fuzzy measure is a completely homogeneous chain; the minus fuzzy measure is
// handled through the plus-boundary Potts ratios a (root spin-1 probability),
// b (root odds) and c (subtree odds), which satisfy
//   b = ((c e^{2J} + q - 1) / (c + e^{2J} + q - 2))^{d+1},   b = (q-1)a/(1-a),
// with c the largest fixed point of the analogous d-child map.

namespace treedom {

struct FuzzyParams {
    int q = 3;       // spin count, >= 3
    double J = 1.0;  // inverse-temperature style coupling, > 0
    int r = 1;       // spins {1..r} map to -1
    int d = 2;       // branching

    void validate() const {
        if (q < 3)
            throw std::domain_error("FuzzyParams: q must be >= 3");
        if (r < 1 || r > q - 1)
            throw std::domain_error("FuzzyParams: r must lie in [1, q-1]");
        if (d < 2)
            throw std::domain_error("FuzzyParams: d must be >= 2");
        require_finite(J, "J");
        if (J <= 0.0)
            throw std::domain_error("FuzzyParams: J must be > 0");
    }

    /// e^{2J} >= q - 2, the hypothesis of the witness construction.
    bool regime() const { return std::exp(2.0 * J) >= q - 2.0; }
};

/// Plus-boundary Potts ratios; c and b are both 1 exactly in the unique phase.
struct RatioPair {
    double c = 1.0;  // subtree odds  P(spin 1)/P(spin 2) below a non-root site
    double b = 1.0;  // root odds
    double a = 0.0;  // root spin-1 probability, b/(b+q-1)
};

/// Transition matrix of the free-boundary fuzzy chain:
///   P(-1,+1) = (q-r)/(e^{2J}+q-1),  P(+1,-1) = r/(e^{2J}+q-1),
/// diagonals completing the rows.
inline TransitionMatrix2 free_chain(const FuzzyParams& fp) {
    fp.validate();
    const double e2 = std::exp(2.0 * fp.J);
    const double den = e2 + fp.q - 1.0;
    TransitionMatrix2 P;
    P.p_mm = (e2 + fp.r - 1.0) / den;
    P.p_mp = (fp.q - fp.r) / den;
    P.p_pm = fp.r / den;
    P.p_pp = (e2 + fp.q - fp.r - 1.0) / den;
    return P;
}

/// Largest p such that the free fuzzy measure dominates the density-p product
/// measure; equals the free chain's P(-1,+1).  Requires the monotone-chain
/// hypothesis P(-1,+1) <= P(+1,+1) of the product-measure criterion.
inline double free_product_threshold(const FuzzyParams& fp) {
    const TransitionMatrix2 P = free_chain(fp);
    if (!(P.p_mp <= P.p_pp))
        throw PreconditionError(
            "free_product_threshold: requires P(-1,+1) <= P(+1,+1)");
    return P.p_mp;
}

namespace detail {

inline double c_map(const FuzzyParams& fp, double x) {
    const double e2 = std::exp(2.0 * fp.J);
    return std::pow((x * e2 + fp.q - 1.0) / (x + e2 + fp.q - 2.0), fp.d);
}

}  // namespace detail

/// Largest fixed point of the subtree-odds map, obtained as the decreasing
/// limit of iterates from x0 = e^{2Jd} (the finite-volume plus-boundary
/// values).  Returns 1 when the unique fixed point is 1.
inline double subtree_ratio(const FuzzyParams& fp, double step_tol = 1e-13) {
    fp.validate();
    double x = std::exp(2.0 * fp.J * fp.d);
    for (long it = 0; it < 2000000; ++it) {
        const double nx = detail::c_map(fp, x);
        if (nx > x * (1.0 + 1e-12) + 1e-12)
            throw InternalError("subtree_ratio: iteration failed to decrease");
        if (std::fabs(nx - x) < step_tol)
            return nx;
        x = nx;
    }
    throw InternalError("subtree_ratio: iteration did not converge");
}

/// Root ratios from a subtree ratio c: the root has d+1 children, so
/// b = ((c e^{2J}+q-1)/(c+e^{2J}+q-2))^{d+1}, and a = b/(b+q-1).
inline RatioPair root_ratio(const FuzzyParams& fp, double c) {
    fp.validate();
    require_finite(c, "c");
    if (c < 1.0 - 1e-9)
        throw std::domain_error("root_ratio: subtree ratio c must be >= 1");
    const double e2 = std::exp(2.0 * fp.J);
    RatioPair rp;
    rp.c = c;
    rp.b = std::pow((c * e2 + fp.q - 1.0) / (c + e2 + fp.q - 2.0), fp.d + 1);
    rp.a = rp.b / (rp.b + fp.q - 1.0);
    if (std::fabs(rp.b - (fp.q - 1.0) * rp.a / (1.0 - rp.a)) >
        1e-10 * (1.0 + rp.b))
        throw InternalError("root_ratio: a/b consistency check failed");
    return rp;
}

/// Uniqueness of the plus-boundary Potts phase: c = 1 (within tol).
inline bool phase_unique(const FuzzyParams& fp, double tol = 1e-9) {
    return std::fabs(subtree_ratio(fp) - 1.0) <= tol;
}

/// Growth-rate bounds for the plus-boundary probability of a constant block
/// on the ball V_n.  The two geometric bases are
///   base1 = c e^{2J}/(c e^{2J}+q-1)   (constant spin 1),
///   base2 = e^{2J}/(c+e^{2J}+q-2)     (constant spin i, 2 <= i <= r),
/// and base1 >= base2 always, so the exact 1/|V_n| growth rate of the mixture
/// is base1.  sum_bound = base1 + base2 is kept separately (it can exceed 1);
/// simplified_bound = (c e^{2J}+q-2)/(c e^{2J}+q-1) is the quantity the
/// witness certificate uses, and sum_bound >= simplified_bound holds in the
/// regime e^{2J} >= q-2.
struct RateBounds {
    double sum_bound = 0.0;
    double exact_rate = 0.0;
    double simplified_bound = 0.0;
    bool sum_exceeds_one = false;
};

inline RateBounds rate_bounds(const FuzzyParams& fp, const RatioPair& ratios) {
    fp.validate();
    const double e2 = std::exp(2.0 * fp.J);
    const double c = ratios.c;
    const double base1 = c * e2 / (c * e2 + fp.q - 1.0);
    const double base2 = e2 / (c + e2 + fp.q - 2.0);
    RateBounds rb;
    rb.sum_bound = base1 + base2;
    rb.exact_rate = std::max(base1, base2);
    rb.simplified_bound = (c * e2 + fp.q - 2.0) / (c * e2 + fp.q - 1.0);
    rb.sum_exceeds_one = rb.sum_bound > 1.0;
    return rb;
}

/// Interval of witness densities p: open at lo, closed at hi.
struct WitnessInterval {
    double lo = 0.0;  // excluded
    double hi = 0.0;  // included
};

/// When the plus-boundary phase is not unique, every p with
///   (q-r)/(c e^{2J}+q-1) < p <= (q-r)/(e^{2J}+q-1)
/// is dominated by the free fuzzy measure but not by the minus fuzzy measure.
/// Empty when the phase is unique.  Requires the regime e^{2J} >= q-2.
inline std::optional<WitnessInterval> witness_p(const FuzzyParams& fp) {
    fp.validate();
    if (!fp.regime())
        throw PreconditionError("witness_p: requires e^{2J} >= q - 2");
    const double c = subtree_ratio(fp);
    if (std::fabs(c - 1.0) <= 1e-9)
        return std::nullopt;
    const double e2 = std::exp(2.0 * fp.J);
    WitnessInterval w;
    w.lo = (fp.q - fp.r) / (c * e2 + fp.q - 1.0);
    w.hi = (fp.q - fp.r) / (e2 + fp.q - 1.0);
    return w;
}

/// True iff simplified_bound > 1 - p, certifying that the all-minus
/// probability of the minus fuzzy measure decays too slowly for it to
/// dominate the density-p product measure.
inline bool nondomination_certificate(const FuzzyParams& fp, double p) {
    fp.validate();
    require_finite(p, "p");
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("nondomination_certificate: p must lie in [0,1]");
    const double c = subtree_ratio(fp);
    const RateBounds rb = rate_bounds(fp, root_ratio(fp, c));
    return rb.simplified_bound > 1.0 - p;
}

}  // namespace treedom

#endif
