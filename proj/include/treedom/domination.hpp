#ifndef TREEDOM_DOMINATION_HPP
#define TREEDOM_DOMINATION_HPP

#include <utility>

#include "treedom/chain.hpp"
#include "treedom/common.hpp"
#include "treedom/ising.hpp"

// Stochastic domination between extremal Ising measures on the d-ary tree.
// Two completely homogeneous chains are ordered iff both "towards +1" matrix
// entries are ordered, which for the Ising chains reduces to
//   t_1 >= t_2 + |J_1 - J_2|.
// The smallest field h making the (J2, h) plus / minus measure dominate a
// given chain is a function of tau = t_extreme + |J1 - J2| alone; psi and
// theta below are those functions of tau.

namespace treedom {

/// One Ising plus/minus measure on the tree, identified by its parameters.
struct ChainSpec {
    int d = 2;
    double J = 1.0;
    double h = 0.0;
    Sign sign = Sign::Plus;

    ModelParams params() const { return {d, J, h}; }
    double t_value() const { return t_extreme(params(), sign); }
    TransitionMatrix2 matrix() const { return transition_matrix(J, t_value()); }
};

/// mu_P dominates mu_Q iff P(-1,+1) >= Q(-1,+1) and P(+1,+1) >= Q(+1,+1).
inline bool mc_dominates(const TransitionMatrix2& P, const TransitionMatrix2& Q) {
    return P.p_mp >= Q.p_mp && P.p_pp >= Q.p_pp;
}

/// Does the measure of c1 dominate the measure of c2?  Decided on the matrix
/// entries, cross-checked against the reduced inequality
/// t(c1) >= t(c2) + |J1 - J2|.  The two routes must agree whenever the margin
/// exceeds the rounding band.
inline bool chain_dominates(const ChainSpec& c1, const ChainSpec& c2,
                            double agreement_band = 1e-9) {
    if (c1.d != c2.d)
        throw std::domain_error("chain_dominates: branching parameters differ");
    const double t1 = c1.t_value();
    const double t2 = c2.t_value();
    const bool by_matrix = mc_dominates(transition_matrix(c1.J, t1),
                                        transition_matrix(c2.J, t2));
    const double margin = t1 - t2 - std::fabs(c1.J - c2.J);
    const bool by_reduction = margin >= 0.0;
    if (by_matrix != by_reduction && std::fabs(margin) > agreement_band)
        throw InternalError("chain_dominates: matrix and reduced criteria disagree");
    return by_matrix;
}

/// tau = t_extreme(J1, h1, sign) + |J1 - J2|.
inline double tau(double J1, double J2, double h1, Sign which, int d) {
    require_finite(J2, "J2");
    if (J2 <= 0.0)
        throw std::domain_error("tau: coupling J2 must be > 0");
    return t_extreme({d, J1, h1}, which) + std::fabs(J1 - J2);
}

enum class Attained { Closed, Open };
enum class Branch { Flat, Curve };

/// A domination threshold: the left endpoint of {h : domination holds},
/// with whether that endpoint itself belongs to the set.
struct Threshold {
    double value = 0.0;
    Attained attained = Attained::Closed;
    Branch branch = Branch::Curve;
};

namespace detail {
// Branch-selector comparisons use the closed-form interval endpoints with a
// small absolute tolerance; the two branches agree at the seams.
inline constexpr double kBranchTol = 1e-12;

inline double curve_value(int d, double J2, double t) {
    return t - d * phi(J2, t);
}
}  // namespace detail

/// Smallest h with t_+(J2, h) >= t, as a function of t.  Flat at -h*(J2) on
/// [t_-(J2, -h*(J2)), t*(J2)), the curve t - d*phi_{J2}(t) elsewhere; the
/// infimum is attained on both branches.
inline Threshold psi(int d, double J2, double t) {
    require_finite(t, "t");
    const double hs = h_star(d, J2);
    if (hs > 0.0) {
        const double ts = t_star(d, J2);
        const double left = t_extreme({d, J2, -hs}, Sign::Minus);
        if (t > left - detail::kBranchTol && t < ts - detail::kBranchTol)
            return {-hs, Attained::Closed, Branch::Flat};
    }
    return {detail::curve_value(d, J2, t), Attained::Closed, Branch::Curve};
}

/// Smallest h with t_-(J2, h) >= t.  Flat at +h*(J2) on
/// (-t*(J2), t_+(J2, h*(J2))], where the infimum is NOT attained; the same
/// curve elsewhere, attained.
inline Threshold theta(int d, double J2, double t) {
    require_finite(t, "t");
    const double hs = h_star(d, J2);
    if (hs > 0.0) {
        const double ts = t_star(d, J2);
        const double right = t_extreme({d, J2, hs}, Sign::Plus);
        if (t > -ts + detail::kBranchTol && t < right + detail::kBranchTol)
            return {hs, Attained::Open, Branch::Flat};
    }
    return {detail::curve_value(d, J2, t), Attained::Closed, Branch::Curve};
}

/// inf{ h : (J2, h) plus measure dominates the (J1, h1) plus/minus measure }.
inline Threshold f_threshold(double J1, double J2, double h1, Sign which, int d) {
    return psi(d, J2, tau(J1, J2, h1, which, d));
}

/// inf{ h : (J2, h) minus measure dominates the (J1, h1) plus/minus measure }.
inline Threshold g_threshold(double J1, double J2, double h1, Sign which, int d) {
    return theta(d, J2, tau(J1, J2, h1, which, d));
}

/// Degree-based envelope for the plus-dominates-plus threshold on a graph of
/// maximum degree N:  h1 - N(J1+J2) <= value <= h1 + N|J1-J2|.
/// Tree callers pass N = d+1.
inline std::pair<double, double> field_envelope(double J1, double J2, double h1, int N) {
    if (N < 1)
        throw std::domain_error("field_envelope: N must be >= 1");
    require_finite(J1, "J1");
    require_finite(J2, "J2");
    require_finite(h1, "h1");
    return {h1 - N * (J1 + J2), h1 + N * std::fabs(J1 - J2)};
}

enum class ContinuityCase {
    SubcriticalOrEqual,   // J1 <= J_c or J1 == J2
    SecondSubcritical,    // J1 > J_c and J2 <= J_c
    BothSupercritical,    // J1, J2 > J_c, J1 != J2
};

/// Continuity of h1 -> f_threshold(J1, J2, h1, plus, d) at its only possible
/// jump point -h*(J1).
struct ContinuityVerdict {
    double point = 0.0;  // -h*(J1)
    bool continuous = true;
    ContinuityCase case_label = ContinuityCase::SubcriticalOrEqual;
    double a = 0.0;  // t_-(J1, -h*(J1)) + |J1-J2|
    double b = 0.0;  // t_+(J1, -h*(J1)) + |J1-J2|
};

/// Analytic clause table: continuous if J1 <= J_c or J1 == J2; discontinuous
/// if J1 > J_c >= J2; otherwise continuous exactly when both one-sided tau
/// limits a, b land in the flat piece of psi(J2, .).
inline ContinuityVerdict continuity_classify(double J1, double J2, int d) {
    ContinuityVerdict v;
    const double hs1 = h_star(d, J1);
    v.point = -hs1;
    const ModelParams at_jump{d, J1, -hs1};
    const FixedPointSolution sol = solve_fixed_points(at_jump);
    v.a = sol.roots.front() + std::fabs(J1 - J2);
    v.b = sol.roots.back() + std::fabs(J1 - J2);

    const double jc = critical_coupling(d);
    if (J1 <= jc || J1 == J2) {
        v.case_label = ContinuityCase::SubcriticalOrEqual;
        v.continuous = true;
    } else if (J2 <= jc) {
        v.case_label = ContinuityCase::SecondSubcritical;
        v.continuous = false;
    } else {
        v.case_label = ContinuityCase::BothSupercritical;
        const double left = t_extreme({d, J2, -h_star(d, J2)}, Sign::Minus);
        const double ts2 = t_star(d, J2);
        v.continuous = (left <= v.a && v.a < ts2) && (left <= v.b && v.b <= ts2);
    }
    return v;
}

struct MonotonicityCheck {
    double derivative = 0.0;  // d/dJ of t_+(J, h)
    bool in_region = false;   // region where the derivative is provably >= 1
};

/// d/dJ t_+(J,h) = d*phi_J' / (1 - d*phi_t') evaluated at (J, t_+(J,h)).
/// in_region marks (h >= 0, J >= J_c) or (h < 0, h*(J) > -h), where the
/// derivative is at least 1 and consequently J -> mu_h^{J,+} is increasing.
inline MonotonicityCheck coupling_monotonicity_check(int d, double J, double h) {
    const double tp = t_extreme({d, J, h}, Sign::Plus);
    const PhiPartials g = phi_partials(J, tp);
    const double denom = 1.0 - d * g.dphi_dt;
    if (denom <= 0.0)
        throw SingularityError(
            "coupling_monotonicity_check: t_+ is not a transversal crossing here");
    MonotonicityCheck out;
    out.derivative = d * g.dphi_dJ / denom;
    out.in_region = (h >= 0.0 && J >= critical_coupling(d)) || (h < 0.0 && h_star(d, J) > -h);
    return out;
}

}  // namespace treedom

#endif
