#ifndef TREEDOM_CHAIN_HPP
#define TREEDOM_CHAIN_HPP

#include "treedom/common.hpp"
#include "treedom/ising.hpp"

namespace treedom {

/// Row-stochastic 2x2 matrix over spins {-1, +1}.
struct TransitionMatrix2 {
    double p_mm = 0.5;  // P(-1,-1)
    double p_mp = 0.5;  // P(-1,+1)
    double p_pm = 0.5;  // P(+1,-1)
    double p_pp = 0.5;  // P(+1,+1)
};

struct Distribution2 {
    double prob_minus = 0.5;
    double prob_plus = 0.5;
};

/// Transition matrix P_t of the completely homogeneous chain indexed by t:
///   P_t(-1,-1) = e^{J-t}/(2 cosh(J-t)),  P_t(-1,+1) = e^{t-J}/(2 cosh(J-t)),
///   P_t(+1,-1) = e^{-J-t}/(2 cosh(J+t)), P_t(+1,+1) = e^{J+t}/(2 cosh(J+t)).
/// Evaluated in logistic form, which is overflow-free for any finite t.
inline TransitionMatrix2 transition_matrix(double J, double t) {
    require_finite(J, "J");
    require_finite(t, "t");
    if (J <= 0.0)
        throw std::domain_error("transition_matrix: coupling J must be > 0");
    TransitionMatrix2 P;
    P.p_mp = logistic(2.0 * (t - J));
    P.p_mm = logistic(-2.0 * (t - J));
    P.p_pp = logistic(2.0 * (t + J));
    P.p_pm = logistic(-2.0 * (t + J));
    return P;
}

/// Stationary distribution of an irreducible 2-state chain:
/// nu(+1) = P(-1,+1) / (P(-1,+1) + P(+1,-1)).
inline Distribution2 stationary(const TransitionMatrix2& P) {
    if (!(P.p_mm > 0.0 && P.p_mp > 0.0 && P.p_pm > 0.0 && P.p_pp > 0.0))
        throw std::domain_error("stationary: chain must have all entries > 0");
    const double s = P.p_mp + P.p_pm;
    return {P.p_pm / s, P.p_mp / s};
}

}  // namespace treedom

#endif
