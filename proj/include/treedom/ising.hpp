#ifndef TREEDOM_ISING_HPP
#define TREEDOM_ISING_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "treedom/common.hpp"

// Ising model on the homogeneous d-ary tree (every site has d+1 neighbors).
// A completely homogeneous tree-indexed Markov chain with parameters (J, h)
// is indexed by a real t solving  t = h + d*phi_J(t);  this header holds the
// closed forms for the critical coupling, the extremal field offset h*(J),
// its argmax t*(J), and the classified fixed-point solver.

namespace treedom {

struct ModelParams {
    int d = 2;        // branching: each site has d+1 neighbors
    double J = 1.0;   // coupling strength, > 0
    double h = 0.0;   // external field

    void validate() const {
        if (d < 2)
            throw std::domain_error("ModelParams: branching d must be >= 2");
        require_finite(J, "J");
        require_finite(h, "h");
        if (J <= 0.0)
            throw std::domain_error("ModelParams: coupling J must be > 0");
    }
};

enum class Sign { Plus, Minus };

/// phi_J(t) = (1/2) log( cosh(t+J) / cosh(t-J) ).
/// Odd and increasing in t, bounded by J in absolute value.
inline double phi(double J, double t) {
    require_finite(J, "J");
    require_finite(t, "t");
    if (J <= 0.0)
        throw std::domain_error("phi: coupling J must be > 0");
    return 0.5 * (log_cosh(t + J) - log_cosh(t - J));
}

struct PhiPartials {
    double dphi_dJ;
    double dphi_dt;
};

/// Partial derivatives of (J,t) -> phi_J(t):
///   d/dJ = (tanh(J+t) - tanh(J-t)) / 2,   d/dt = (tanh(J+t) + tanh(J-t)) / 2.
/// Their sum telescopes to tanh(J+t).
inline PhiPartials phi_partials(double J, double t) {
    require_finite(J, "J");
    require_finite(t, "t");
    if (J <= 0.0)
        throw std::domain_error("phi_partials: coupling J must be > 0");
    const double a = std::tanh(J + t);
    const double b = std::tanh(J - t);
    return {0.5 * (a - b), 0.5 * (a + b)};
}

/// J_c = arccoth(d) = (1/2) log((d+1)/(d-1)); tanh(J_c) = 1/d.
inline double critical_coupling(int d) {
    if (d < 2)
        throw std::domain_error("critical_coupling: d must be >= 2");
    return 0.5 * std::log((d + 1.0) / (d - 1.0));
}

/// Argmax of t -> d*phi_J(t) - t over t >= 0.  Zero for J <= J_c, else
/// arctanh( sqrt( (d - coth J) / (d - tanh J) ) ).
inline double t_star(int d, double J) {
    if (d < 2)
        throw std::domain_error("t_star: d must be >= 2");
    require_finite(J, "J");
    if (J <= 0.0)
        throw std::domain_error("t_star: coupling J must be > 0");
    if (J <= critical_coupling(d))
        return 0.0;
    const double th = std::tanh(J);
    return std::atanh(std::sqrt((d - 1.0 / th) / (d - th)));
}

/// h*(J) = max_{t>=0} ( d*phi_J(t) - t ).  Zero for J <= J_c, else
/// d*arctanh( sqrt( (d tanh J - 1)/(d coth J - 1) ) ) - t*(J),
/// which equals d*phi_J(t*) - t* by construction.
inline double h_star(int d, double J) {
    if (d < 2)
        throw std::domain_error("h_star: d must be >= 2");
    require_finite(J, "J");
    if (J <= 0.0)
        throw std::domain_error("h_star: coupling J must be > 0");
    if (J <= critical_coupling(d))
        return 0.0;
    const double th = std::tanh(J);
    const double ct = 1.0 / th;
    return d * std::atanh(std::sqrt((d * th - 1.0) / (d * ct - 1.0))) - t_star(d, J);
}

enum class RootClass { Unique, TangentPair, Triple };

inline const char* to_string(RootClass c) {
    switch (c) {
        case RootClass::Unique: return "Unique";
        case RootClass::TangentPair: return "TangentPair";
        case RootClass::Triple: return "Triple";
    }
    return "?";
}

struct FixedPointSolution {
    std::vector<double> roots;      // ascending
    RootClass cls = RootClass::Unique;
    std::vector<double> residuals;  // |t - h - d*phi_J(t)| per root
};

struct SolverOptions {
    double class_tol = 1e-9;     // tolerance on |h| - h*(J) for the trichotomy
    double residual_tol = 1e-12; // bisection target
    int max_iter = 200;
};

namespace detail {

// Bisection on [lo, hi] for F with a sign change; F need not be monotone on
// the interval as long as the signs at the ends differ.
inline double bisect_root(const ModelParams& p, double lo, double hi,
                          const SolverOptions& opt) {
    auto F = [&](double t) { return p.h + p.d * phi(p.J, t) - t; };
    double flo = F(lo), fhi = F(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw InternalError("fixed-point solver: bracket without sign change");
    for (int i = 0; i < opt.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm == 0.0) return mid;
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo < 1e-16 * (1.0 + std::fabs(mid)) && std::fabs(fm) <= opt.residual_tol)
            break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// All real solutions of t = h + d*phi_J(t), classified by comparing |h|
/// against the closed form h*(J) (tolerance opt.class_tol), never by root
/// coalescence.  Roots are isolated on the monotone pieces of
/// t -> h + d*phi_J(t) - t, which are split at +-t*(J) when J > J_c, and
/// found by bisection; the tangent root at |h| = h*(J) > 0 is returned as
/// the closed-form +-t*(J).  All roots lie in |t| <= |h| + d*J + 1.
inline FixedPointSolution solve_fixed_points(const ModelParams& p,
                                             const SolverOptions& opt = {}) {
    p.validate();
    const double hs = h_star(p.d, p.J);
    const double B = std::fabs(p.h) + p.d * p.J + 1.0;

    FixedPointSolution sol;
    if (hs == 0.0) {
        // J <= J_c: the map is a contraction on each side, single crossing.
        sol.cls = RootClass::Unique;
        sol.roots = {detail::bisect_root(p, -B, B, opt)};
    } else {
        const double t1 = t_star(p.d, p.J);
        const double gap = std::fabs(p.h) - hs;
        if (gap > opt.class_tol) {
            sol.cls = RootClass::Unique;
            sol.roots = {p.h > 0.0 ? detail::bisect_root(p, t1, B, opt)
                                   : detail::bisect_root(p, -B, -t1, opt)};
        } else if (gap >= -opt.class_tol) {
            sol.cls = RootClass::TangentPair;
            if (p.h < 0.0)
                sol.roots = {detail::bisect_root(p, -B, -t1, opt), t1};
            else
                sol.roots = {-t1, detail::bisect_root(p, t1, B, opt)};
        } else {
            sol.cls = RootClass::Triple;
            sol.roots = {detail::bisect_root(p, -B, -t1, opt),
                         detail::bisect_root(p, -t1, t1, opt),
                         detail::bisect_root(p, t1, B, opt)};
        }
    }

    const std::size_t expected =
        sol.cls == RootClass::Unique ? 1 : (sol.cls == RootClass::TangentPair ? 2 : 3);
    if (sol.roots.size() != expected || !std::is_sorted(sol.roots.begin(), sol.roots.end()))
        throw InternalError("fixed-point solver: root count disagrees with classification");

    sol.residuals.reserve(sol.roots.size());
    for (double t : sol.roots)
        sol.residuals.push_back(std::fabs(t - p.h - p.d * phi(p.J, t)));
    return sol;
}

/// t_+ (largest root, the plus measure) or t_- (smallest, the minus measure).
inline double t_extreme(const ModelParams& p, Sign sign,
                        const SolverOptions& opt = {}) {
    const FixedPointSolution sol = solve_fixed_points(p, opt);
    return sign == Sign::Plus ? sol.roots.back() : sol.roots.front();
}

}  // namespace treedom

#endif
