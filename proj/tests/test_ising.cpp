#include <cmath>
#include <vector>

#include "doctest.h"
#include "treedom/chain.hpp"
#include "treedom/ising.hpp"

using namespace treedom;

namespace {

// Independent maximizer for d*phi_J(t) - t over t >= 0 (coarse grid + ternary
// refinement); used to cross-check the closed forms.
struct MaxResult {
    double arg;
    double val;
};

MaxResult maximize_gap(int d, double J) {
    auto f = [&](double t) { return d * phi(J, t) - t; };
    double best_t = 0.0, best = f(0.0);
    const double hi = d * J + 1.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = hi * i / 4000.0;
        const double v = f(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - hi / 4000.0);
    double up = std::min(hi, best_t + hi / 4000.0);
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (up - lo) / 3.0;
        const double m2 = up - (up - lo) / 3.0;
        if (f(m1) < f(m2))
            lo = m1;
        else
            up = m2;
    }
    const double t = 0.5 * (lo + up);
    return {t, f(t)};
}

}  // namespace

TEST_CASE("phi closed form") {
    CHECK(phi(1.0, 0.0) == 0.0);
    CHECK(phi(1.0, 0.5) == doctest::Approx(0.36766283202775961).epsilon(1e-14));
    CHECK(std::fabs(phi(1.0, 50.0) - 1.0) < 1e-12);   // phi_J -> J
    CHECK(std::fabs(phi(2.5, 1e6) - 2.5) < 1e-12);    // stable far out
    CHECK(std::isfinite(phi(3.0, -1e6)));
    CHECK_THROWS_AS(phi(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(phi(1.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(phi(1.0, INFINITY), std::domain_error);
}

TEST_CASE("phi oddness, bounds, monotonicity") {
    for (double J : {0.2, 0.7, 1.3, 2.4}) {
        double prev = -INFINITY;
        for (double t = -8.0; t <= 8.0; t += 0.25) {
            CHECK(std::fabs(phi(J, -t) + phi(J, t)) < 1e-13);
            if (t > 0.0) {
                CHECK(phi(J, t) > 0.0);
                CHECK(phi(J, t) < J);
            }
            const double v = phi(J, t);
            CHECK(v > prev);  // strictly increasing in t
            prev = v;
        }
    }
}

TEST_CASE("phi_partials") {
    const PhiPartials at0 = phi_partials(1.0, 0.0);
    CHECK(at0.dphi_dJ == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at0.dphi_dt == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));

    // sum telescopes to tanh(J+t)
    for (double J : {0.3, 1.0, 2.2})
        for (double t = -3.0; t <= 3.0; t += 0.5) {
            const PhiPartials g = phi_partials(J, t);
            CHECK(g.dphi_dJ + g.dphi_dt == doctest::Approx(std::tanh(J + t)).epsilon(1e-14));
        }

    // central finite differences
    const double J = 0.5, t = 0.3, e = 1e-6;
    const PhiPartials g = phi_partials(J, t);
    CHECK(g.dphi_dt == doctest::Approx((phi(J, t + e) - phi(J, t - e)) / (2 * e)).epsilon(1e-8));
    CHECK(g.dphi_dJ == doctest::Approx((phi(J + e, t) - phi(J - e, t)) / (2 * e)).epsilon(1e-8));
}

TEST_CASE("critical coupling") {
    CHECK(critical_coupling(2) == doctest::Approx(0.54930614433405485).epsilon(1e-15));
    CHECK(critical_coupling(4) == doctest::Approx(0.25541281188299534).epsilon(1e-15));
    for (int d = 2; d <= 12; ++d)
        CHECK(std::fabs(std::tanh(critical_coupling(d)) - 1.0 / d) < 1e-14);
    CHECK_THROWS_AS(critical_coupling(1), std::domain_error);
}

TEST_CASE("h_star and t_star closed forms") {
    CHECK(h_star(4, 0.2) == 0.0);
    CHECK(t_star(4, 0.2) == 0.0);
    CHECK(h_star(4, 1.0) == doctest::Approx(1.8877048505315046).epsilon(1e-13));
    CHECK(t_star(4, 1.0) == doctest::Approx(1.5327191432612136).epsilon(1e-13));

    for (int d : {2, 3, 4, 5}) {
        for (double J : {0.3, 0.6, 1.0, 1.7, 2.8}) {
            const double hs = h_star(d, J);
            const double ts = t_star(d, J);
            CHECK(hs >= 0.0);
            // h* equals the function value at its argmax
            CHECK(std::fabs(d * phi(J, ts) - ts - hs) < 1e-10);
            if (J > critical_coupling(d)) {
                // stationarity at the argmax
                CHECK(std::fabs(d * phi_partials(J, ts).dphi_dt - 1.0) < 1e-9);
                // independent grid+refine maximum
                const MaxResult m = maximize_gap(d, J);
                CHECK(std::fabs(m.val - hs) < 1e-9);
                CHECK(std::fabs(m.arg - ts) < 1e-6);
            } else {
                CHECK(maximize_gap(d, J).val == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("fixed point solver classification") {
    const FixedPointSolution u = solve_fixed_points({5, 1.5, 8.0});
    CHECK(u.cls == RootClass::Unique);
    CHECK(u.roots.size() == 1);

    const FixedPointSolution tr = solve_fixed_points({5, 1.5, 0.0});
    CHECK(tr.cls == RootClass::Triple);
    REQUIRE(tr.roots.size() == 3);
    CHECK(std::fabs(tr.roots[1]) < 1e-12);                     // odd symmetry
    CHECK(tr.roots[2] == doctest::Approx(-tr.roots[0]).epsilon(1e-12));

    const FixedPointSolution sub = solve_fixed_points({4, 0.2, 0.0});
    CHECK(sub.cls == RootClass::Unique);
    REQUIRE(sub.roots.size() == 1);
    CHECK(std::fabs(sub.roots[0]) < 1e-12);

    // tangency constructed from the closed form
    const double hs = h_star(4, 1.0);
    const FixedPointSolution tg = solve_fixed_points({4, 1.0, -hs});
    CHECK(tg.cls == RootClass::TangentPair);
    REQUIRE(tg.roots.size() == 2);
    CHECK(tg.roots[1] == doctest::Approx(t_star(4, 1.0)).epsilon(1e-13));
    CHECK(tg.roots[0] < -t_star(4, 1.0));
    for (double r : tg.residuals)
        CHECK(r < 1e-10);
}

TEST_CASE("root-count law and residuals on a small grid") {
    for (int d : {2, 4}) {
        for (double J = 0.15; J <= 3.0; J += 0.285) {
            for (double h = -4.0; h <= 4.0; h += 0.5) {
                const FixedPointSolution s = solve_fixed_points({d, J, h});
                const double hs = h_star(d, J);
                if (std::fabs(h) > hs + 1e-9 || hs == 0.0)
                    CHECK(s.cls == RootClass::Unique);
                else if (std::fabs(h) < hs - 1e-9)
                    CHECK(s.cls == RootClass::Triple);
                for (double r : s.residuals)
                    CHECK(r <= 1e-10);
                for (std::size_t i = 1; i < s.roots.size(); ++i)
                    CHECK(s.roots[i] > s.roots[i - 1]);
            }
        }
    }
}

TEST_CASE("t_extreme") {
    CHECK(t_extreme({4, 0.2, 0.0}, Sign::Plus) == doctest::Approx(0.0).epsilon(1e-12));
    const double tp = t_extreme({5, 1.5, 0.0}, Sign::Plus);
    const double tm = t_extreme({5, 1.5, 0.0}, Sign::Minus);
    CHECK(tp > 0.0);
    CHECK(tm == doctest::Approx(-tp).epsilon(1e-12));

    // monotone in h
    double prev = -INFINITY;
    for (double h = -3.0; h <= 3.0; h += 0.2) {
        const double t = t_extreme({3, 1.2, h}, Sign::Plus);
        CHECK(t >= prev - 1e-12);
        prev = t;
    }
}

TEST_CASE("t_extreme right-continuity and jump at -h*") {
    const int d = 4;
    const double J = 1.0;
    const double hs = h_star(d, J);
    const double step = 1e-7;
    const double at = t_extreme({d, J, -hs}, Sign::Plus);
    const double right = t_extreme({d, J, -hs + step}, Sign::Plus);
    const double left = t_extreme({d, J, -hs - step}, Sign::Plus);
    CHECK(std::fabs(right - at) < 5e-3);  // right-continuous (sqrt-type approach)
    const FixedPointSolution s = solve_fixed_points({d, J, -hs});
    const double jump = s.roots.back() - s.roots.front();
    CHECK(std::fabs((right - left) - jump) < 5e-3);
    CHECK(right - left > 0.5 * jump);

    // continuous at a generic point
    const double a = t_extreme({d, J, 0.7 + step}, Sign::Plus);
    const double b = t_extreme({d, J, 0.7 - step}, Sign::Plus);
    CHECK(std::fabs(a - b) < 1e-5);
}

TEST_CASE("transition matrix") {
    const TransitionMatrix2 P = transition_matrix(1.0, 0.0);
    CHECK(P.p_pp == doctest::Approx(0.88079707797788244).epsilon(1e-14));
    CHECK(P.p_mp == doctest::Approx(1.0 - 0.88079707797788244).epsilon(1e-13));

    for (double J : {0.4, 1.0, 2.3})
        for (double t : {-12.0, -5.0, -0.8, 0.0, 0.3, 2.0, 12.0}) {
            const TransitionMatrix2 M = transition_matrix(J, t);
            CHECK(std::fabs(M.p_mm + M.p_mp - 1.0) < 1e-14);
            CHECK(std::fabs(M.p_pm + M.p_pp - 1.0) < 1e-14);
            CHECK(M.p_mp < M.p_pp);
            // the original display, rewritten: e^{t-J}/(2cosh(J-t)) etc.
            const double disp_mp = std::exp(t - J) / (2.0 * std::cosh(J - t));
            const double disp_pp = std::exp(J + t) / (2.0 * std::cosh(J + t));
            if (std::fabs(t) < 10.0) {
                CHECK(std::fabs(M.p_mp - disp_mp) < 1e-13);
                CHECK(std::fabs(M.p_pp - disp_pp) < 1e-13);
            }
            CHECK(M.p_mm > 0.0);
            CHECK(M.p_pm > 0.0);
        }

    // spin-flip symmetry at t = 0
    const TransitionMatrix2 S = transition_matrix(1.7, 0.0);
    CHECK(S.p_mp == doctest::Approx(1.0 - S.p_pp).epsilon(1e-14));
    CHECK_THROWS_AS(transition_matrix(-1.0, 0.0), std::domain_error);
}

TEST_CASE("stationary distribution") {
    const Distribution2 nu = stationary(transition_matrix(1.0, 0.0));
    CHECK(nu.prob_plus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(nu.prob_minus == doctest::Approx(0.5).epsilon(1e-14));

    for (double J : {0.5, 1.0})
        for (double t : {-2.0, 0.1, 1.4}) {
            const TransitionMatrix2 P = transition_matrix(J, t);
            const Distribution2 v = stationary(P);
            CHECK(std::fabs(v.prob_minus + v.prob_plus - 1.0) < 1e-14);
            // nu P = nu
            const double nm = v.prob_minus * P.p_mm + v.prob_plus * P.p_pm;
            const double np = v.prob_minus * P.p_mp + v.prob_plus * P.p_pp;
            CHECK(std::fabs(nm - v.prob_minus) < 1e-13);
            CHECK(std::fabs(np - v.prob_plus) < 1e-13);
        }

    CHECK(stationary(transition_matrix(1.0, 2.0)).prob_plus > 0.5);

    TransitionMatrix2 bad;
    bad.p_mm = 1.0;
    bad.p_mp = 0.0;
    bad.p_pm = 0.3;
    bad.p_pp = 0.7;
    CHECK_THROWS_AS(stationary(bad), std::domain_error);
}
