#include <doctest.h>

#include "pslet/error.hpp"
#include "pslet/leading_order.hpp"

using namespace pslet;

TEST_CASE("coulomb closed forms: r0 = (l + nr + 1)^2, lbar = l + nr + 1") {
    auto p = PotentialModel::coulomb();
    for (int l = 0; l <= 4; ++l) {
        for (int nr = 0; nr <= 4; ++nr) {
            auto sol = solve_leading_order(p, {l, nr});
            const real n = real(l + nr + 1);
            CHECK(abs(sol.omega - 1) < working_tol(8));
            CHECK(abs(sol.r0 - n * n) < working_tol(8) * n * n);
            CHECK(abs(sol.lbar - n) < working_tol(8));
            CHECK(abs(sol.beta + nr + 1) < working_tol(8));
            const real lead = sol.lbar * sol.lbar * sol.e_minus2;
            CHECK(abs(lead + 1 / (2 * n * n)) < working_tol(8));
            CHECK_FALSE(sol.multi_root);
        }
    }
}

TEST_CASE("harmonic closed forms: omega = 2, lbar = l + 2nr + 3/2") {
    auto p = PotentialModel::harmonic();
    for (int l = 0; l <= 3; ++l) {
        for (int nr = 0; nr <= 3; ++nr) {
            auto sol = solve_leading_order(p, {l, nr});
            const real lb = l + 2 * nr + real(3) / 2;
            CHECK(abs(sol.omega - 2) < working_tol(8));
            CHECK(abs(sol.lbar - lb) < working_tol(8));
            CHECK(abs(sol.r0 * sol.r0 - lb) < working_tol(8));
            const real lead = sol.lbar * sol.lbar * sol.e_minus2;
            CHECK(abs(lead - lb) < working_tol(8) * lb);
        }
    }
}

TEST_CASE("residual vanishes at the reported radius and omega matches") {
    auto p = PotentialModel::cutoff(parse_real("10"));
    StateSpec s{1, 1};  // 3p
    auto sol = solve_leading_order(p, s);
    CHECK(abs(r0_residual(p, s, sol.r0)) < working_tol(3) * sol.lbar);
    CHECK(abs(omega_at(p, sol.r0) - sol.omega) < working_tol(8));
    CHECK(sol.lbar > s.l);  // beta is negative for binding states
}

TEST_CASE("strong cutoff leading term approximates the full energy") {
    // alpha = 200 ground state: the zeroth-order term alone lands within a
    // quarter percent of the full eighth-order value (measured 2.06e-3)
    auto sol = solve_leading_order(PotentialModel::cutoff(real(200)), {0, 0});
    const real lead = sol.lbar * sol.lbar * sol.e_minus2;
    CHECK(abs(sol.r0 - parse_real("47.12618168752368561335787159852310565797")) <
          parse_real("1e-30"));
    const real ref = parse_real("-0.003653176");
    CHECK(abs(lead - ref) / abs(ref) < parse_real("2.5e-3"));
    CHECK(abs(lead - ref) / abs(ref) > parse_real("1.5e-3"));
}

TEST_CASE("laser omega obeys its closed form") {
    // for V = -(r^2+a^2)^(-1/2): omega = sqrt((r^2 + 4a^2)/(r^2 + a^2))
    const real a = parse_real("7.3"), r = parse_real("11.9");
    auto p = PotentialModel::laser(a);
    const real want = sqrt((r * r + 4 * a * a) / (r * r + a * a));
    CHECK(abs(omega_at(p, r) - want) < working_tol(6));
    // and for the cutoff form: omega = sqrt((r + 3a)/(r + a))
    auto c = PotentialModel::cutoff(a);
    const real wantc = sqrt((r + 3 * a) / (r + a));
    CHECK(abs(omega_at(c, r) - wantc) < working_tol(6));
}

TEST_CASE("nonbinding points are rejected") {
    CHECK_THROWS_AS(solve_leading_order(PotentialModel::coulomb(), {-1, 0}), Error);
    // harmonic at any r binds; the residual helper rejects V' <= 0 though
    CHECK_THROWS_AS(omega_at(PotentialModel::harmonic(), real(0)), Error);
}
