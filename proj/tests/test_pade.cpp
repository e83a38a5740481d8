#include <doctest.h>

#include <random>
#include <vector>

#include "pslet/error.hpp"
#include "pslet/expansion.hpp"
#include "pslet/labels.hpp"
#include "pslet/pade.hpp"

using namespace pslet;

namespace {

// Taylor coefficients of p(u)/q(u) through degree K, q[0] = 1
std::vector<real> rational_taylor(const std::vector<real>& p, const std::vector<real>& q, int K) {
    std::vector<real> c(static_cast<size_t>(K) + 1, real(0));
    for (int k = 0; k <= K; ++k) {
        real acc = k < static_cast<int>(p.size()) ? p[static_cast<size_t>(k)] : real(0);
        for (int j = 1; j < static_cast<int>(q.size()) && j <= k; ++j)
            acc -= q[static_cast<size_t>(j)] * c[static_cast<size_t>(k - j)];
        c[static_cast<size_t>(k)] = acc;
    }
    return c;
}

}  // namespace

TEST_CASE("random rational functions are recovered coefficient for coefficient") {
    std::mt19937 rng(77041u);
    std::uniform_real_distribution<double> body(-2.0, 2.0);
    std::uniform_real_distribution<double> lead(0.25, 2.0);
    std::uniform_int_distribution<int> order(0, 4);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int trial = 0; trial < 100; ++trial) {
        const int N = order(rng);
        const int M = order(rng);
        CAPTURE(trial);
        CAPTURE(N);
        CAPTURE(M);

        std::vector<real> p(static_cast<size_t>(N) + 1), q(static_cast<size_t>(M) + 1);
        for (int i = 0; i < N; ++i) p[static_cast<size_t>(i)] = real(body(rng));
        p[static_cast<size_t>(N)] = real((coin(rng) ? 1 : -1) * lead(rng));
        q[0] = real(1);
        for (int j = 1; j < M; ++j) q[static_cast<size_t>(j)] = real(body(rng));
        if (M > 0) q[static_cast<size_t>(M)] = real((coin(rng) ? 1 : -1) * lead(rng));

        const auto c = rational_taylor(p, q, N + M);
        const auto fit = pade_fit(c, N, M);

        REQUIRE(fit.p.size() == p.size());
        REQUIRE(fit.q.size() == q.size());
        for (size_t i = 0; i < p.size(); ++i) CHECK(abs(fit.p[i] - p[i]) < real("1e-30"));
        for (size_t j = 0; j < q.size(); ++j) CHECK(abs(fit.q[j] - q[j]) < real("1e-30"));
    }
}

TEST_CASE("fit rejects malformed input") {
    const std::vector<real> c{real(1), real(1), real(1)};
    CHECK_THROWS_AS((void)pade_fit(c, 2, 2), Error);   // needs 5 coefficients
    CHECK_THROWS_AS((void)pade_fit(c, -1, 1), Error);
    CHECK_THROWS_AS((void)pade_fit(c, 1, -1), Error);
    try {
        (void)pade_fit(c, 2, 2);
    } catch (const Error& e) {
        CHECK(e.code() == errc::bad_input);
    }
}

TEST_CASE("geometric series reproduces its generating function and its pole") {
    // 1/(1-u) has constant Taylor coefficients
    const std::vector<real> c{real(1), real(1), real(1)};
    const auto fit = pade_fit(c, 1, 1);
    CHECK(abs(fit.q[1] + 1) < real("1e-35"));
    CHECK(abs(fit.p[0] - 1) < real("1e-35"));
    CHECK(abs(fit.p[1]) < real("1e-35"));

    CHECK(abs(pade_eval(fit, parse_real("0.5")) - 2) < real("1e-35"));
    CHECK(abs(pade_eval(fit, parse_real("-1")) - parse_real("0.5")) < real("1e-35"));
    CHECK_THROWS_AS((void)pade_eval(fit, real(1)), Error);
    try {
        (void)pade_eval(fit, real(1));
    } catch (const Error& e) {
        CHECK(e.code() == errc::pole_at_evaluation);
    }
}

TEST_CASE("degenerate denominator systems are reported") {
    // an exactly zero series cannot support any denominator
    const std::vector<real> zero(9, real(0));
    CHECK_THROWS_AS((void)pade_fit(zero, 4, 4), Error);
    try {
        (void)pade_fit(zero, 4, 4);
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate_pade);
    }
    // a geometric series of effective type [0/1] degenerates at higher M too
    const std::vector<real> geom(5, real(1));
    CHECK_THROWS_AS((void)pade_fit(geom, 2, 2), Error);
}

TEST_CASE("all-zero correction series resums to the exact level") {
    const auto e = compute_expansion(PotentialModel::coulomb(), StateSpec{0, 0}, 8);
    CHECK(abs(energy_pade(e, 4, 4) - parse_real("-0.5")) < real("1e-20"));
    CHECK(abs(energy_pade(e, 4, 4) - energy_partial_sum(e, 8)) < real("1e-20"));

    const auto h = compute_expansion(PotentialModel::harmonic(), StateSpec{2, 1}, 8);
    CHECK(abs(energy_pade(h, 4, 4) - parse_real("5.5")) < real("1e-20"));
}

TEST_CASE("published resummed energies are reproduced") {
    struct Case {
        const char* pot;
        const char* state;
        const char* e44;
    };
    const Case cases[] = {
        {"cutoff:0.1", "1s", "-0.387922157"},
        {"cutoff:1.0", "2p", "-0.082862452"},
        {"laser:1.0", "2s", "-0.095048845"},
        {"laser:10", "4d", "-0.021412537"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.pot);
        CAPTURE(c.state);
        const auto p = parse_potential_spec(c.pot);
        const auto e = compute_expansion(p, parse_state(c.state), 8);
        CHECK(abs(energy_pade(e, 4, 4) - parse_real(c.e44)) < real("1e-9"));
    }
}

TEST_CASE("approximant-order stability tracks the effective expansion parameter") {
    // At strong truncation the high-(l, nr) cells are stable to ten digits
    // across approximant orders; the 1s cells sit at the smallest effective
    // angular momentum (lbar about 1.3) and their resummations spread at the
    // 1e-7 level, matching the 5e-8 gap between the partial sum and the [4/4]
    // value those cells show in print.
    struct Case {
        const char* pot;
        const char* state;
        const char* bound;
    };
    const Case cases[] = {
        {"laser:200", "4d", "1e-10"},
        {"cutoff:200", "4f", "1e-10"},
        {"cutoff:200", "3p", "1e-10"},
        {"cutoff:50", "4f", "1e-10"},
        {"cutoff:50", "1s", "1e-6"},
        {"cutoff:200", "1s", "1e-7"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.pot);
        CAPTURE(c.state);
        const auto p = parse_potential_spec(c.pot);
        const auto e = compute_expansion(p, parse_state(c.state), 8);
        CHECK(abs(energy_pade(e, 4, 4) - energy_pade(e, 3, 3)) < parse_real(c.bound));
    }
}

TEST_CASE("resummation needs enough computed orders") {
    const auto e = compute_expansion(PotentialModel::coulomb(), StateSpec{1, 0}, 4);
    CHECK_THROWS_AS((void)energy_pade(e, 4, 4), Error);
    try {
        (void)energy_pade(e, 4, 4);
    } catch (const Error& err) {
        CHECK(err.code() == errc::order_out_of_range);
    }
    CHECK(abs(energy_pade(e, 2, 2) - parse_real("-0.125")) < real("1e-20"));
}
