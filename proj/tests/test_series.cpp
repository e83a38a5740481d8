#include <doctest.h>

#include <random>

#include "pslet/error.hpp"
#include "pslet/series.hpp"

using namespace pslet;

namespace {

real tol() { return working_tol(4); }

TruncSeries random_series(std::mt19937& rng, int order, bool positive_head) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<real> c(static_cast<size_t>(order) + 1);
    for (auto& x : c) x = real(dist(rng));
    if (positive_head) c[0] = real(1) + abs(c[0]);
    return TruncSeries(std::move(c));
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
    Poly a(std::vector<real>{real(1), real(2)});       // 1 + 2x
    Poly b(std::vector<real>{real(0), real(-2)});      // -2x
    Poly sum = Poly(std::vector<real>{real(0), real(2)}) + b;
    CHECK(sum.is_zero());
    CHECK(sum.degree() == 0);

    Poly prod = a * a;  // 1 + 4x + 4x^2
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 4);
    CHECK(prod.coeff(2) == 4);
    CHECK(prod.degree() == 2);

    Poly d = prod.derivative();  // 4 + 8x
    CHECK(d.coeff(0) == 4);
    CHECK(d.coeff(1) == 8);

    CHECK(a.eval(real(3)) == 7);
    CHECK(Poly().derivative().is_zero());
}

TEST_CASE("series multiplication tracks the shorter operand") {
    TruncSeries a(std::vector<real>{real(1), real(1), real(1)});
    TruncSeries b(std::vector<real>{real(1), real(-1)});
    auto c = ts_mul(a, b);
    CHECK(c.order() == 1);
    CHECK(c.coeff(0) == 1);
    CHECK(c.coeff(1) == 0);
}

TEST_CASE("series square of the exponential prefix") {
    // (1 + t + t^2/2 + t^3/6)^2 begins 1, 2, 2, 4/3
    TruncSeries e(std::vector<real>{real(1), real(1), real(1) / 2, real(1) / 6});
    auto sq = ts_mul(e, e);
    CHECK(abs(sq.coeff(0) - 1) < tol());
    CHECK(abs(sq.coeff(1) - 2) < tol());
    CHECK(abs(sq.coeff(2) - 2) < tol());
    CHECK(abs(sq.coeff(3) - real(4) / 3) < tol());
}

TEST_CASE("binomial series for an inverse square root") {
    // (4 + t)^(-1/2) = 1/2 - t/16 + 3 t^2/256 - ...
    TruncSeries base(std::vector<real>{real(4), real(1), real(0)});
    auto r = ts_pow(base, -1, 2);
    CHECK(abs(r.coeff(0) - real(1) / 2) < tol());
    CHECK(abs(r.coeff(1) + real(1) / 16) < tol());
    CHECK(abs(r.coeff(2) - real(3) / 256) < tol());
}

TEST_CASE("integer power equals repeated multiplication") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_series(rng, 8, true);
        auto cubed = ts_pow(a, 3);
        auto manual = ts_mul(a, ts_mul(a, a));
        for (int k = 0; k <= 8; ++k) CHECK(abs(cubed.coeff(k) - manual.coeff(k)) < tol());
    }
}

TEST_CASE("fractional power round trip") {
    std::mt19937 rng(11);
    for (long p : {2L, 3L, 5L}) {
        auto a = random_series(rng, 10, true);
        auto back = ts_pow(ts_pow(a, 1, p), p);
        for (int k = 0; k <= 10; ++k) CHECK(abs(back.coeff(k) - a.coeff(k)) < tol());
    }
}

TEST_CASE("inverse power cancels") {
    std::mt19937 rng(13);
    auto a = random_series(rng, 9, true);
    auto prod = ts_mul(a, ts_pow(a, -1));
    CHECK(abs(prod.coeff(0) - 1) < tol());
    for (int k = 1; k <= 9; ++k) CHECK(abs(prod.coeff(k)) < tol());
}

TEST_CASE("series multiplication commutes") {
    std::mt19937 rng(17);
    auto a = random_series(rng, 12, false);
    auto b = random_series(rng, 12, false);
    auto ab = ts_mul(a, b), ba = ts_mul(b, a);
    for (int k = 0; k <= 12; ++k) CHECK(ab.coeff(k) == ba.coeff(k));
}

TEST_CASE("fractional power of a nonpositive head is rejected") {
    TruncSeries bad(std::vector<real>{real(-1), real(1)});
    CHECK_THROWS_AS(ts_pow(bad, 1, 2), Error);
    TruncSeries zero_head(std::vector<real>{real(0), real(1)});
    CHECK_THROWS_AS(ts_pow(zero_head, -1), Error);
}

TEST_CASE("polynomial powers terminate exactly") {
    // (1 + t)^4 must cut off after binom(4,4) even at high truncation order
    TruncSeries a(std::vector<real>{real(1), real(1), real(0), real(0), real(0), real(0)});
    auto r = ts_pow(a, 4);
    CHECK(r.coeff(0) == 1);
    CHECK(r.coeff(1) == 4);
    CHECK(r.coeff(2) == 6);
    CHECK(r.coeff(3) == 4);
    CHECK(r.coeff(4) == 1);
    CHECK(r.coeff(5) == 0);
}
