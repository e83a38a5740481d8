#pragma once

#include <vector>

#include "pslet/real.hpp"

namespace pslet {

// Dense polynomial over the working reals, coeffs[k] multiplying x^k.
// Trailing zeros are stripped; the zero polynomial keeps a single 0 entry.
class Poly {
  public:
    Poly() : coeffs_{real(0)} {}
    explicit Poly(std::vector<real> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Poly monomial(int degree, const real& c = real(1));

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const;
    const std::vector<real>& coeffs() const { return coeffs_; }

    // coefficient of x^k, 0 beyond the stored degree
    real coeff(int k) const;
    void set_coeff(int k, const real& c);

    Poly derivative() const;
    real eval(const real& x) const;
    real max_abs_coeff() const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    friend Poly operator*(const real& s, Poly p);

  private:
    void normalize();
    std::vector<real> coeffs_;
};

// Truncated power series a0 + a1 t + ... + aK t^K. The order K is part of the
// value: arithmetic keeps the smaller K of the operands, so truncation error
// never masquerades as a valid high-order coefficient.
class TruncSeries {
  public:
    TruncSeries() : coeffs_{real(0)} {}
    explicit TruncSeries(std::vector<real> coeffs);
    // series for the constant c, carried to order K
    TruncSeries(const real& c, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<real>& coeffs() const { return coeffs_; }
    real coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    real& at(int k) { return coeffs_.at(static_cast<size_t>(k)); }

    TruncSeries truncated(int new_order) const;

  private:
    std::vector<real> coeffs_;
};

TruncSeries ts_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries ts_scale(const real& s, const TruncSeries& a);
TruncSeries ts_mul(const TruncSeries& a, const TruncSeries& b);

// (a(t))^(num/den) via the binomial series around a0. Requires a0 > 0 for
// fractional exponents; exact through the truncation order for integer ones.
TruncSeries ts_pow(const TruncSeries& a, long num, long den = 1);

}  // namespace pslet
