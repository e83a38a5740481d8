#include "pslet/series.hpp"

#include <sstream>

#include "pslet/error.hpp"

namespace pslet {

std::string format_real(const real& x, int significant) {
    std::ostringstream os;
    os.precision(significant);
    os << x;
    return os.str();
}

Poly Poly::monomial(int degree, const real& c) {
    std::vector<real> v(static_cast<size_t>(degree) + 1, real(0));
    v.back() = c;
    return Poly(std::move(v));
}

bool Poly::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == 0;
}

real Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return real(0);
    return coeffs_[static_cast<size_t>(k)];
}

void Poly::set_coeff(int k, const real& c) {
    if (k >= static_cast<int>(coeffs_.size()))
        coeffs_.resize(static_cast<size_t>(k) + 1, real(0));
    coeffs_[static_cast<size_t>(k)] = c;
    normalize();
}

Poly Poly::derivative() const {
    if (coeffs_.size() == 1) return Poly();
    std::vector<real> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = real(static_cast<long>(k)) * coeffs_[k];
    return Poly(std::move(d));
}

real Poly::eval(const real& x) const {
    real acc = coeffs_.back();
    for (size_t k = coeffs_.size() - 1; k-- > 0;)
        acc = acc * x + coeffs_[k];
    return acc;
}

real Poly::max_abs_coeff() const {
    real m(0);
    for (const auto& c : coeffs_)
        if (abs(c) > m) m = abs(c);
    return m;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), real(0));
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), real(0));
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    normalize();
    return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return Poly();
    std::vector<real> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, real(0));
    for (size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
    return Poly(std::move(out));
}

Poly operator*(const real& s, Poly p) {
    for (auto& c : p.coeffs_) c *= s;
    p.normalize();
    return p;
}

void Poly::normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(real(0));
}

TruncSeries::TruncSeries(std::vector<real> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(real(0));
}

TruncSeries::TruncSeries(const real& c, int order) {
    if (order < 0) order = 0;
    coeffs_.assign(static_cast<size_t>(order) + 1, real(0));
    coeffs_[0] = c;
}

TruncSeries TruncSeries::truncated(int new_order) const {
    if (new_order >= order()) return *this;
    if (new_order < 0) new_order = 0;
    return TruncSeries(std::vector<real>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

TruncSeries ts_add(const TruncSeries& a, const TruncSeries& b) {
    int K = std::min(a.order(), b.order());
    std::vector<real> out(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) out[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
    return TruncSeries(std::move(out));
}

TruncSeries ts_scale(const real& s, const TruncSeries& a) {
    std::vector<real> out = a.coeffs();
    for (auto& c : out) c *= s;
    return TruncSeries(std::move(out));
}

TruncSeries ts_mul(const TruncSeries& a, const TruncSeries& b) {
    int K = std::min(a.order(), b.order());
    std::vector<real> out(static_cast<size_t>(K) + 1, real(0));
    for (int i = 0; i <= K; ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; i + j <= K; ++j)
            out[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    }
    return TruncSeries(std::move(out));
}

TruncSeries ts_pow(const TruncSeries& a, long num, long den) {
    if (den == 0) fail(errc::bad_input, "ts_pow exponent denominator is zero");
    if (den < 0) { den = -den; num = -num; }
    const int K = a.order();
    const real a0 = a.coeff(0);
    const bool integer_exp = (num % den == 0);
    if (a0 <= 0 && !(integer_exp && a0 != 0))
        fail(errc::nonpositive_leading_term,
             "series power needs a positive constant term, got " + format_real(a0, 6));

    // w = a/a0 - 1 has no constant term, so w^k only feeds coefficients >= k
    TruncSeries w = ts_scale(1 / a0, a);
    w.at(0) = real(0);

    TruncSeries acc(real(1), K);   // sum of binom(e,k) w^k
    TruncSeries wk(real(1), K);    // running w^k
    real binom(1);
    for (int k = 1; k <= K; ++k) {
        // binom(e, k) = binom(e, k-1) * (e - k + 1) / k, with e = num/den kept
        // as a ratio of exact integers per factor
        binom *= real(num - static_cast<long>(k - 1) * den) / (real(den) * k);
        if (binom == 0) break;  // nonnegative integer exponent: series terminates
        wk = ts_mul(wk, w);
        acc = ts_add(acc, ts_scale(binom, wk));
    }

    real front = integer_exp ? pow(a0, static_cast<int>(num / den))
                             : pow(a0, real(num) / real(den));
    return ts_scale(front, acc);
}

}  // namespace pslet
