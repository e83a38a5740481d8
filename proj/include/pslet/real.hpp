#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <atomic>
#include <string>
#include <string_view>

namespace pslet {

// Variable-precision real. Precision is a process-wide setting expressed in
// decimal digits; every freshly constructed value picks it up. 40 digits is
// enough headroom for eighth-order expansions quoted to 9 figures.
using real = boost::multiprecision::mpfr_float;

inline constexpr int kDefaultDigits = 40;
inline constexpr int kMinDigits = 10;

namespace detail {
inline std::atomic<int>& configured_digits_slot() {
    static std::atomic<int> slot{kDefaultDigits};
    return slot;
}
}  // namespace detail

inline int working_digits() {
    return static_cast<int>(real::default_precision());
}

// explicit precision choice; remembered so automatic raises have a baseline
inline void set_working_digits(int digits) {
    if (digits < kMinDigits) digits = kMinDigits;
    detail::configured_digits_slot().store(digits);
    real::default_precision(static_cast<unsigned>(digits));
}

inline int configured_digits() { return detail::configured_digits_slot().load(); }

// monotone bump for deep expansions; keeps the configured baseline intact
inline void raise_working_digits(int target) {
    if (target > working_digits()) real::default_precision(static_cast<unsigned>(target));
}

// 10^-(working_digits - headroom): the "zero to working precision" yardstick.
inline real working_tol(int headroom = 6) {
    return pow(real(10), -(working_digits() - headroom));
}

// Parse a decimal literal at full working precision. Going through double
// first would poison values like 0.1 with binary roundoff.
inline real parse_real(std::string_view text) {
    return real(std::string(text));
}

inline double to_double(const real& x) {
    return x.convert_to<double>();
}

// Deterministic decimal rendering with a fixed number of significant digits.
std::string format_real(const real& x, int significant);

}  // namespace pslet
