#pragma once

#include <vector>

#include "pslet/expansion.hpp"
#include "pslet/real.hpp"

namespace pslet {

// Rational approximant P_N(u)/Q_M(u) with Q normalized to Q(0) = 1.
struct PadeApproximant {
    std::vector<real> p;  // numerator, degree N
    std::vector<real> q;  // denominator, degree M, q[0] = 1
    int N = 0;
    int M = 0;
};

// Match the first N+M+1 Taylor coefficients c[0..N+M] exactly.
PadeApproximant pade_fit(const std::vector<real>& c, int N, int M);

real pade_eval(const PadeApproximant& a, const real& u);

// lbar^2 E^(-2) + P_N/Q_M evaluated at u = 1/lbar over the correction series
// E^(0)..E^(N+M). When the denominator fit degenerates (all-zero corrections,
// say), the denominator degree is stepped down until the fit succeeds.
real energy_pade(const PsletExpansion& e, int N = 4, int M = 4);

}  // namespace pslet
