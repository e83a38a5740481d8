#pragma once

#include "pslet/potential.hpp"
#include "pslet/real.hpp"

namespace pslet {

// Radial state: orbital angular momentum l and node count nr. The usual
// principal quantum number is n = l + nr + 1.
struct StateSpec {
    int l = 0;
    int nr = 0;
};

// Zeroth-order data of the shifted-l expansion: the balance radius r0, the
// local oscillation frequency Omega, the angular shift beta, the effective
// angular momentum lbar = l - beta, and the leading energy term.
struct LeadingOrderSolution {
    real r0;
    real omega;
    real beta;
    real lbar;
    real Q;          // lbar^2, frozen before the order-by-order recursion
    real e_minus2;   // E^(-2) = 1/(2 r0^2) + V(r0)/Q; the full leading term is lbar^2 * e_minus2
    bool multi_root = false;  // the radius equation had several admissible roots
};

// Omega(r) = sqrt(3 + r V''(r)/V'(r)) at a candidate radius
real omega_at(const PotentialModel& p, const real& r);

// Residual of the radius equation sqrt(r^3 V'(r)) = l + (1 + (2 nr + 1) Omega)/2.
// Roots of this in r are the candidate r0.
real r0_residual(const PotentialModel& p, const StateSpec& s, const real& r);

LeadingOrderSolution solve_leading_order(const PotentialModel& p, const StateSpec& s);

}  // namespace pslet
