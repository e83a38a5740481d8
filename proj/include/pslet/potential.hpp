#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pslet/real.hpp"

namespace pslet {

// Radial potentials handled by the engine. The truncated family is
// V(r) = -(r^b + alpha^b)^(-1/b); b = 1 is the cutoff Coulomb form
// -1/(r + alpha) and b = 2 the laser-dressed form -1/sqrt(r^2 + alpha^2).
// coulomb (-1/r) and harmonic (r^2/2) are the exactly solvable checks.
enum class PotentialKind { cutoff, laser, family, coulomb, harmonic };

struct PotentialModel {
    PotentialKind kind = PotentialKind::coulomb;
    real alpha = real(0);
    int b = 1;  // family exponent, meaningful for kind == family only

    static PotentialModel cutoff(const real& alpha);
    static PotentialModel laser(const real& alpha);
    static PotentialModel family(int b, const real& alpha);
    static PotentialModel coulomb();
    static PotentialModel harmonic();
};

real potential_value(const PotentialModel& p, const real& r);
double potential_value_d(const PotentialModel& p, double r);

// Derivatives V(r0), V'(r0), ..., V^(n_max)(r0) obtained in one shot from the
// closed-form expansion of V(r0 + t); no numerical differentiation involved.
struct DerivativeTable {
    real r0;
    std::vector<real> derivs;  // derivs[k] = V^(k)(r0)
    int order() const { return static_cast<int>(derivs.size()) - 1; }
    const real& operator[](int k) const { return derivs.at(static_cast<size_t>(k)); }
};

DerivativeTable potential_derivatives(const PotentialModel& p, const real& r0, int n_max);

int series_order_cap();
void set_series_order_cap(int cap);

// "cutoff:0.1", "laser:1.0", "family:3:0.5", "coulomb", "harmonic"
PotentialModel parse_potential_spec(std::string_view text);
std::string potential_spec_string(const PotentialModel& p);

}  // namespace pslet
