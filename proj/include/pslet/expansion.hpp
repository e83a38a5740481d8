#pragma once

#include <vector>

#include "pslet/leading_order.hpp"
#include "pslet/potential.hpp"
#include "pslet/series.hpp"

namespace pslet {

// The scaled potential-plus-centrifugal expansion around the balance radius:
// v[n](x) multiplies eps^n in the oscillator-ordered Schroedinger equation,
// eps = 1/sqrt(lbar). B[n] is the x^(n+2) coefficient of v[n] (valid n >= 1),
// the only place where potential derivatives beyond V'' enter.
struct PerturbationSeries {
    std::vector<Poly> v;
    std::vector<real> B;
    int order = 0;
};

PerturbationSeries build_perturbation_series(const LeadingOrderSolution& sol,
                                             const PotentialModel& p, int order);

// Tables of the log-derivative and polynomial-prefactor coefficients.
// The wavefunction ansatz is Psi = F * exp(U) with
//   U'(x) = sum_n U_n(x) eps^n + sum_n G_n(x) eps^(n+1),
//   U_n odd with powers up to x^(2n+1):   D(n,m) multiplies x^(2m-1),
//   G_n even with powers up to x^(2n+2):  C(n,m) multiplies x^(2m),
//   F = x^nr + sum_{n} sum_{p<nr} a(n,p) x^p eps^n.
struct WavefunctionCoefficients {
    std::vector<std::vector<real>> D;  // D[n][m], m = 0..n+1 (D[n][0] = 0)
    std::vector<std::vector<real>> C;  // C[n][m], m = 0..n+1
    std::vector<std::vector<real>> a;  // a[n][p], p = 0..nr-1
    int nr = 0;
};

struct PsletExpansion {
    PotentialModel potential;
    StateSpec state;
    LeadingOrderSolution solution;
    int max_order = 0;   // highest computed energy order E^(max_order)
    int eps_orders = 0;  // log-derivative orders carried: 2 * (max_order + 1)
    // energies[j] = E^(j-2): leading E^(-2), the identically-zero E^(-1),
    // then the corrections E^(0) .. E^(max_order)
    std::vector<real> energies;
    WavefunctionCoefficients coeffs;
    // raw per-order polynomials, kept for residual checks and evaluation:
    // logd[k] = U_k + G_{k-1} (coefficient of eps^k in U'), fpoly[k] the
    // eps^k part of F (fpoly[0] includes the x^nr head)
    std::vector<Poly> logd;
    std::vector<Poly> fpoly;

    real energy(int n) const;  // n in [-2, max_order]
};

int expansion_order_cap();
void set_expansion_order_cap(int cap);

// working-precision target compute_expansion raises to for a given task;
// batch drivers should pre-raise to the maximum over their whole batch
// before handing rows to worker threads (the precision knob is process-wide)
int expansion_guard_digits(const StateSpec& s, int max_order);

PsletExpansion compute_expansion(const PotentialModel& p, const StateSpec& s, int max_order = 8);

// lbar^2 E^(-2) + sum_{n=0..upto} E^(n) / lbar^n, upto in [-2, max_order]
real energy_partial_sum(const PsletExpansion& e, int upto);

// Largest coefficient left when the computed wavefunction and energies are
// substituted back into the order-by-order Schroedinger equation. Uses a
// direct re-expansion of every product rather than the solver's bookkeeping.
real residual_norm(const PsletExpansion& e, const PotentialModel& p);

// Unnormalized radial wavefunction u(r) = F(x(r)) exp(U(x(r)))
real wavefunction_eval(const PsletExpansion& e, const real& r);

}  // namespace pslet
