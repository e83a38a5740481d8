#pragma once

#include "pslet/leading_order.hpp"
#include "pslet/potential.hpp"

namespace pslet {

// Uniform radial grid for the direct integration. r_max is chosen per trial
// energy: at least r_max_factor decay lengths 1/sqrt(2|E|), and always well
// past the outer classical turning point.
struct GridSpec {
    int points = 40000;
    double r_max_factor = 40.0;
    double match_fraction = 1.0;  // matching radius as a fraction of the turning point
};

struct ShootResult {
    int node_count = 0;          // nodes strictly inside (0, r_match)
    double logderiv_mismatch = 0;  // u'_out - u'_in at the match, both sides u = 1 there
};

struct OracleResult {
    double energy = 0;
    int nodes_found = 0;
    double richardson_error = 0;  // |E_h - E_{h/2}| / 15, the h^4 step estimate
    GridSpec grid;
};

// One two-sided Numerov sweep at fixed trial energy.
ShootResult integrate_radial(const PotentialModel& p, double energy, const StateSpec& s,
                             const GridSpec& g);

// Eigenvalue with nr nodes: node-count bisection plus Richardson extrapolation
// over a doubled grid until the step estimate drops below tol.
OracleResult oracle_eigenvalue(const PotentialModel& p, const StateSpec& s, double tol = 1e-10,
                               GridSpec g = {});

}  // namespace pslet
