#include "pslet/numerov.hpp"

#include <cmath>
#include <vector>

#include "pslet/error.hpp"

namespace pslet {

namespace {

double veff(const PotentialModel& p, int l, double r) {
    return 0.5 * l * (l + 1) / (r * r) + potential_value_d(p, r);
}

// outermost radius with V_eff <= E, probed geometrically; 0 when the trial
// energy lies below the whole effective potential
double turning_point(const PotentialModel& p, int l, double E) {
    double rt = 0;
    for (double r = 1e-4; r < 1e7; r *= 1.05)
        if (veff(p, l, r) <= E) rt = r;
    return rt;
}

double grid_extent(const PotentialModel& p, int l, double E, double factor) {
    const double rt = turning_point(p, l, E);
    double rmax = 2.0 * rt + 2.0;
    if (E < 0) rmax = std::max(rmax, factor / std::sqrt(-2.0 * E));
    return rmax;
}

void check_grid(const GridSpec& g) {
    if (g.points < 1000) fail(errc::bad_input, "grid needs at least 1000 points");
    if (g.r_max_factor < 10) fail(errc::bad_input, "r_max_factor must be at least 10");
    if (!(g.match_fraction > 0 && g.match_fraction <= 1.2))
        fail(errc::bad_input, "match_fraction must sit in (0, 1.2]");
}

// Near-origin behavior V = c/r + v0 + v1 r + v2 r^2 + O(r^3), closed-form per
// potential kind. Feeds the series start of the outward sweep; a bare r^(l+1)
// start costs two orders of convergence for s states.
struct OriginTerms {
    double c = 0, v0 = 0, v1 = 0, v2 = 0;
};

OriginTerms origin_terms(const PotentialModel& p) {
    OriginTerms t;
    const double a = to_double(p.alpha);
    switch (p.kind) {
        case PotentialKind::coulomb: t.c = -1.0; break;
        case PotentialKind::harmonic: t.v2 = 0.5; break;
        case PotentialKind::cutoff:
            t.v0 = -1.0 / a;
            t.v1 = 1.0 / (a * a);
            t.v2 = -1.0 / (a * a * a);
            break;
        case PotentialKind::laser:
            t.v0 = -1.0 / a;
            t.v2 = 0.5 / (a * a * a);
            break;
        case PotentialKind::family:
            t.v0 = -1.0 / a;
            if (p.b == 1) {
                t.v1 = 1.0 / (a * a);
                t.v2 = -1.0 / (a * a * a);
            } else if (p.b == 2) {
                t.v2 = 0.5 / (a * a * a);
            }
            break;
    }
    return t;
}

}  // namespace

ShootResult integrate_radial(const PotentialModel& p, double energy, const StateSpec& s,
                             const GridSpec& g) {
    check_grid(g);
    if (s.l < 0 || s.nr < 0) fail(errc::bad_input, "state needs l >= 0 and nr >= 0");

    const int N = g.points;
    const double rmax = grid_extent(p, s.l, energy, g.r_max_factor);
    const double h = rmax / N;
    const double h12 = h * h / 12.0;

    // u'' = g u; P_i = 1 - (h^2/12) g_i on r_i = i h. P[0] is never touched:
    // both sweeps stay away from the origin. The sweeps and the matching
    // residual run in long double: the residual cancels O(1) terms down to
    // O(h^2 (E - E_grid)) and then divides by h, so double-precision rounding
    // in the recurrence would put a noise floor near 1e-10 on the eigenvalue.
    // Potential values may stay double; their rounding enters P through a
    // factor h^2/12 and is harmless.
    std::vector<long double> P(static_cast<size_t>(N) + 1, 1.0L);
    int match = 0;
    for (int i = 1; i <= N; ++i) {
        const double gi = 2.0 * (veff(p, s.l, i * h) - energy);
        P[static_cast<size_t>(i)] = 1.0L - static_cast<long double>(h12) * gi;
        if (gi <= 0.0) match = i;
    }
    if (match == 0) match = N / 3;  // below the well: no classical region
    match = static_cast<int>(match * g.match_fraction);
    if (match > N - 5) {
        if (g.match_fraction <= 1.0)
            fail(errc::grid_underflow, "classical region reaches the grid edge");
        match = N - 5;
    }
    if (match < 5) match = 5;

    // Outward sweep. The start uses the regular power series
    // u = r^(l+1) (1 + a1 r + ... + a4 r^4) on the first two points; the bare
    // power alone would leave an O(h) admixture of the irregular solution and
    // drag the eigenvalue convergence down to h^2 for s states.
    const auto t = origin_terms(p);
    const double w0 = t.v0 - energy;
    const double a1 = t.c / (s.l + 1);
    const double a2 = (t.c * a1 + w0) / (2 * s.l + 3);
    const double a3 = (t.c * a2 + w0 * a1 + t.v1) / (3.0 * (s.l + 2));
    const double a4 = (t.c * a3 + w0 * a2 + t.v1 * a1 + t.v2) / (2.0 * (2 * s.l + 5));
    auto series_start = [&](long double r) {
        return powl(r, s.l + 1) * (1.0L + r * (a1 + r * (a2 + r * (a3 + r * a4))));
    };
    long double ua = series_start(h);
    long double ub = series_start(2.0L * h);
    int nodes = 0;
    for (int i = 3; i <= match; ++i) {
        const long double uc = ((12.0L - 10.0L * P[static_cast<size_t>(i - 1)]) * ub -
                                P[static_cast<size_t>(i - 2)] * ua) /
                               P[static_cast<size_t>(i)];
        if (uc * ub < 0) ++nodes;
        ua = ub;
        ub = uc;
        if (std::abs(ub) > 1e250L) { ub *= 1e-250L; ua *= 1e-250L; }
    }
    const long double om1 = ua, o0 = ub;  // u(match-1), u(match)

    // inward sweep from an exponential tail start
    const double gN = 2.0 * (veff(p, s.l, N * h) - energy);
    const double kappa = gN > 0 ? std::sqrt(gN) : 1.0;
    long double vb = 1.0L;                             // u_N
    long double va = expl(std::min(kappa * h, 500.0));  // u_{N-1}
    for (int i = N - 2; i >= match; --i) {
        const long double vc = ((12.0L - 10.0L * P[static_cast<size_t>(i + 1)]) * va -
                                P[static_cast<size_t>(i + 2)] * vb) /
                               P[static_cast<size_t>(i)];
        vb = va;
        va = vc;
        if (std::abs(va) > 1e250L) { va *= 1e-250L; vb *= 1e-250L; }
    }
    const long double ip1 = vb, i0 = va;  // u(match+1), u(match)

    // a node landing on the match point itself still separates lobes
    if (std::abs(o0) < 1e-13 * std::abs(om1)) ++nodes;

    ShootResult res;
    res.node_count = nodes;
    // Residual of the three-term recurrence across the match point with both
    // sides pinned to u(match) = 1. Its zero locates the grid eigenvalue to
    // the full fourth order of the scheme, where an explicit central-difference
    // log-derivative comparison would cost two orders; dividing by -h gives it
    // the sign and scale of u'_out - u'_in.
    const long double tiny = 1e-300L;
    const long double delta = P[static_cast<size_t>(match + 1)] * ip1 / (i0 == 0 ? tiny : i0) +
                              P[static_cast<size_t>(match - 1)] * om1 / (o0 == 0 ? tiny : o0) -
                              (12.0L - 10.0L * P[static_cast<size_t>(match)]);
    res.logderiv_mismatch = static_cast<double>(-delta / h);
    return res;
}

namespace {

// true when the trial energy lies above the nr-node level: too many nodes, or
// the right count with the matching mismatch past its zero (the mismatch
// decreases monotonically through zero at an eigenvalue)
bool above_level(const PotentialModel& p, double E, const StateSpec& s, const GridSpec& g) {
    auto r = integrate_radial(p, E, s, g);
    if (r.node_count != s.nr) return r.node_count > s.nr;
    return r.logderiv_mismatch < 0;
}

// Shrinks [lo, hi] around the nr-node level. Returns the midpoint; lo_final,
// when asked for, lands epsilon below the grid eigenvalue, where the node
// count is exactly nr by construction of the predicate.
double bisect_level(const PotentialModel& p, const StateSpec& s, const GridSpec& g, double lo,
                    double hi, double* lo_final = nullptr) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (above_level(p, mid, s, g)) hi = mid;
        else lo = mid;
        if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
    }
    if (lo_final) *lo_final = lo;
    return 0.5 * (lo + hi);
}

}  // namespace

OracleResult oracle_eigenvalue(const PotentialModel& p, const StateSpec& s, double tol,
                               GridSpec g) {
    check_grid(g);
    const bool confining = (p.kind == PotentialKind::harmonic);

    const auto sol = solve_leading_order(p, s);
    const double e0 = to_double(sol.lbar * sol.lbar * sol.e_minus2);
    double lo = e0 - 0.5 * std::abs(e0);
    double hi = e0 + 0.5 * std::abs(e0);
    if (!confining && hi >= 0) hi = -1e-12;

    auto nodes_at = [&](double E) { return integrate_radial(p, E, s, g).node_count; };

    int guard = 0;
    while (nodes_at(hi) <= s.nr) {
        hi = confining ? hi * 1.5 + 0.1 : hi / 2;
        if (!confining && hi > -1e-280) hi = -1e-280;
        if (++guard > 120)
            fail(errc::no_bound_state,
                 "no upper bracket for " + potential_spec_string(p) + " l=" +
                     std::to_string(s.l) + " nr=" + std::to_string(s.nr));
    }
    guard = 0;
    while (nodes_at(lo) > s.nr) {
        lo = confining ? lo / 2 : lo * 1.5 - 0.1;
        if (++guard > 120 || lo < -1e9)
            fail(errc::no_bound_state, "no lower bracket for " + potential_spec_string(p));
    }

    double e_coarse = bisect_level(p, s, g, lo, hi);
    GridSpec fine = g;
    double e_fine = 0, est = 0, e_extrap = 0, lo_fine = lo;
    for (int stage = 0; stage < 6; ++stage) {
        fine.points *= 2;
        e_fine = bisect_level(p, s, fine, lo, hi, &lo_fine);
        est = std::abs(e_fine - e_coarse) / 15.0;
        e_extrap = (16.0 * e_fine - e_coarse) / 15.0;
        if (est < tol) break;
        if (fine.points >= 1'300'000)
            fail(errc::grid_underflow, "tolerance unreachable at the grid-size cap");
        e_coarse = e_fine;
    }

    OracleResult res;
    res.energy = e_extrap;
    res.richardson_error = est;
    res.grid = fine;
    // count nodes just below the grid eigenvalue: the extrapolated energy
    // itself can sit a hair above it, where the extra node has already slipped
    // inside the match radius
    res.nodes_found = integrate_radial(p, lo_fine, s, fine).node_count;
    if (res.nodes_found != s.nr)
        fail(errc::no_bound_state, "converged level has " + std::to_string(res.nodes_found) +
                                       " nodes, wanted " + std::to_string(s.nr));
    return res;
}

}  // namespace pslet
