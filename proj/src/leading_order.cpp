#include "pslet/leading_order.hpp"

#include <vector>

#include "pslet/error.hpp"

namespace pslet {

namespace {

struct RadiusFuncs {
    real f;       // residual of the radius equation
    real df;      // d f / d r
    real omega;
    real d2e;     // sign carrier of d^2(leading energy)/dr0^2 at a root
};

RadiusFuncs radius_funcs(const PotentialModel& p, const StateSpec& s, const real& r) {
    auto t = potential_derivatives(p, r, 3);
    const real v1 = t[1], v2 = t[2], v3 = t[3];
    if (v1 <= 0) fail(errc::nonbinding_point, "V'(r) <= 0 at r = " + format_real(r, 8));
    const real w2 = 3 + r * v2 / v1;
    if (w2 <= 0)
        fail(errc::imaginary_frequency, "3 + r V''/V' <= 0 at r = " + format_real(r, 8));
    const real omega = sqrt(w2);

    const real g = r * r * r * v1;  // (l - beta)^2 at balance
    const real sg = sqrt(g);
    RadiusFuncs out;
    out.omega = omega;
    out.f = sg - s.l - (1 + (2 * s.nr + 1) * omega) / 2;
    const real dg = 3 * r * r * v1 + r * r * r * v2;
    const real domega = (v2 / v1 + r * v3 / v1 - r * (v2 / v1) * (v2 / v1)) / (2 * omega);
    out.df = dg / (2 * sg) - (s.nr + real(1) / 2) * domega;
    out.d2e = 3 / (r * r * r * r) + v2 / g;  // proportional to the energy curvature
    return out;
}

// residual that treats non-binding sample points as "no data" during scanning
bool try_residual(const PotentialModel& p, const StateSpec& s, const real& r, real& out) {
    try {
        out = radius_funcs(p, s, r).f;
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

real omega_at(const PotentialModel& p, const real& r) {
    auto t = potential_derivatives(p, r, 2);
    if (t[1] <= 0) fail(errc::nonbinding_point, "V'(r) <= 0 at r = " + format_real(r, 8));
    const real w2 = 3 + r * t[2] / t[1];
    if (w2 <= 0)
        fail(errc::imaginary_frequency, "3 + r V''/V' <= 0 at r = " + format_real(r, 8));
    return sqrt(w2);
}

real r0_residual(const PotentialModel& p, const StateSpec& s, const real& r) {
    return radius_funcs(p, s, r).f;
}

LeadingOrderSolution solve_leading_order(const PotentialModel& p, const StateSpec& s) {
    if (s.l < 0 || s.nr < 0) fail(errc::bad_input, "state needs l >= 0 and nr >= 0");

    // bracket every sign change of the residual on a geometric sweep
    const real lo = parse_real("1e-6"), hi = parse_real("1e9");
    const real ratio = parse_real("1.2");
    std::vector<std::pair<real, real>> brackets;
    real prev_r(0), prev_f(0);
    bool have_prev = false;
    for (real r = lo; r <= hi; r *= ratio) {
        real f;
        if (!try_residual(p, s, r, f)) {
            have_prev = false;
            continue;
        }
        if (have_prev && ((prev_f < 0 && f > 0) || (prev_f > 0 && f < 0)))
            brackets.emplace_back(prev_r, r);
        prev_r = r;
        prev_f = f;
        have_prev = true;
    }
    if (brackets.empty())
        fail(errc::no_binding_radius,
             "no balance radius for " + potential_spec_string(p) + " l=" + std::to_string(s.l) +
                 " nr=" + std::to_string(s.nr));

    // refine each bracket: bisection to ~1e-6 relative, then Newton
    std::vector<real> roots;
    for (auto& [a0, b0] : brackets) {
        real a = a0, b = b0;
        real fa = radius_funcs(p, s, a).f;
        for (int it = 0; it < 200 && (b - a) > parse_real("1e-6") * a; ++it) {
            real m = (a + b) / 2, fm;
            if (!try_residual(p, s, m, fm)) break;
            if ((fa < 0) == (fm < 0)) { a = m; fa = fm; } else { b = m; }
        }
        real r = (a + b) / 2;
        const real tol = working_tol(4);
        for (int it = 0; it < 120; ++it) {
            auto rf = radius_funcs(p, s, r);
            if (abs(rf.f) <= tol * (1 + abs(s.l + rf.omega))) break;
            if (rf.df == 0) break;
            real step = rf.f / rf.df;
            real next = r - step;
            if (next <= 0) next = r / 2;
            r = next;
        }
        roots.push_back(r);
    }

    // keep minima of the leading energy; on ties take the outermost radius
    real best_r(-1);
    int admissible = 0;
    for (const auto& r : roots) {
        auto rf = radius_funcs(p, s, r);
        if (rf.d2e <= 0) continue;
        ++admissible;
        if (r > best_r) best_r = r;
    }
    if (admissible == 0)
        fail(errc::not_a_minimum, "all balance radii sit on energy maxima for " +
                                      potential_spec_string(p));

    LeadingOrderSolution sol;
    sol.r0 = best_r;
    sol.omega = omega_at(p, best_r);
    sol.beta = -(real(1) / 2 + (s.nr + real(1) / 2) * sol.omega);
    sol.lbar = s.l - sol.beta;
    sol.Q = sol.lbar * sol.lbar;
    sol.e_minus2 = 1 / (2 * best_r * best_r) + potential_value(p, best_r) / sol.Q;
    sol.multi_root = admissible > 1;
    return sol;
}

}  // namespace pslet
