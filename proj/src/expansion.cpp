#include "pslet/expansion.hpp"

#include <atomic>

#include "pslet/error.hpp"
#include "pslet/linalg.hpp"

namespace pslet {

namespace {

std::atomic<int> g_expansion_cap{8};

// L[f] = -f''/2 + omega x f' - nr omega f, the operator the order-zero
// prefactor solves exactly; it also multiplies every later F correction.
Poly prefactor_op(const Poly& f, const real& omega, int nr) {
    Poly res = (real(-1) / 2) * f.derivative().derivative();
    res += omega * (Poly::monomial(1) * f.derivative());
    res += (-omega * nr) * f;
    return res;
}

// contribution of a unit x^d term of W_k to the order-k equation:
// -F0' x^d - (d/2) F0 x^(d-1) + omega F0 x^(d+1)
Poly logd_column(const Poly& F0, const Poly& dF0, const real& omega, int d) {
    Poly res = real(-1) * (dF0 * Poly::monomial(d));
    if (d >= 1) res += (real(-d) / 2) * (F0 * Poly::monomial(d - 1));
    res += omega * (F0 * Poly::monomial(d + 1));
    return res;
}

}  // namespace

int expansion_order_cap() { return g_expansion_cap.load(); }

void set_expansion_order_cap(int cap) {
    if (cap < 0) fail(errc::bad_input, "expansion order cap must be nonnegative");
    g_expansion_cap.store(cap);
}

PerturbationSeries build_perturbation_series(const LeadingOrderSolution& sol,
                                             const PotentialModel& p, int order) {
    if (order < 0) fail(errc::bad_input, "perturbation series order must be nonnegative");
    auto t = potential_derivatives(p, sol.r0, order + 2);
    const real& beta = sol.beta;
    const real two_b1 = 2 * beta + 1;

    PerturbationSeries ps;
    ps.order = order;
    ps.B.assign(static_cast<size_t>(order) + 1, real(0));
    ps.v.resize(static_cast<size_t>(order) + 1);

    real rpow = pow(sol.r0, 5);  // r0^(n+4) at n = 1
    real fact(6);                // (n+2)! at n = 1
    for (int n = 1; n <= order; ++n) {
        const real sgn = (n % 2) ? real(-1) : real(1);
        ps.B[static_cast<size_t>(n)] = sgn * (n + 3) / 2 + rpow * t[n + 2] / (sol.Q * fact);
        rpow *= sol.r0;
        fact *= (n + 3);
    }

    Poly v0;
    v0.set_coeff(0, beta + real(1) / 2);
    v0.set_coeff(2, sol.omega * sol.omega / 2);
    ps.v[0] = v0;
    if (order >= 1) {
        Poly v1;
        v1.set_coeff(1, -two_b1);
        v1.set_coeff(3, ps.B[1]);
        ps.v[1] = v1;
    }
    for (int n = 2; n <= order; ++n) {
        const real sgn = (n % 2) ? real(-1) : real(1);
        Poly vn;
        vn.set_coeff(n + 2, ps.B[static_cast<size_t>(n)]);
        vn.set_coeff(n, vn.coeff(n) + sgn * two_b1 * (n + 1) / 2);
        vn.set_coeff(n - 2, vn.coeff(n - 2) + sgn * beta * (beta + 1) * (n - 1) / 2);
        ps.v[static_cast<size_t>(n)] = vn;
    }
    return ps;
}

real PsletExpansion::energy(int n) const {
    if (n < -2 || n > max_order)
        fail(errc::order_out_of_range,
             "energy order " + std::to_string(n) + " outside [-2, " + std::to_string(max_order) + "]");
    return energies[static_cast<size_t>(n + 2)];
}

int expansion_guard_digits(const StateSpec& s, int max_order) {
    return configured_digits() + 2 * max_order + 4 * (s.l + s.nr) + 8;
}

PsletExpansion compute_expansion(const PotentialModel& p, const StateSpec& s, int max_order) {
    if (max_order < 0 || max_order > expansion_order_cap())
        fail(errc::order_out_of_range,
             "max_order " + std::to_string(max_order) + " outside [0, " +
                 std::to_string(expansion_order_cap()) + "]");
    // The order-by-order solves cancel intermediates that grow with both the
    // series depth and the size of the state, so pad the configured precision
    // with guard digits; the raise is monotone and never lowers an explicit
    // setting. Callers running batches across threads should pre-raise to the
    // batch maximum (expansion_guard_digits over every task) so the global
    // precision stays fixed while workers run.
    raise_working_digits(expansion_guard_digits(s, max_order));

    PsletExpansion e;
    e.potential = p;
    e.state = s;
    e.max_order = max_order;
    e.solution = solve_leading_order(p, s);
    const int Keps = 2 * (max_order + 1);
    e.eps_orders = Keps;

    const auto ps = build_perturbation_series(e.solution, p, Keps);
    const real& omega = e.solution.omega;
    const int nr = s.nr;
    const real tol = working_tol(6);

    std::vector<Poly> W(static_cast<size_t>(Keps) + 1);
    std::vector<Poly> Fa(static_cast<size_t>(Keps) + 1);  // F corrections, degree < nr
    W[0] = Poly::monomial(1, -omega);

    // order zero: the monic nr-node oscillator polynomial. Its subleading
    // coefficients follow from L[F0] = 0, a triangular system.
    Poly F0 = Poly::monomial(nr);
    if (nr > 0) {
        Poly head = prefactor_op(F0, omega, nr);
        Matrix A(static_cast<size_t>(nr), std::vector<real>(static_cast<size_t>(nr), real(0)));
        std::vector<real> b(static_cast<size_t>(nr));
        for (int pc = 0; pc < nr; ++pc) {
            Poly col = prefactor_op(Poly::monomial(pc), omega, nr);
            for (int row = 0; row < nr; ++row) A[static_cast<size_t>(row)][static_cast<size_t>(pc)] = col.coeff(row);
        }
        for (int row = 0; row < nr; ++row) b[static_cast<size_t>(row)] = -head.coeff(row);
        auto x = solve_least_pivot(A, b, working_tol(10));
        if (!x) fail(errc::inconsistent_order, "order-0 prefactor system is singular");
        Fa[0] = Poly(*x);
        F0 += Fa[0];
        Poly check = prefactor_op(F0, omega, nr);
        if (check.max_abs_coeff() > tol * (1 + F0.max_abs_coeff()))
            fail(errc::inconsistent_order, "order-0 prefactor residual too large");
    }
    const Poly dF0 = F0.derivative();

    std::vector<Poly> S(static_cast<size_t>(Keps) + 1);  // S[j] = sum_{a+b=j} W_a W_b
    std::vector<Poly> h(static_cast<size_t>(Keps) + 1);  // closed-order brackets
    S[0] = W[0] * W[0];
    h[0] = (real(-1) / 2) * W[0].derivative() + (real(-1) / 2) * S[0] + ps.v[0];

    std::vector<real> mu(static_cast<size_t>(max_order) + 2, real(0));  // mu[j] = r0^2 E^(j-1)

    for (int k = 1; k <= Keps; ++k) {
        // two slots beyond the ansatz degree cap: the solve must return zero
        // there, otherwise the closure assumption is broken
        const int wslots = 2 * k + 3;
        const bool has_mu = (k % 2 == 0);
        const int ncols = (wslots + 1) + nr + (has_mu ? 1 : 0);
        const int nrows = nr + 2 * k + 5;

        Poly known = F0 * ps.v[static_cast<size_t>(k)];
        Poly cross;  // sum over W_a W_b with a, b >= 1, a + b = k
        for (int a2 = 1; a2 <= k - 1; ++a2) cross += W[static_cast<size_t>(a2)] * W[static_cast<size_t>(k - a2)];
        known += (real(-1) / 2) * (F0 * cross);
        for (int i = 1; i <= k - 1; ++i) {
            if (Fa[static_cast<size_t>(i)].is_zero()) continue;
            known += real(-1) * (Fa[static_cast<size_t>(i)].derivative() * W[static_cast<size_t>(k - i)]);
            known += Fa[static_cast<size_t>(i)] * h[static_cast<size_t>(k - i)];
        }

        Matrix A(static_cast<size_t>(nrows), std::vector<real>(static_cast<size_t>(ncols), real(0)));
        std::vector<real> b(static_cast<size_t>(nrows), real(0));
        int col = 0;
        for (int d = 0; d <= wslots; ++d, ++col) {
            Poly c = logd_column(F0, dF0, omega, d);
            for (int row = 0; row <= c.degree() && row < nrows; ++row)
                A[static_cast<size_t>(row)][static_cast<size_t>(col)] = c.coeff(row);
        }
        for (int pp = 0; pp < nr; ++pp, ++col) {
            Poly c = prefactor_op(Poly::monomial(pp), omega, nr);
            for (int row = 0; row <= c.degree() && row < nrows; ++row)
                A[static_cast<size_t>(row)][static_cast<size_t>(col)] = c.coeff(row);
        }
        if (has_mu) {
            for (int row = 0; row <= F0.degree(); ++row)
                A[static_cast<size_t>(row)][static_cast<size_t>(col)] = -F0.coeff(row);
            ++col;
        }
        for (int row = 0; row < nrows; ++row) b[static_cast<size_t>(row)] = -known.coeff(row);

        real scale(1);
        for (const auto& rowv : A)
            for (const auto& x : rowv)
                if (abs(x) > scale) scale = abs(x);
        for (const auto& x : b)
            if (abs(x) > scale) scale = abs(x);

        auto u = solve_least_pivot(A, b, working_tol(10));
        if (!u)
            fail(errc::inconsistent_order,
                 "order-" + std::to_string(k) + " system is rank deficient");
        if (linear_residual(A, *u, b) > tol * scale)
            fail(errc::inconsistent_order,
                 "order-" + std::to_string(k) + " equations are inconsistent");

        real umax(1);
        for (int d = 0; d <= wslots - 2; ++d)
            if (abs((*u)[static_cast<size_t>(d)]) > umax) umax = abs((*u)[static_cast<size_t>(d)]);
        for (int d = wslots - 1; d <= wslots; ++d)
            if (abs((*u)[static_cast<size_t>(d)]) > tol * umax)
                fail(errc::inconsistent_order,
                     "order-" + std::to_string(k) + " log-derivative leaks past degree " +
                         std::to_string(2 * k + 1));

        std::vector<real> wc(static_cast<size_t>(2 * k + 2), real(0));
        for (int d = 0; d <= 2 * k + 1; ++d) wc[static_cast<size_t>(d)] = (*u)[static_cast<size_t>(d)];
        W[static_cast<size_t>(k)] = Poly(std::move(wc));
        if (nr > 0) {
            std::vector<real> ac(static_cast<size_t>(nr));
            for (int pp = 0; pp < nr; ++pp) ac[static_cast<size_t>(pp)] = (*u)[static_cast<size_t>(wslots + 1 + pp)];
            Fa[static_cast<size_t>(k)] = Poly(std::move(ac));
        }
        if (has_mu) mu[static_cast<size_t>(k / 2)] = (*u)[static_cast<size_t>(ncols - 1)];

        for (int a2 = 0; a2 <= k; ++a2) S[static_cast<size_t>(k)] += W[static_cast<size_t>(a2)] * W[static_cast<size_t>(k - a2)];
        h[static_cast<size_t>(k)] = (real(-1) / 2) * W[static_cast<size_t>(k)].derivative() +
                                     (real(-1) / 2) * S[static_cast<size_t>(k)] + ps.v[static_cast<size_t>(k)];
        if (has_mu) h[static_cast<size_t>(k)] -= Poly(std::vector<real>{mu[static_cast<size_t>(k / 2)]});
    }

    const real r0sq = e.solution.r0 * e.solution.r0;
    e.energies.resize(static_cast<size_t>(max_order) + 3);
    e.energies[0] = e.solution.e_minus2;
    e.energies[1] = (e.solution.beta + real(1) / 2 + (nr + real(1) / 2) * omega) / r0sq;
    for (int n = 0; n <= max_order; ++n)
        e.energies[static_cast<size_t>(n) + 2] = mu[static_cast<size_t>(n) + 1] / r0sq;

    e.logd = std::move(W);
    e.fpoly.resize(static_cast<size_t>(Keps) + 1);
    e.fpoly[0] = F0;
    for (int k = 1; k <= Keps; ++k) e.fpoly[static_cast<size_t>(k)] = Fa[static_cast<size_t>(k)];

    e.coeffs.nr = nr;
    e.coeffs.D.resize(static_cast<size_t>(Keps) + 1);
    e.coeffs.C.resize(static_cast<size_t>(Keps));
    e.coeffs.a.resize(static_cast<size_t>(Keps) + 1);
    for (int n = 0; n <= Keps; ++n) {
        auto& Dn = e.coeffs.D[static_cast<size_t>(n)];
        Dn.assign(static_cast<size_t>(n) + 2, real(0));
        for (int m = 1; m <= n + 1; ++m) Dn[static_cast<size_t>(m)] = e.logd[static_cast<size_t>(n)].coeff(2 * m - 1);
        auto& an = e.coeffs.a[static_cast<size_t>(n)];
        an.assign(static_cast<size_t>(nr), real(0));
        for (int pp = 0; pp < nr; ++pp) an[static_cast<size_t>(pp)] = e.fpoly[static_cast<size_t>(n)].coeff(pp);
    }
    for (int n = 0; n + 1 <= Keps; ++n) {
        auto& Cn = e.coeffs.C[static_cast<size_t>(n)];
        Cn.assign(static_cast<size_t>(n) + 2, real(0));
        for (int m = 0; m <= n + 1; ++m) Cn[static_cast<size_t>(m)] = e.logd[static_cast<size_t>(n) + 1].coeff(2 * m);
    }
    return e;
}

real energy_partial_sum(const PsletExpansion& e, int upto) {
    if (upto < -2 || upto > e.max_order)
        fail(errc::order_out_of_range,
             "partial sum order " + std::to_string(upto) + " outside [-2, " +
                 std::to_string(e.max_order) + "]");
    real acc = e.solution.lbar * e.solution.lbar * e.energies[0];
    const real u = 1 / e.solution.lbar;
    real up(1);
    for (int n = 0; n <= upto; ++n) {
        acc += e.energies[static_cast<size_t>(n) + 2] * up;
        up *= u;
    }
    return acc;
}

real residual_norm(const PsletExpansion& e, const PotentialModel& p) {
    const int Keps = e.eps_orders;
    const auto ps = build_perturbation_series(e.solution, p, Keps);
    const real r0sq = e.solution.r0 * e.solution.r0;

    std::vector<real> etab(static_cast<size_t>(Keps) + 1, real(0));
    etab[0] = r0sq * e.energies[1];
    for (int j = 1; 2 * j <= Keps; ++j) etab[static_cast<size_t>(2 * j)] = r0sq * e.energies[static_cast<size_t>(j) + 1];

    const auto& W = e.logd;
    const auto& F = e.fpoly;
    std::vector<Poly> WW(static_cast<size_t>(Keps) + 1);
    for (int a2 = 0; a2 <= Keps; ++a2)
        for (int b2 = 0; a2 + b2 <= Keps; ++b2) WW[static_cast<size_t>(a2 + b2)] += W[static_cast<size_t>(a2)] * W[static_cast<size_t>(b2)];

    std::vector<Poly> bracket(static_cast<size_t>(Keps) + 1);
    for (int j = 0; j <= Keps; ++j) {
        bracket[static_cast<size_t>(j)] = (real(-1) / 2) * W[static_cast<size_t>(j)].derivative() +
                                          (real(-1) / 2) * WW[static_cast<size_t>(j)] + ps.v[static_cast<size_t>(j)];
        bracket[static_cast<size_t>(j)] -= Poly(std::vector<real>{etab[static_cast<size_t>(j)]});
    }

    real worst(0);
    for (int n = 0; n <= Keps; ++n) {
        Poly R = (real(-1) / 2) * F[static_cast<size_t>(n)].derivative().derivative();
        for (int i = 0; i <= n; ++i) {
            R += real(-1) * (F[static_cast<size_t>(i)].derivative() * W[static_cast<size_t>(n - i)]);
            R += F[static_cast<size_t>(i)] * bracket[static_cast<size_t>(n - i)];
        }
        if (R.max_abs_coeff() > worst) worst = R.max_abs_coeff();
    }
    return worst;
}

real wavefunction_eval(const PsletExpansion& e, const real& r) {
    if (r <= 0) fail(errc::bad_input, "wavefunction evaluated at r <= 0");
    const real x = sqrt(e.solution.lbar) * (r - e.solution.r0) / e.solution.r0;
    const real eps = 1 / sqrt(e.solution.lbar);
    real epsk(1), fval(0), uval(0);
    for (int k = 0; k <= e.eps_orders; ++k) {
        fval += epsk * e.fpoly[static_cast<size_t>(k)].eval(x);
        const auto& wc = e.logd[static_cast<size_t>(k)].coeffs();
        real acc(0);  // antiderivative of W_k, evaluated by Horner
        for (size_t d = wc.size(); d-- > 0;) acc = acc * x + wc[d] / static_cast<int>(d + 1);
        uval += epsk * acc * x;
        epsk *= eps;
    }
    return fval * exp(uval);
}

}  // namespace pslet
