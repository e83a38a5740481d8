#include "pslet/pade.hpp"

#include <algorithm>

#include "pslet/error.hpp"
#include "pslet/linalg.hpp"

namespace pslet {

PadeApproximant pade_fit(const std::vector<real>& c, int N, int M) {
    if (N < 0 || M < 0) fail(errc::bad_input, "pade orders must be nonnegative");
    if (static_cast<int>(c.size()) != N + M + 1)
        fail(errc::bad_input, "pade fit needs exactly N+M+1 coefficients, got " +
                                  std::to_string(c.size()));

    auto coeff = [&](int k) { return k < 0 ? real(0) : c[static_cast<size_t>(k)]; };

    PadeApproximant a;
    a.N = N;
    a.M = M;
    a.q.assign(static_cast<size_t>(M) + 1, real(0));
    a.q[0] = real(1);

    if (M > 0) {
        // rows k = N+1..N+M of (Q * series - P) = 0, past the numerator degree:
        // sum_{j=1..M} q_j c_{k-j} = -c_k
        Matrix A(static_cast<size_t>(M), std::vector<real>(static_cast<size_t>(M)));
        std::vector<real> b(static_cast<size_t>(M));
        for (int i = 0; i < M; ++i) {
            const int k = N + 1 + i;
            for (int j = 1; j <= M; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] = coeff(k - j);
            b[static_cast<size_t>(i)] = -coeff(k);
        }
        auto q = solve_least_pivot(A, b, working_tol(8));
        if (!q) fail(errc::degenerate_pade, "denominator system singular for [" +
                                               std::to_string(N) + "/" + std::to_string(M) + "]");
        for (int j = 1; j <= M; ++j) a.q[static_cast<size_t>(j)] = (*q)[static_cast<size_t>(j - 1)];
    }

    a.p.assign(static_cast<size_t>(N) + 1, real(0));
    for (int i = 0; i <= N; ++i) {
        real acc(0);
        for (int j = 0; j <= std::min(i, M); ++j) acc += a.q[static_cast<size_t>(j)] * coeff(i - j);
        a.p[static_cast<size_t>(i)] = acc;
    }
    return a;
}

real pade_eval(const PadeApproximant& a, const real& u) {
    real num(0), den(0), den_mag(0);
    for (size_t k = a.p.size(); k-- > 0;) num = num * u + a.p[k];
    for (size_t k = a.q.size(); k-- > 0;) den = den * u + a.q[k];
    real up(1);
    for (size_t k = 0; k < a.q.size(); ++k) {
        den_mag += abs(a.q[k]) * up;
        up *= abs(u);
    }
    if (abs(den) <= working_tol(8) * den_mag)
        fail(errc::pole_at_evaluation, "denominator vanishes at u = " + format_real(u, 8));
    return num / den;
}

real energy_pade(const PsletExpansion& e, int N, int M) {
    if (N < 0 || M < 0 || N + M > e.max_order)
        fail(errc::order_out_of_range,
             "pade [" + std::to_string(N) + "/" + std::to_string(M) + "] needs orders through " +
                 std::to_string(N + M) + ", expansion has " + std::to_string(e.max_order));
    std::vector<real> c(static_cast<size_t>(N + M) + 1);
    for (int n = 0; n <= N + M; ++n) c[static_cast<size_t>(n)] = e.energy(n);

    // Exactly solvable potentials leave every correction zero up to roundoff
    // residue. Fitting a denominator to that residue would resum pure noise,
    // so a series dead at reporting scale resums to the leading term alone.
    const real lead = e.solution.lbar * e.solution.lbar * e.energies[0];
    real cmax(0);
    for (const auto& cn : c)
        if (abs(cn) > cmax) cmax = abs(cn);
    const real scale = abs(lead) > 1 ? abs(lead) : real(1);
    if (cmax <= parse_real("1e-20") * scale) return lead;

    // a denominator system can still degenerate part-way; step the order down
    // until the fit succeeds
    for (int m = M; m >= 0; --m) {
        try {
            auto a = pade_fit(std::vector<real>(c.begin(), c.begin() + N + m + 1), N, m);
            const real u = 1 / e.solution.lbar;
            return e.solution.lbar * e.solution.lbar * e.energies[0] + pade_eval(a, u);
        } catch (const Error& err) {
            if (err.code() != errc::degenerate_pade || m == 0) throw;
        }
    }
    fail(errc::degenerate_pade, "unreachable");
}

}  // namespace pslet
