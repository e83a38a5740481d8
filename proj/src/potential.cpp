#include "pslet/potential.hpp"

#include <atomic>
#include <cmath>

#include "pslet/error.hpp"
#include "pslet/series.hpp"

namespace pslet {

namespace {

std::atomic<int> g_order_cap{24};

real factorial(int n) {
    real f(1);
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

int series_order_cap() { return g_order_cap.load(); }

void set_series_order_cap(int cap) {
    if (cap < 2) fail(errc::bad_input, "series order cap must be at least 2");
    g_order_cap.store(cap);
}

PotentialModel PotentialModel::cutoff(const real& alpha) {
    if (alpha <= 0) fail(errc::bad_input, "cutoff potential needs alpha > 0");
    return {PotentialKind::cutoff, alpha, 1};
}

PotentialModel PotentialModel::laser(const real& alpha) {
    if (alpha <= 0) fail(errc::bad_input, "laser potential needs alpha > 0");
    return {PotentialKind::laser, alpha, 2};
}

PotentialModel PotentialModel::family(int b, const real& alpha) {
    if (b < 1) fail(errc::bad_input, "family exponent b must be >= 1");
    if (alpha <= 0) fail(errc::bad_input, "family potential needs alpha > 0");
    return {PotentialKind::family, alpha, b};
}

PotentialModel PotentialModel::coulomb() { return {PotentialKind::coulomb, real(0), 1}; }

PotentialModel PotentialModel::harmonic() { return {PotentialKind::harmonic, real(0), 1}; }

real potential_value(const PotentialModel& p, const real& r) {
    if (r < 0) fail(errc::bad_input, "potential evaluated at negative radius");
    switch (p.kind) {
        case PotentialKind::cutoff:
            return -1 / (r + p.alpha);
        case PotentialKind::laser:
            return -1 / sqrt(r * r + p.alpha * p.alpha);
        case PotentialKind::family: {
            real base = pow(r, p.b) + pow(p.alpha, p.b);
            return -pow(base, real(-1) / p.b);
        }
        case PotentialKind::coulomb:
            if (r == 0) fail(errc::singular_point, "coulomb potential at r = 0");
            return -1 / r;
        case PotentialKind::harmonic:
            return r * r / 2;
    }
    fail(errc::bad_input, "unknown potential kind");
}

double potential_value_d(const PotentialModel& p, double r) {
    const double alpha = to_double(p.alpha);
    switch (p.kind) {
        case PotentialKind::cutoff:
            return -1.0 / (r + alpha);
        case PotentialKind::laser:
            return -1.0 / std::sqrt(r * r + alpha * alpha);
        case PotentialKind::family:
            return -std::pow(std::pow(r, p.b) + std::pow(alpha, p.b), -1.0 / p.b);
        case PotentialKind::coulomb:
            return -1.0 / r;
        case PotentialKind::harmonic:
            return r * r / 2;
    }
    return 0;
}

DerivativeTable potential_derivatives(const PotentialModel& p, const real& r0, int n_max) {
    if (r0 <= 0) fail(errc::singular_point, "derivative table needs r0 > 0");
    if (n_max < 0) fail(errc::bad_input, "derivative order must be nonnegative");
    if (n_max > series_order_cap())
        fail(errc::order_overflow, "derivative order " + std::to_string(n_max) +
                                       " beyond cap " + std::to_string(series_order_cap()));

    const int K = n_max;
    // shifted radius r0 + t as a series in t
    TruncSeries shifted(r0, K);
    if (K >= 1) shifted.at(1) = real(1);

    TruncSeries v_series(real(0), K);
    switch (p.kind) {
        case PotentialKind::cutoff: {
            TruncSeries base = shifted;
            base.at(0) += p.alpha;
            v_series = ts_scale(real(-1), ts_pow(base, -1));
            break;
        }
        case PotentialKind::laser: {
            TruncSeries sq = ts_mul(shifted, shifted);
            sq.at(0) += p.alpha * p.alpha;
            v_series = ts_scale(real(-1), ts_pow(sq, -1, 2));
            break;
        }
        case PotentialKind::family: {
            TruncSeries base = ts_pow(shifted, p.b);
            base.at(0) += pow(p.alpha, p.b);
            v_series = ts_scale(real(-1), ts_pow(base, -1, p.b));
            break;
        }
        case PotentialKind::coulomb:
            v_series = ts_scale(real(-1), ts_pow(shifted, -1));
            break;
        case PotentialKind::harmonic:
            v_series = ts_scale(real(1) / 2, ts_mul(shifted, shifted));
            break;
    }

    DerivativeTable table;
    table.r0 = r0;
    table.derivs.resize(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        table.derivs[static_cast<size_t>(k)] = v_series.coeff(k) * factorial(k);
    return table;
}

PotentialModel parse_potential_spec(std::string_view text) {
    auto split = [](std::string_view s) {
        std::vector<std::string> parts;
        size_t start = 0;
        while (true) {
            size_t pos = s.find(':', start);
            if (pos == std::string_view::npos) {
                parts.emplace_back(s.substr(start));
                break;
            }
            parts.emplace_back(s.substr(start, pos - start));
            start = pos + 1;
        }
        return parts;
    };
    auto parts = split(text);
    const std::string& name = parts[0];
    try {
        if (name == "coulomb" && parts.size() == 1) return PotentialModel::coulomb();
        if (name == "harmonic" && parts.size() == 1) return PotentialModel::harmonic();
        if (name == "cutoff" && parts.size() == 2)
            return PotentialModel::cutoff(parse_real(parts[1]));
        if (name == "laser" && parts.size() == 2)
            return PotentialModel::laser(parse_real(parts[1]));
        if (name == "family" && parts.size() == 3)
            return PotentialModel::family(std::stoi(parts[1]), parse_real(parts[2]));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::bad_input, "malformed potential spec '" + std::string(text) + "'");
    }
    fail(errc::bad_input, "unknown potential spec '" + std::string(text) + "'");
}

std::string potential_spec_string(const PotentialModel& p) {
    switch (p.kind) {
        case PotentialKind::cutoff: return "cutoff:" + format_real(p.alpha, 10);
        case PotentialKind::laser: return "laser:" + format_real(p.alpha, 10);
        case PotentialKind::family:
            return "family:" + std::to_string(p.b) + ":" + format_real(p.alpha, 10);
        case PotentialKind::coulomb: return "coulomb";
        case PotentialKind::harmonic: return "harmonic";
    }
    return "?";
}

}  // namespace pslet
