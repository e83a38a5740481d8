#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pslet/real.hpp"

namespace pslet {

// One emitted result line. Fields left unset print as empty CSV cells and
// JSON nulls; oracle diagnostics only appear when requested.
struct ResultRow {
    std::string potential;
    std::string alpha;  // decimal text; empty for the alpha-free potentials
    int l = 0;
    int nr = 0;
    std::string label;
    std::optional<real> r0, omega, beta, lbar;
    std::optional<real> e_leading, e_pslet, e_pade, residual;
    std::optional<double> e_oracle;
    std::string status = "ok";
    std::vector<real> energies;  // E^(-2).. series, carried into JSON only
    std::optional<int> nodes_found;
    std::optional<double> richardson_error;
};

// Partial-sum trace: term is "-2".."8", "pade" or "oracle".
struct ConvergenceRow {
    std::string potential;
    std::string alpha;
    int l = 0;
    int nr = 0;
    std::string label;
    std::string term;
    std::optional<real> energy;
    std::string status = "ok";
};

inline constexpr int kReportDigits = 10;

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool oracle_diag = false);
std::string rows_to_markdown(const std::vector<ResultRow>& rows, bool oracle_diag = false);
std::string rows_to_json(const std::vector<ResultRow>& rows,
                         const std::map<std::string, std::string>& config);

std::string converge_to_csv(const std::vector<ConvergenceRow>& rows);
std::string converge_to_markdown(const std::vector<ConvergenceRow>& rows);
std::string converge_to_json(const std::vector<ConvergenceRow>& rows,
                             const std::map<std::string, std::string>& config);

}  // namespace pslet
