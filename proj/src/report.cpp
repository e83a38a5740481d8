#include "pslet/report.hpp"

#include <sstream>

#include <json.hpp>

#include "pslet/version.hpp"

namespace pslet {

namespace {

using nlohmann::json;

std::string opt_str(const std::optional<real>& v) {
    return v ? format_real(*v, kReportDigits) : std::string();
}

std::string opt_str(const std::optional<double>& v) {
    if (!v) return {};
    std::ostringstream os;
    os.precision(kReportDigits);
    os << *v;
    return os.str();
}

json opt_json(const std::optional<real>& v) {
    return v ? json(to_double(*v)) : json(nullptr);
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> row_cells(const ResultRow& r, bool oracle_diag) {
    std::vector<std::string> c{
        r.potential, r.alpha, std::to_string(r.l), std::to_string(r.nr), r.label,
        opt_str(r.r0), opt_str(r.omega), opt_str(r.beta), opt_str(r.lbar),
        opt_str(r.e_leading), opt_str(r.e_pslet), opt_str(r.e_pade), opt_str(r.e_oracle),
        opt_str(r.residual), r.status};
    if (oracle_diag) {
        c.push_back(r.nodes_found ? std::to_string(*r.nodes_found) : std::string());
        c.push_back(opt_str(r.richardson_error));
    }
    return c;
}

std::vector<std::string> header_cells(bool oracle_diag) {
    std::vector<std::string> c{"potential", "alpha", "l", "nr", "label", "r0", "omega",
                               "beta", "lbar", "e_leading", "e_pslet", "e_pade",
                               "e_oracle", "residual", "status"};
    if (oracle_diag) {
        c.push_back("nodes_found");
        c.push_back("richardson_error");
    }
    return c;
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

std::string join_md(const std::vector<std::string>& cells) {
    std::string line = "|";
    for (const auto& c : cells) {
        line += ' ';
        line += c.empty() ? "-" : c;
        line += " |";
    }
    return line;
}

json meta_json(const std::map<std::string, std::string>& config) {
    json meta;
    meta["version"] = std::string(kVersion);
    json cfg = json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    meta["config"] = cfg;
    return meta;
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool oracle_diag) {
    std::string out = join_csv(header_cells(oracle_diag)) + "\n";
    for (const auto& r : rows) out += join_csv(row_cells(r, oracle_diag)) + "\n";
    return out;
}

std::string rows_to_markdown(const std::vector<ResultRow>& rows, bool oracle_diag) {
    auto head = header_cells(oracle_diag);
    std::string out = join_md(head) + "\n|";
    for (size_t i = 0; i < head.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& r : rows) out += join_md(row_cells(r, oracle_diag)) + "\n";
    return out;
}

std::string rows_to_json(const std::vector<ResultRow>& rows,
                         const std::map<std::string, std::string>& config) {
    json doc;
    doc["meta"] = meta_json(config);
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["potential"] = r.potential;
        o["alpha"] = r.alpha.empty() ? json(nullptr) : json(r.alpha);
        o["l"] = r.l;
        o["nr"] = r.nr;
        o["label"] = r.label;
        o["r0"] = opt_json(r.r0);
        o["omega"] = opt_json(r.omega);
        o["beta"] = opt_json(r.beta);
        o["lbar"] = opt_json(r.lbar);
        o["e_leading"] = opt_json(r.e_leading);
        o["e_pslet"] = opt_json(r.e_pslet);
        o["e_pade"] = opt_json(r.e_pade);
        o["e_oracle"] = opt_json(r.e_oracle);
        o["residual"] = opt_json(r.residual);
        o["status"] = r.status;
        if (!r.energies.empty()) {
            json es = json::array();
            for (const auto& e : r.energies) es.push_back(to_double(e));
            o["energies"] = es;  // E^(-2), E^(-1), E^(0), ...
        }
        if (r.nodes_found) o["nodes_found"] = *r.nodes_found;
        if (r.richardson_error) o["richardson_error"] = *r.richardson_error;
        arr.push_back(o);
    }
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

std::string converge_to_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "potential,alpha,l,nr,label,term,energy,status\n";
    for (const auto& r : rows)
        out += join_csv({r.potential, r.alpha, std::to_string(r.l), std::to_string(r.nr),
                         r.label, r.term, opt_str(r.energy), r.status}) +
               "\n";
    return out;
}

std::string converge_to_markdown(const std::vector<ConvergenceRow>& rows) {
    std::string out = "| potential | alpha | l | nr | label | term | energy | status |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows)
        out += join_md({r.potential, r.alpha, std::to_string(r.l), std::to_string(r.nr),
                        r.label, r.term, opt_str(r.energy), r.status}) +
               "\n";
    return out;
}

std::string converge_to_json(const std::vector<ConvergenceRow>& rows,
                             const std::map<std::string, std::string>& config) {
    json doc;
    doc["meta"] = meta_json(config);
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["potential"] = r.potential;
        o["alpha"] = r.alpha.empty() ? json(nullptr) : json(r.alpha);
        o["l"] = r.l;
        o["nr"] = r.nr;
        o["label"] = r.label;
        o["term"] = r.term;
        o["energy"] = opt_json(r.energy);
        o["status"] = r.status;
        arr.push_back(o);
    }
    doc["rows"] = arr;
    return doc.dump(2) + "\n";
}

}  // namespace pslet
