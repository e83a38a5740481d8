#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pslet/error.hpp"
#include "pslet/expansion.hpp"
#include "pslet/golden.hpp"
#include "pslet/labels.hpp"
#include "pslet/numerov.hpp"
#include "pslet/pade.hpp"
#include "pslet/potential.hpp"
#include "pslet/report.hpp"
#include "pslet/version.hpp"

#ifndef PSLET_DEFAULT_GOLDEN
#define PSLET_DEFAULT_GOLDEN "data/reference_tables.csv"
#endif

namespace {

using namespace pslet;

struct Options {
    std::string potential = "coulomb";
    std::vector<std::string> states;
    std::vector<std::string> alphas;
    int order = 8;
    std::vector<int> pade{4, 4};
    int precision = kDefaultDigits;
    std::string format = "csv";
    int jobs = 1;
    double tol = 1e-10;
    std::string golden_path = PSLET_DEFAULT_GOLDEN;
    int which = 0;
};

// One batch row: a concrete potential plus a state, with the display strings
// that identify it in every output format.
struct Task {
    PotentialModel model;
    std::string kind;   // "cutoff", "laser", "family:3", "coulomb", "harmonic"
    std::string alpha;  // decimal text as given; empty for alpha-free kinds
    StateSpec state;
    std::string label;
};

bool kind_needs_alpha(PotentialKind k) {
    return k == PotentialKind::cutoff || k == PotentialKind::laser || k == PotentialKind::family;
}

// Accepts "cutoff", "cutoff:0.1", "family:3", "family:3:0.5", "coulomb", ...
// and reports the kind prefix, the family exponent text and the inline alpha.
void split_potential(const std::string& text, std::string& kind, std::string& b,
                     std::string& alpha) {
    std::vector<std::string> tok;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t c = text.find(':', pos);
        tok.push_back(text.substr(pos, c == std::string::npos ? c : c - pos));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    kind = tok[0];
    b.clear();
    alpha.clear();
    if (kind == "family") {
        if (tok.size() < 2 || tok.size() > 3) fail(errc::bad_input, "family needs family:b[:alpha]");
        b = tok[1];
        if (tok.size() == 3) alpha = tok[2];
    } else if (kind == "cutoff" || kind == "laser") {
        if (tok.size() > 2) fail(errc::bad_input, "potential spec has too many fields: " + text);
        if (tok.size() == 2) alpha = tok[1];
    } else if (kind == "coulomb" || kind == "harmonic") {
        if (tok.size() > 1) fail(errc::bad_input, kind + " takes no parameters");
    } else {
        fail(errc::bad_input, "unknown potential kind '" + kind + "'");
    }
}

std::vector<Task> build_tasks(const Options& o) {
    std::string kind, b, inline_alpha;
    split_potential(o.potential, kind, b, inline_alpha);
    const std::string kind_text = b.empty() ? kind : kind + ":" + b;

    std::vector<std::string> alphas = o.alphas;
    if (!alphas.empty() && !inline_alpha.empty())
        fail(errc::bad_input, "alpha given both in --potential and --alpha");
    if (alphas.empty() && !inline_alpha.empty()) alphas.push_back(inline_alpha);
    const bool needs = kind == "cutoff" || kind == "laser" || kind == "family";
    if (needs && alphas.empty())
        fail(errc::bad_input, kind + " needs a truncation parameter (--alpha or " + kind + ":X)");
    if (!needs && !alphas.empty()) fail(errc::bad_input, kind + " takes no alpha");

    // ascending in value, keeping the user's text for display
    std::stable_sort(alphas.begin(), alphas.end(), [](const auto& x, const auto& y) {
        return to_double(parse_real(x)) < to_double(parse_real(y));
    });

    std::vector<StateSpec> states;
    for (const auto& s : o.states.empty() ? std::vector<std::string>{"1s"} : o.states)
        states.push_back(parse_state(s));
    std::sort(states.begin(), states.end(), [](const StateSpec& x, const StateSpec& y) {
        return x.l != y.l ? x.l < y.l : x.nr < y.nr;
    });
    states.erase(std::unique(states.begin(), states.end(),
                             [](const StateSpec& x, const StateSpec& y) {
                                 return x.l == y.l && x.nr == y.nr;
                             }),
                 states.end());

    std::vector<Task> tasks;
    auto push = [&](const std::string& alpha) {
        const std::string spec = alpha.empty() ? kind_text : kind_text + ":" + alpha;
        const PotentialModel model = parse_potential_spec(spec);
        for (const auto& s : states)
            tasks.push_back({model, kind_text, alpha, s, state_label(s)});
    };
    if (alphas.empty()) push("");
    else
        for (const auto& a : alphas) push(a);
    return tasks;
}

std::string pade_text(const Options& o) {
    return std::to_string(o.pade[0]) + "," + std::to_string(o.pade[1]);
}

// The precision knob is process-wide, so raise it to the batch-wide maximum
// up front; the per-task raise inside compute_expansion then never writes,
// and worker threads only read.
void preraise_for_batch(const std::vector<Task>& tasks, int order) {
    int target = configured_digits();
    for (const auto& t : tasks)
        target = std::max(target, expansion_guard_digits(t.state, order));
    raise_working_digits(target);
}

template <typename Out>
void parallel_map(const std::vector<Task>& tasks, int jobs, std::vector<Out>& out,
                  const std::function<Out(const Task&)>& fn) {
    out.resize(tasks.size());
    if (jobs <= 1 || tasks.size() <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) out[i] = fn(tasks[i]);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
    for (int k = 0; k < n; ++k)
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                out[i] = fn(tasks[i]);
            }
        });
    for (auto& t : pool) t.join();
}

ResultRow series_row(const Task& t, int order, int padeN, int padeM, bool with_oracle,
                     double otol) {
    ResultRow row;
    row.potential = t.kind;
    row.alpha = t.alpha;
    row.l = t.state.l;
    row.nr = t.state.nr;
    row.label = t.label;
    try {
        const auto e = compute_expansion(t.model, t.state, order);
        row.r0 = e.solution.r0;
        row.omega = e.solution.omega;
        row.beta = e.solution.beta;
        row.lbar = e.solution.lbar;
        row.e_leading = energy_partial_sum(e, -2);
        row.e_pslet = energy_partial_sum(e, order);
        row.e_pade = energy_pade(e, padeN, padeM);
        row.residual = residual_norm(e, t.model);
        row.energies = e.energies;
    } catch (const Error& err) {
        row.status = errc_name(err.code());
    }
    if (with_oracle) {
        try {
            const auto o = oracle_eigenvalue(t.model, t.state, otol);
            row.e_oracle = o.energy;
            row.nodes_found = o.nodes_found;
            row.richardson_error = o.richardson_error;
        } catch (const Error& err) {
            if (row.status == "ok") row.status = errc_name(err.code());
        }
    }
    return row;
}

ResultRow oracle_row(const Task& t, double otol) {
    ResultRow row;
    row.potential = t.kind;
    row.alpha = t.alpha;
    row.l = t.state.l;
    row.nr = t.state.nr;
    row.label = t.label;
    try {
        const auto o = oracle_eigenvalue(t.model, t.state, otol);
        row.e_oracle = o.energy;
        row.nodes_found = o.nodes_found;
        row.richardson_error = o.richardson_error;
    } catch (const Error& err) {
        row.status = errc_name(err.code());
    }
    return row;
}

std::vector<ConvergenceRow> converge_rows(const Task& t, int order, int padeN, int padeM,
                                          double otol) {
    std::vector<ConvergenceRow> rows;
    auto base = [&] {
        ConvergenceRow r;
        r.potential = t.kind;
        r.alpha = t.alpha;
        r.l = t.state.l;
        r.nr = t.state.nr;
        r.label = t.label;
        return r;
    };
    try {
        const auto e = compute_expansion(t.model, t.state, order);
        for (int k = -2; k <= order; ++k) {
            auto r = base();
            r.term = std::to_string(k);
            r.energy = energy_partial_sum(e, k);
            rows.push_back(r);
        }
        auto rp = base();
        rp.term = "pade";
        rp.energy = energy_pade(e, padeN, padeM);
        rows.push_back(rp);
    } catch (const Error& err) {
        auto r = base();
        r.term = "series";
        r.status = errc_name(err.code());
        rows.push_back(r);
    }
    auto ro = base();
    ro.term = "oracle";
    try {
        ro.energy = real(oracle_eigenvalue(t.model, t.state, otol).energy);
    } catch (const Error& err) {
        ro.status = errc_name(err.code());
    }
    rows.push_back(ro);
    return rows;
}

std::map<std::string, std::string> config_map(const Options& o, const std::string& mode) {
    std::map<std::string, std::string> m;
    m["mode"] = mode;
    m["order"] = std::to_string(o.order);
    m["pade"] = pade_text(o);
    m["precision"] = std::to_string(o.precision);
    m["format"] = o.format;
    m["jobs"] = std::to_string(o.jobs);
    if (mode == "table") {
        m["table"] = std::to_string(o.which);
        m["golden"] = o.golden_path;
    } else {
        m["potential"] = o.potential;
        std::string a, s;
        for (const auto& x : o.alphas) a += (a.empty() ? "" : ";") + x;
        for (const auto& x : o.states) s += (s.empty() ? "" : ";") + x;
        m["alphas"] = a;
        m["states"] = s;
    }
    if (mode == "oracle" || mode == "table") {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", o.tol);
        m["tol"] = buf;
    }
    return m;
}

int exit_code_for_rows(const std::vector<ResultRow>& rows) {
    for (const auto& r : rows)
        if (r.status != "ok") return 2;
    return 0;
}

// ---------------------------------------------------------------------------
// table mode: the published comparison grids

struct TableDef {
    int which;
    const char* kind;
    std::vector<const char*> labels;
};

const TableDef kTables[] = {
    {1, "cutoff", {"1s", "2s", "2p", "3p"}},
    {2, "cutoff", {"3d", "4d", "4f"}},
    {3, "laser", {"2s", "3p", "4d"}},
};

const char* kTableAlphas[] = {"0.1", "1.0", "10", "50", "200"};

constexpr double kSeriesTol = 1e-9;  // reproduction tolerance for pslet/pade cells
constexpr double kExactTol = 5e-8;   // oracle vs published direct-integration cells

struct DiffCell {
    std::string alpha, label, quantity;
    std::optional<double> computed, reference, absdiff;
    std::string verdict;  // ok / mismatch / info / null / error
    std::string note;
};

std::string fmt_opt(const std::optional<double>& v, const char* spec) {
    if (!v) return {};
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, *v);
    return buf;
}

std::vector<DiffCell> diff_rows(const TableDef& def, const std::vector<Task>& tasks,
                                const std::vector<ResultRow>& rows,
                                const std::vector<GoldenCell>& golden) {
    std::vector<DiffCell> out;
    for (size_t i = 0; i < tasks.size(); ++i) {
        const auto& row = rows[i];
        std::vector<std::string> quantities{"pslet", "pade", "exact"};
        if (def.which == 3) quantities.push_back("slnt");
        for (const auto& q : quantities) {
            DiffCell d;
            d.alpha = row.alpha;
            d.label = row.label;
            d.quantity = q;
            const auto cell = find_golden(golden, def.which, row.alpha, row.label, q);
            if (cell) {
                d.note = cell->note;
                const auto& ref = cell->adjudicated ? cell->adjudicated : cell->value;
                if (ref) d.reference = to_double(parse_real(*ref));
            }
            std::optional<real> computed;
            if (q == "pade") computed = row.e_pade;
            else if (q == "exact") {
                if (row.e_oracle) computed = real(*row.e_oracle);
            } else {
                computed = row.e_pslet;  // pslet itself, and the series side of slnt
            }
            if (computed) d.computed = to_double(*computed);
            if (d.computed && d.reference) d.absdiff = std::abs(*d.computed - *d.reference);

            if (q == "slnt") d.verdict = d.reference ? "info" : "null";
            else if (!d.computed) d.verdict = "error";
            else if (!d.reference) d.verdict = "null";
            else d.verdict = *d.absdiff <= (q == "exact" ? kExactTol : kSeriesTol) ? "ok"
                                                                                   : "mismatch";
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::string diff_summary_text(const std::vector<DiffCell>& diffs) {
    std::map<std::string, double> worst;
    bool bad = false;
    for (const auto& d : diffs) {
        if (d.verdict == "mismatch" || d.verdict == "error") bad = true;
        if (d.absdiff && d.quantity != "slnt")
            worst[d.quantity] = std::max(worst[d.quantity], *d.absdiff);
    }
    std::string out;
    for (const char* q : {"pslet", "pade", "exact"}) {
        char line[96];
        std::snprintf(line, sizeof line, "# max_abs_diff %s %.3e (tol %.1e)\n", q,
                      worst.count(q) ? worst[q] : 0.0, q == std::string("exact") ? kExactTol
                                                                                 : kSeriesTol);
        out += line;
    }
    out += std::string("# table_check ") + (bad ? "FAIL" : "PASS") + "\n";
    return out;
}

std::string diffs_to_csv(const std::vector<DiffCell>& diffs) {
    std::string out = "alpha,label,quantity,computed,reference,absdiff,verdict,note\n";
    for (const auto& d : diffs)
        out += d.alpha + "," + d.label + "," + d.quantity + "," +
               fmt_opt(d.computed, "%.10g") + "," + fmt_opt(d.reference, "%.10g") + "," +
               fmt_opt(d.absdiff, "%.3e") + "," + d.verdict + "," + d.note + "\n";
    return out;
}

std::string diffs_to_markdown(const std::vector<DiffCell>& diffs) {
    std::string out =
        "| alpha | label | quantity | computed | reference | absdiff | verdict | note |\n"
        "|---|---|---|---|---|---|---|---|\n";
    for (const auto& d : diffs) {
        auto cell = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
        out += "| " + cell(d.alpha) + " | " + cell(d.label) + " | " + cell(d.quantity) + " | " +
               cell(fmt_opt(d.computed, "%.10g")) + " | " + cell(fmt_opt(d.reference, "%.10g")) +
               " | " + cell(fmt_opt(d.absdiff, "%.3e")) + " | " + cell(d.verdict) + " | " +
               cell(d.note) + " |\n";
    }
    return out;
}

nlohmann::json diffs_to_json(const std::vector<DiffCell>& diffs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : diffs) {
        nlohmann::json o;
        o["alpha"] = d.alpha;
        o["label"] = d.label;
        o["quantity"] = d.quantity;
        o["computed"] = d.computed ? nlohmann::json(*d.computed) : nlohmann::json(nullptr);
        o["reference"] = d.reference ? nlohmann::json(*d.reference) : nlohmann::json(nullptr);
        o["absdiff"] = d.absdiff ? nlohmann::json(*d.absdiff) : nlohmann::json(nullptr);
        o["verdict"] = d.verdict;
        o["note"] = d.note;
        arr.push_back(o);
    }
    return arr;
}

int run_table(const Options& o) {
    const TableDef& def = kTables[o.which - 1];
    const auto golden = load_golden(o.golden_path);

    std::vector<Task> tasks;
    for (const char* a : kTableAlphas)
        for (const char* lb : def.labels) {
            const std::string spec = std::string(def.kind) + ":" + a;
            tasks.push_back({parse_potential_spec(spec), def.kind, a, parse_state(lb), lb});
        }
    std::sort(tasks.begin(), tasks.end(), [](const Task& x, const Task& y) {
        const double ax = to_double(parse_real(x.alpha)), ay = to_double(parse_real(y.alpha));
        if (ax != ay) return ax < ay;
        return x.state.l != y.state.l ? x.state.l < y.state.l : x.state.nr < y.state.nr;
    });

    const int padeN = o.pade[0], padeM = o.pade[1];
    preraise_for_batch(tasks, o.order);
    std::vector<ResultRow> rows;
    parallel_map<ResultRow>(tasks, o.jobs, rows, [&](const Task& t) {
        return series_row(t, o.order, padeN, padeM, true, o.tol);
    });

    const auto diffs = diff_rows(def, tasks, rows, golden);
    const auto cfg = config_map(o, "table");
    if (o.format == "json") {
        nlohmann::json doc = nlohmann::json::parse(rows_to_json(rows, cfg));
        doc["diffs"] = diffs_to_json(diffs);
        bool bad = false;
        for (const auto& d : diffs) bad |= (d.verdict == "mismatch" || d.verdict == "error");
        doc["table_check"] = bad ? "FAIL" : "PASS";
        std::cout << doc.dump(2) << "\n";
    } else if (o.format == "md") {
        std::cout << rows_to_markdown(rows) << "\n"
                  << diffs_to_markdown(diffs) << "\n"
                  << diff_summary_text(diffs);
    } else {
        std::cout << rows_to_csv(rows) << "\n"
                  << diffs_to_csv(diffs) << diff_summary_text(diffs);
    }

    if (exit_code_for_rows(rows) != 0) return 2;
    for (const auto& d : diffs)
        if (d.verdict == "mismatch" || d.verdict == "error") return 3;
    return 0;
}

// ---------------------------------------------------------------------------

int run_compute(const Options& o) {
    const auto tasks = build_tasks(o);
    const int padeN = o.pade[0], padeM = o.pade[1];
    preraise_for_batch(tasks, o.order);
    std::vector<ResultRow> rows;
    parallel_map<ResultRow>(tasks, o.jobs, rows, [&](const Task& t) {
        return series_row(t, o.order, padeN, padeM, false, o.tol);
    });
    const auto cfg = config_map(o, "compute");
    if (o.format == "json") std::cout << rows_to_json(rows, cfg);
    else if (o.format == "md") std::cout << rows_to_markdown(rows);
    else std::cout << rows_to_csv(rows);
    return exit_code_for_rows(rows);
}

int run_oracle(const Options& o) {
    const auto tasks = build_tasks(o);
    std::vector<ResultRow> rows;
    parallel_map<ResultRow>(tasks, o.jobs, rows,
                            [&](const Task& t) { return oracle_row(t, o.tol); });
    const auto cfg = config_map(o, "oracle");
    if (o.format == "json") std::cout << rows_to_json(rows, cfg);
    else if (o.format == "md") std::cout << rows_to_markdown(rows, true);
    else std::cout << rows_to_csv(rows, true);
    return exit_code_for_rows(rows);
}

int run_converge(const Options& o) {
    const auto tasks = build_tasks(o);
    const int padeN = o.pade[0], padeM = o.pade[1];
    preraise_for_batch(tasks, o.order);
    std::vector<std::vector<ConvergenceRow>> chunks;
    parallel_map<std::vector<ConvergenceRow>>(tasks, o.jobs, chunks, [&](const Task& t) {
        return converge_rows(t, o.order, padeN, padeM, o.tol);
    });
    std::vector<ConvergenceRow> rows;
    for (auto& c : chunks) rows.insert(rows.end(), c.begin(), c.end());
    const auto cfg = config_map(o, "converge");
    if (o.format == "json") std::cout << converge_to_json(rows, cfg);
    else if (o.format == "md") std::cout << converge_to_markdown(rows);
    else std::cout << converge_to_csv(rows);
    for (const auto& r : rows)
        if (r.status != "ok") return 2;
    return 0;
}

void validate(const Options& o, bool needs_order) {
    if (needs_order) {
        if (o.order < 0 || o.order > expansion_order_cap())
            fail(errc::bad_input, "--order must sit in [0, " +
                                      std::to_string(expansion_order_cap()) + "]");
        if (o.pade.size() != 2 || o.pade[0] < 0 || o.pade[1] < 0)
            fail(errc::bad_input, "--pade wants N,M with N, M >= 0");
        if (o.pade[0] + o.pade[1] > o.order)
            fail(errc::bad_input, "--pade N+M must not exceed --order (needs E^(0)..E^(N+M))");
    }
    if (o.precision < kMinDigits || o.precision > 500)
        fail(errc::bad_input, "--precision must sit in [" + std::to_string(kMinDigits) + ", 500]");
    if (o.format != "csv" && o.format != "json" && o.format != "md")
        fail(errc::bad_input, "--format must be csv, json or md");
    if (!(o.tol > 0) || o.tol > 1e-2) fail(errc::bad_input, "--tol must sit in (0, 1e-2]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shifted-l expansion bound-state solver with Pade acceleration and a "
                 "direct-integration cross-check"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options o;
    app.add_option("--potential", o.potential,
                   "potential spec: coulomb, harmonic, cutoff[:a], laser[:a], family:b[:a]")
        ->capture_default_str();
    app.add_option("--state", o.states,
                   "state as spectroscopic label (2s, 3p, ...) or l,nr pair; repeatable");
    app.add_option("--alpha", o.alphas, "truncation parameter; repeatable");
    app.add_option("--order", o.order, "highest series order")->capture_default_str();
    app.add_option("--pade", o.pade, "rational acceleration degrees N,M")
        ->delimiter(',')
        ->expected(2)
        ->capture_default_str();
    app.add_option("--golden", o.golden_path, "reference-value CSV")->capture_default_str();
    app.add_option("--tol", o.tol, "direct-integration tolerance")->capture_default_str();
    app.add_option("--precision", o.precision, "working decimal digits")->capture_default_str();
    app.add_option("--format", o.format, "csv, json or md")->capture_default_str();
    app.add_option("--jobs", o.jobs, "parallel workers")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app.set_config("--config", "", "flat key=value file mirroring the flags");

    auto* compute = app.add_subcommand("compute", "series summary per (potential, alpha, state)");
    auto* table =
        app.add_subcommand("table", "reproduce a published comparison table and diff it");
    auto* converge = app.add_subcommand("converge", "partial-sum trace per state");
    auto* oracle = app.add_subcommand("oracle", "direct-integration eigenvalues only");
    table->add_option("which", o.which, "table number")->required()->check(CLI::Range(1, 3));
    for (auto* c : {compute, table, converge, oracle}) c->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 1;
    }

    try {
        set_working_digits(o.precision);
        if (app.got_subcommand(table)) {
            validate(o, true);
            return run_table(o);
        }
        if (app.got_subcommand(compute)) {
            validate(o, true);
            return run_compute(o);
        }
        if (app.got_subcommand(converge)) {
            validate(o, true);
            return run_converge(o);
        }
        validate(o, false);
        return run_oracle(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::bad_input ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
