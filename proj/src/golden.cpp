#include "pslet/golden.hpp"

#include <fstream>
#include <sstream>

#include "pslet/error.hpp"

namespace pslet {

std::vector<GoldenCell> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_input, "cannot open golden data file '" + path + "'");

    std::vector<GoldenCell> cells;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("table,", 0) == 0) continue;  // header

        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        while (f.size() < 9) f.emplace_back();
        if (f.size() != 9)
            fail(errc::bad_input,
                 "golden line " + std::to_string(lineno) + ": expected 9 fields");

        GoldenCell g;
        try {
            g.table = std::stoi(f[0]);
        } catch (const std::exception&) {
            fail(errc::bad_input, "golden line " + std::to_string(lineno) + ": bad table id");
        }
        g.potential = f[1];
        g.alpha = f[2];
        g.label = f[3];
        g.quantity = f[4];
        if (!f[5].empty()) g.value = f[5];
        if (!f[6].empty()) g.adjudicated = f[6];
        g.provenance = f[7];
        g.note = f[8];
        cells.push_back(std::move(g));
    }
    if (cells.empty()) fail(errc::bad_input, "golden data file '" + path + "' holds no cells");
    return cells;
}

std::optional<GoldenCell> find_golden(const std::vector<GoldenCell>& cells, int table,
                                      const std::string& alpha, const std::string& label,
                                      const std::string& quantity) {
    for (const auto& g : cells)
        if (g.table == table && g.alpha == alpha && g.label == label && g.quantity == quantity)
            return g;
    return std::nullopt;
}

}  // namespace pslet
