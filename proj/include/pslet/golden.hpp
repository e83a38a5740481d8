#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pslet {

// One published reference value. quantity is "pslet", "pade", "exact" or
// "slnt"; value stays textual so callers can parse it at full precision.
// adjudicated carries a replacement value for cells annotated as misprints.
struct GoldenCell {
    int table = 0;
    std::string potential;  // canonical spec string, e.g. "cutoff:10"
    std::string alpha;
    std::string label;
    std::string quantity;
    std::optional<std::string> value;
    std::optional<std::string> adjudicated;
    std::string provenance;
    std::string note;
};

std::vector<GoldenCell> load_golden(const std::string& path);

// cells matching (table, alpha, label, quantity); empty when absent
std::optional<GoldenCell> find_golden(const std::vector<GoldenCell>& cells, int table,
                                      const std::string& alpha, const std::string& label,
                                      const std::string& quantity);

}  // namespace pslet
