#include "pslet/labels.hpp"

#include <cctype>

#include "pslet/error.hpp"

namespace pslet {

namespace {
constexpr std::string_view kOrbitalLetters = "spdfghiklm";
}

StateSpec parse_state(std::string_view text) {
    if (text.empty()) fail(errc::bad_input, "empty state");

    if (text.find(',') != std::string_view::npos) {
        const auto comma = text.find(',');
        try {
            StateSpec s;
            s.l = std::stoi(std::string(text.substr(0, comma)));
            s.nr = std::stoi(std::string(text.substr(comma + 1)));
            if (s.l < 0 || s.nr < 0) throw std::invalid_argument("negative");
            return s;
        } catch (const std::exception&) {
            fail(errc::bad_input, "malformed state '" + std::string(text) + "'");
        }
    }

    size_t pos = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == 0 || pos + 1 != text.size())
        fail(errc::bad_input, "malformed state label '" + std::string(text) + "'");
    const auto lpos = kOrbitalLetters.find(text[pos]);
    if (lpos == std::string_view::npos)
        fail(errc::bad_input, "unknown orbital letter in '" + std::string(text) + "'");
    int n = 0;
    try {
        n = std::stoi(std::string(text.substr(0, pos)));
    } catch (const std::exception&) {
        fail(errc::bad_input, "malformed state label '" + std::string(text) + "'");
    }
    StateSpec s;
    s.l = static_cast<int>(lpos);
    s.nr = n - s.l - 1;
    if (s.nr < 0)
        fail(errc::bad_input, "label '" + std::string(text) + "' needs n >= l + 1");
    return s;
}

std::string state_label(const StateSpec& s) {
    if (s.l >= 0 && s.l <= 9 && s.nr >= 0)
        return std::to_string(s.l + s.nr + 1) + kOrbitalLetters[static_cast<size_t>(s.l)];
    return std::to_string(s.l) + "," + std::to_string(s.nr);
}

}  // namespace pslet
