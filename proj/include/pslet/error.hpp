#pragma once

#include <stdexcept>
#include <string>

namespace pslet {

enum class errc {
    singular_point,            // potential evaluated on top of its singularity
    nonpositive_leading_term,  // fractional power of a series with a0 <= 0
    order_overflow,            // derivative/series order beyond the configured cap
    nonbinding_point,          // V'(r0) <= 0, no centrifugal balance possible
    imaginary_frequency,       // 3 + r0 V''/V' <= 0, oscillator frequency undefined
    no_binding_radius,         // r0 search found no admissible root
    not_a_minimum,             // r0 root exists but leading energy is not a minimum
    inconsistent_order,        // per-order linear system violates the ansatz
    degenerate_pade,           // denominator fit singular to working precision
    pole_at_evaluation,        // rational approximant evaluated on a pole
    order_out_of_range,        // requested energy order outside computed range
    no_bound_state,            // shooting failed to localize the requested node count
    grid_underflow,            // radial grid cannot contain the classical region
    bad_input,                 // malformed potential/state/config text
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

inline const char* errc_name(errc code) {
    switch (code) {
        case errc::singular_point: return "SingularPoint";
        case errc::nonpositive_leading_term: return "NonpositiveLeadingTerm";
        case errc::order_overflow: return "OrderOverflow";
        case errc::nonbinding_point: return "NonbindingPoint";
        case errc::imaginary_frequency: return "ImaginaryFrequency";
        case errc::no_binding_radius: return "NoBindingRadius";
        case errc::not_a_minimum: return "NotAMinimum";
        case errc::inconsistent_order: return "InconsistentOrder";
        case errc::degenerate_pade: return "DegeneratePade";
        case errc::pole_at_evaluation: return "PoleAtEvaluation";
        case errc::order_out_of_range: return "OrderOutOfRange";
        case errc::no_bound_state: return "NoBoundState";
        case errc::grid_underflow: return "GridUnderflow";
        case errc::bad_input: return "BadInput";
    }
    return "UnknownError";
}

}  // namespace pslet
