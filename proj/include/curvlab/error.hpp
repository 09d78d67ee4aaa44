#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

enum class Errc {
    dimension_mismatch,
    non_finite,
    invariant_violation,
    degenerate_plane,
    rank_deficient,
    invalid_argument,
    not_zero_frame,
    incompatible_group,
    precondition,
    blowup,
    io,
};

inline const char* to_string(Errc code) {
    switch (code) {
        case Errc::dimension_mismatch: return "dimension mismatch";
        case Errc::non_finite: return "non-finite value";
        case Errc::invariant_violation: return "invariant violation";
        case Errc::degenerate_plane: return "degenerate plane";
        case Errc::rank_deficient: return "rank deficient";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::not_zero_frame: return "not a zero frame";
        case Errc::incompatible_group: return "incompatible group";
        case Errc::precondition: return "precondition failed";
        case Errc::blowup: return "blow-up";
        case Errc::io: return "i/o error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace curvlab
