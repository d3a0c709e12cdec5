#pragma once

#include <stdexcept>
#include <string>

namespace majority {

// Every failure the library reports, split into two classes: bad inputs
// (the caller's problem, CLI exit 2) and broken guarantees the dynamics
// are supposed to satisfy (a real finding, CLI exit 3).
enum class errc {
    // input validation
    even_degree,
    degree_exceeded,
    disconnected,
    duplicate_edge,
    cannot_normalize,
    invalid_params,
    not_regular,
    not_separating,
    degenerate_component,
    size_mismatch,
    invalid_p,
    missing_data,
    parse_error,
    // guarantee violations
    horizon_exceeded,
    flip_budget_exceeded,
    not_d_legal,
    insufficient_trials,
    w_not_large_enough,
};

inline bool is_guarantee_violation(errc c) {
    switch (c) {
        case errc::horizon_exceeded:
        case errc::flip_budget_exceeded:
        case errc::not_d_legal:
        case errc::insufficient_trials:
        case errc::w_not_large_enough:
            return true;
        default:
            return false;
    }
}

inline const char* error_name(errc c) {
    switch (c) {
        case errc::even_degree: return "even_degree";
        case errc::degree_exceeded: return "degree_exceeded";
        case errc::disconnected: return "disconnected";
        case errc::duplicate_edge: return "duplicate_edge";
        case errc::cannot_normalize: return "cannot_normalize";
        case errc::invalid_params: return "invalid_params";
        case errc::not_regular: return "not_regular";
        case errc::not_separating: return "not_separating";
        case errc::degenerate_component: return "degenerate_component";
        case errc::size_mismatch: return "size_mismatch";
        case errc::invalid_p: return "invalid_p";
        case errc::missing_data: return "missing_data";
        case errc::parse_error: return "parse_error";
        case errc::horizon_exceeded: return "horizon_exceeded";
        case errc::flip_budget_exceeded: return "flip_budget_exceeded";
        case errc::not_d_legal: return "not_d_legal";
        case errc::insufficient_trials: return "insufficient_trials";
        case errc::w_not_large_enough: return "w_not_large_enough";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what, int subject = -1)
        : std::runtime_error(what), code_(code), subject_(subject) {}

    errc code() const { return code_; }
    // offending vertex or edge index when one exists, else -1
    int subject() const { return subject_; }

  private:
    errc code_;
    int subject_;
};

[[noreturn]] inline void fail(errc code, const std::string& what, int subject = -1) {
    throw Error(code, what, subject);
}

}  // namespace majority
