#pragma once

#include <stdexcept>
#include <string>

namespace oeb {

enum class Errc {
    FormulaOutOfRange,
    DegenerateSchedule,
    UnknownSchedule,
    ConditionUnsatisfiable,
    OutOfDomain,
    AsymmetricDomain,
    BadAlpha,
    LowerUndefined,
    NonpositiveFactor,
    PreconditionViolated,
    MismatchedRuns,
    UnknownFigure,
    ConfigError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::FormulaOutOfRange: return "FormulaOutOfRange";
        case Errc::DegenerateSchedule: return "DegenerateSchedule";
        case Errc::UnknownSchedule: return "UnknownSchedule";
        case Errc::ConditionUnsatisfiable: return "ConditionUnsatisfiable";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::AsymmetricDomain: return "AsymmetricDomain";
        case Errc::BadAlpha: return "BadAlpha";
        case Errc::LowerUndefined: return "LowerUndefined";
        case Errc::NonpositiveFactor: return "NonpositiveFactor";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::MismatchedRuns: return "MismatchedRuns";
        case Errc::UnknownFigure: return "UnknownFigure";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }
    // Index of the offending term/step, when one exists.
    long long index = -1;

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what, long long index = -1) {
    Error e(code, what);
    e.index = index;
    throw e;
}

} // namespace oeb
