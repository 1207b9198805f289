#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unitri {

enum class ErrorKind {
    IntervalMismatch,
    IncompleteAssignment,
    SingularBaseCase,
    BadIndex,
    Mismatch,
    BadDimension,
    LevelOverflow,
    TooShort,
    BadSubstitution,
    Unsupported,
    CapExceeded,
    HypothesisViolated,
    BadOrder,
    NotASummand,
    ConstructionBug,
    DistinctnessViolated,
    NeedsRandomMode,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::IntervalMismatch: return "IntervalMismatch";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::SingularBaseCase: return "SingularBaseCase";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::LevelOverflow: return "LevelOverflow";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::BadSubstitution: return "BadSubstitution";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NotASummand: return "NotASummand";
    case ErrorKind::ConstructionBug: return "ConstructionBug";
    case ErrorKind::DistinctnessViolated: return "DistinctnessViolated";
    case ErrorKind::NeedsRandomMode: return "NeedsRandomMode";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace unitri
