#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ck {

enum class ErrorKind {
    NotASquare,
    ZeroSeed,
    NotSimpleRoot,
    PrecisionExhausted,
    NotMonic,
    EvenDegree,
    SingularModel,
    BadReduction,
    RoundingAmbiguous,
    PoleAtPoint,
    DifferentDiscs,
    WeierstrassDisc,
    SingularSystem,
    AllSeriesDegenerate,
    NonTorsionExtra,
    NotTorsionConsistent,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::ZeroSeed: return "ZeroSeed";
    case ErrorKind::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::EvenDegree: return "EvenDegree";
    case ErrorKind::SingularModel: return "SingularModel";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::RoundingAmbiguous: return "RoundingAmbiguous";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::DifferentDiscs: return "DifferentDiscs";
    case ErrorKind::WeierstrassDisc: return "WeierstrassDisc";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::AllSeriesDegenerate: return "AllSeriesDegenerate";
    case ErrorKind::NonTorsionExtra: return "NonTorsionExtra";
    case ErrorKind::NotTorsionConsistent: return "NotTorsionConsistent";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ck
