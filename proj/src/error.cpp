#include "grstrata/error.hpp"

namespace grstrata {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroSubspace: return "ZeroSubspace";
        case ErrorCode::MixedAmbient: return "MixedAmbient";
        case ErrorCode::FullSpace: return "FullSpace";
        case ErrorCode::NotComplementary: return "NotComplementary";
        case ErrorCode::EmptyStratum: return "EmptyStratum";
        case ErrorCode::InvalidStratum: return "InvalidStratum";
        case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
        case ErrorCode::OutsideChart: return "OutsideChart";
        case ErrorCode::NotDirectSum: return "NotDirectSum";
        case ErrorCode::DirectSum: return "DirectSum";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::OutOfScope: return "OutOfScope";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace grstrata
