#include "rncx/error.hpp"

namespace rncx {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ContractiveRegime: return "ContractiveRegime";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::UngroundedOutput: return "UngroundedOutput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::NotRncPlus: return "NotRncPlus";
    case ErrorKind::WeakDrive: return "WeakDrive";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

} // namespace rncx
