#include "potts/error.hpp"

namespace potts {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::ZeroElement: return "ZeroElement";
        case ErrorCode::NoSuchRoot: return "NoSuchRoot";
        case ErrorCode::MixedFields: return "MixedFields";
        case ErrorCode::EvenN: return "EvenN";
        case ErrorCode::EvenPrime: return "EvenPrime";
        case ErrorCode::SplittingCapExceeded: return "SplittingCapExceeded";
        case ErrorCode::IdentityElement: return "IdentityElement";
        case ErrorCode::DegeneratePoints: return "DegeneratePoints";
        case ErrorCode::ClosureCapExceeded: return "ClosureCapExceeded";
        case ErrorCode::NotAGroup: return "NotAGroup";
        case ErrorCode::UnrecognizedSubgroup: return "UnrecognizedSubgroup";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::MixedModulus: return "MixedModulus";
        case ErrorCode::SingularModel: return "SingularModel";
        case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
        case ErrorCode::RootExtractionFailed: return "RootExtractionFailed";
        case ErrorCode::VariantMismatch: return "VariantMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::TEqualsOne: return "TEqualsOne";
        case ErrorCode::SingularConfiguration: return "SingularConfiguration";
        case ErrorCode::DegenerateChange: return "DegenerateChange";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::WindowOverflow: return "WindowOverflow";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace potts
