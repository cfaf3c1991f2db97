#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace potts {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    EvenCharacteristic,
    SizeCapExceeded,
    ZeroElement,
    NoSuchRoot,
    MixedFields,
    EvenN,
    EvenPrime,
    SplittingCapExceeded,
    IdentityElement,
    DegeneratePoints,
    ClosureCapExceeded,
    NotAGroup,
    UnrecognizedSubgroup,
    TooFewPoints,
    MixedModulus,
    SingularModel,
    WrongCharacteristic,
    RootExtractionFailed,
    VariantMismatch,
    IndexOutOfRange,
    TEqualsOne,
    SingularConfiguration,
    DegenerateChange,
    NotAUnit,
    WindowOverflow,
    Overflow,
    InvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a stable machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

// Internal consistency check; a failure here means a computed identity did not hold.
inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorCode::InvariantViolation, what);
}

}  // namespace potts
