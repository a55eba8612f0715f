#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nerve {

enum class ErrorCode {
    NotSquare,
    EntryOutOfRange,
    NoIdentity,
    NotInvertible,
    NotAssociative,
    NotHomomorphism,
    NotBijective,
    NotAutomorphism,
    NotInjective,
    CarrierMismatch,
    IndexOutOfRange,
    SizeMismatch,
    InvariantViolation,
    InsufficientTruncation,
    ResourceCap,
    InvalidRing,
    SpecError,
    EquivarianceFailure,
    NotChainMap,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::SpecError: return "SpecError";
    case ErrorCode::EquivarianceFailure: return "EquivarianceFailure";
    case ErrorCode::NotChainMap: return "NotChainMap";
    }
    return "Unknown";
}

/// Every validation failure in the library is reported through this type.
/// what() reads "<Code>: <diagnostic>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nerve
