#pragma once

#include <stdexcept>

namespace xci {

// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dist-core
struct InvalidIndices : Error { using Error::Error; };
struct InvalidPartition : Error { using Error::Error; };
struct ZeroProbabilityEvent : Error { using Error::Error; };

// support-geometry
struct EnumerationTooLarge : Error { using Error::Error; };

// ci-checks
struct SupportOutsideRegion : Error { using Error::Error; };

// witness-builder (errors that carry a certificate live in witness.hpp)
struct CornerMassZero : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct SupportNotCross : Error { using Error::Error; };

// generators
struct EmptyRegionOnGrid : Error { using Error::Error; };
struct MassWouldGoNonpositive : Error { using Error::Error; };
struct SlabNotInSupport : Error { using Error::Error; };

// serialization / CLI input
struct InputFormatError : Error { using Error::Error; };

} // namespace xci
