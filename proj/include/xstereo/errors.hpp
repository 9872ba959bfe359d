#pragma once

#include <stdexcept>
#include <string>

namespace xs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// raster / model construction
struct ShapeMismatch : Error { using Error::Error; };
struct ValueOutOfRange : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// synthesis
struct MissingChannel : Error { using Error::Error; };
struct DegenerateWeights : Error { using Error::Error; };

// matching
struct DisparityRangeTooLarge : Error { using Error::Error; };

// evaluation
struct EmptyMask : Error { using Error::Error; };
struct MissingGroundTruth : Error { using Error::Error; };

// file I/O
struct MalformedHeader : Error { using Error::Error; };
struct TruncatedPayload : Error { using Error::Error; };
struct UnsupportedVariant : Error { using Error::Error; };
struct UnsupportedMaxval : Error { using Error::Error; };

// configuration
struct ConfigError : Error { using Error::Error; };

} // namespace xs
