#ifndef SUGOP_ERRORS_HPP
#define SUGOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sugop {

struct SugopError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar / series
struct DivisionError : SugopError { using SugopError::SugopError; };
struct NegativePowerOfA : SugopError { using SugopError::SugopError; };
struct TruncationTooCoarse : SugopError { using SugopError::SugopError; };

// Enveloping algebra
struct ResultLevelEmpty : SugopError { using SugopError::SugopError; };
struct ZeroElement : SugopError { using SugopError::SugopError; };
struct AlgebraMismatch : SugopError { using SugopError::SugopError; };

// Opers
struct WeightConstraint : SugopError { using SugopError::SugopError; };
struct UnsupportedFamily : SugopError { using SugopError::SugopError; };

// Weyl modules
struct DepthOverflow : SugopError { using SugopError::SugopError; };
struct InsufficientLevel : SugopError { using SugopError::SugopError; };

} // namespace sugop

#endif
