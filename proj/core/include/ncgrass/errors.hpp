#pragma once

#include <stdexcept>
#include <string>

namespace ncgrass {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct AmbiguousGrouping : Error { using Error::Error; };

// lie
struct NotInAlgebra : Error { using Error::Error; };
struct NotInP : Error { using Error::Error; };

// roots
struct UnexpectedRoot : Error { using Error::Error; };
struct MultiplicityMismatch : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct OutOfChamber : Error { using Error::Error; };

// structures
struct ZeroVector : Error { using Error::Error; };
struct WrongSingularType : Error { using Error::Error; };

// curvature
struct NotUnit : Error { using Error::Error; };
struct RegularVector : Error { using Error::Error; };
struct DependentVectors : Error { using Error::Error; };

// hypersurface / models
struct SplitNotInvariant : Error { using Error::Error; };
struct NormalKernel : Error { using Error::Error; };
struct BasisMismatch : Error { using Error::Error; };
struct RoleResolutionFailure : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

}  // namespace ncgrass
