#pragma once

#include <stdexcept>
#include <string>

namespace minusorder {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MINUSORDER_DEFINE_ERROR(Name)                        \
    struct Name : Error {                                    \
        Name() : Error(#Name) {}                             \
        explicit Name(const std::string& msg) : Error(std::string(#Name) + ": " + msg) {} \
    }

// core_linalg
MINUSORDER_DEFINE_ERROR(NotSymmetric);
MINUSORDER_DEFINE_ERROR(ConvergenceFailure);
MINUSORDER_DEFINE_ERROR(SingularTransform);
MINUSORDER_DEFINE_ERROR(NotPositiveDefinite);
MINUSORDER_DEFINE_ERROR(NotPositiveSemidefinite);
MINUSORDER_DEFINE_ERROR(NotOrthonormal);
MINUSORDER_DEFINE_ERROR(InvalidTolerance);

// minus_order
MINUSORDER_DEFINE_ERROR(ShapeMismatch);
MINUSORDER_DEFINE_ERROR(ZeroVector);
MINUSORDER_DEFINE_ERROR(ZeroMatrix);
MINUSORDER_DEFINE_ERROR(NotDominated);
MINUSORDER_DEFINE_ERROR(InternalInconsistency);

// conic_geometry
MINUSORDER_DEFINE_ERROR(NonPositiveR);
MINUSORDER_DEFINE_ERROR(NotInsideUnitCircle);
MINUSORDER_DEFINE_ERROR(DegenerateKernel);
MINUSORDER_DEFINE_ERROR(DomainError);
MINUSORDER_DEFINE_ERROR(InfeasibleConfiguration);
MINUSORDER_DEFINE_ERROR(ImaginaryDenominator);
MINUSORDER_DEFINE_ERROR(NotInRange);
MINUSORDER_DEFINE_ERROR(RankNotTwo);
MINUSORDER_DEFINE_ERROR(NotNested);

// reconstruction
MINUSORDER_DEFINE_ERROR(IdentityImageSingular);
MINUSORDER_DEFINE_ERROR(NotNormalized);
MINUSORDER_DEFINE_ERROR(InconsistentLineImages);
MINUSORDER_DEFINE_ERROR(NotCongruenceInduced);
MINUSORDER_DEFINE_ERROR(SignResolutionFailure);

// io
MINUSORDER_DEFINE_ERROR(ParseError);

#undef MINUSORDER_DEFINE_ERROR

}  // namespace minusorder
