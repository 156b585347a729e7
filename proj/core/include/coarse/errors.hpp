#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coarse {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COARSE_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// metric
COARSE_DEFINE_ERROR(DisconnectedGraph);
COARSE_DEFINE_ERROR(EmptySubset);
COARSE_DEFINE_ERROR(NotADecomposition);
COARSE_DEFINE_ERROR(DomainMismatch);
COARSE_DEFINE_ERROR(InvalidMetric);
COARSE_DEFINE_ERROR(ParseError);

// groups
COARSE_DEFINE_ERROR(BallTooLarge);
COARSE_DEFINE_ERROR(NonInvertibleGenerator);
COARSE_DEFINE_ERROR(ArithmeticOverflow);
COARSE_DEFINE_ERROR(UndecidableMembership);
COARSE_DEFINE_ERROR(UnsupportedGroup);

// augmented spaces
COARSE_DEFINE_ERROR(CosetMissesBall);
COARSE_DEFINE_ERROR(GIsPeripheral);
COARSE_DEFINE_ERROR(Disconnected);
COARSE_DEFINE_ERROR(NoWitnessGeodesic);

// hyperbolicity
COARSE_DEFINE_ERROR(CapExceeded);

// nerves and complexes
COARSE_DEFINE_ERROR(BoundViolation);
COARSE_DEFINE_ERROR(SimplexExplosion);
COARSE_DEFINE_ERROR(NoContainingMember);
COARSE_DEFINE_ERROR(ShapeMismatch);
COARSE_DEFINE_ERROR(AdjacentCenters);
COARSE_DEFINE_ERROR(NotASubcomplex);

// homology
COARSE_DEFINE_ERROR(DegreeAboveCap);
COARSE_DEFINE_ERROR(InconsistentUnion);

// towers
COARSE_DEFINE_ERROR(UnstableTower);

// scenarios
COARSE_DEFINE_ERROR(ConfigError);

#undef COARSE_DEFINE_ERROR

}  // namespace coarse
