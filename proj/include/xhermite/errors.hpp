#pragma once

#include <stdexcept>
#include <string>

namespace xh {

// Base class for all recoverable failures raised by the lab. Scenario
// execution catches XhError per case so that one bad (partition, n) never
// aborts a sweep.
class XhError : public std::runtime_error {
public:
    explicit XhError(const std::string& what) : std::runtime_error(what) {}
};

#define XH_DEFINE_ERROR(NAME)                                        \
    class NAME : public XhError {                                    \
    public:                                                          \
        explicit NAME(const std::string& what) : XhError(what) {}    \
    }

// partition layer
XH_DEFINE_ERROR(NonIncreasingViolation);
XH_DEFINE_ERROR(NonPositivePart);

// polynomial layer
XH_DEFINE_ERROR(InadmissibleDegree);
XH_DEFINE_ERROR(DegreeMismatch);
XH_DEFINE_ERROR(NotSquarefree);

// root finding / classification
XH_DEFINE_ERROR(NonConvergence);
XH_DEFINE_ERROR(CountMismatch);
XH_DEFINE_ERROR(MatchingAmbiguous);
XH_DEFINE_ERROR(DegenerateDistance);

// energy evaluation
XH_DEFINE_ERROR(CoincidentPoints);
XH_DEFINE_ERROR(PointAtPoleOfW);
XH_DEFINE_ERROR(RealExceptionalZero);

// partitioned-matrix analysis
XH_DEFINE_ERROR(SingularBlock);
XH_DEFINE_ERROR(PartitionMismatch);
XH_DEFINE_ERROR(BlockShapeMismatch);
XH_DEFINE_ERROR(NotSymmetric);

// special-case / optimality layer
XH_DEFINE_ERROR(PoleOfDnu);
XH_DEFINE_ERROR(PoleProximity);

// fits and orchestration
XH_DEFINE_ERROR(DegenerateFit);
XH_DEFINE_ERROR(ConfigError);

#undef XH_DEFINE_ERROR

} // namespace xh
