#pragma once

#include <stdexcept>
#include <string>

namespace qhahn {

/// Base class for every error this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QHAHN_DEFINE_ERROR(Name)                 \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

QHAHN_DEFINE_ERROR(ParseError);
QHAHN_DEFINE_ERROR(InvalidLattice);
QHAHN_DEFINE_ERROR(DegenerateOperator);
QHAHN_DEFINE_ERROR(NotDivisible);
QHAHN_DEFINE_ERROR(HorizonExceeded);
QHAHN_DEFINE_ERROR(SingularRecurrence);
QHAHN_DEFINE_ERROR(WrongFreeCount);
QHAHN_DEFINE_ERROR(NotQuasiDefinite);
QHAHN_DEFINE_ERROR(BasisNotGradedMonic);
QHAHN_DEFINE_ERROR(NonUniqueMinimalPair);
QHAHN_DEFINE_ERROR(NoPearsonPair);
QHAHN_DEFINE_ERROR(DegenerateParameters);
QHAHN_DEFINE_ERROR(RecurrenceBreakdown);
QHAHN_DEFINE_ERROR(DefiningRelationFailed);
QHAHN_DEFINE_ERROR(WrongDegree);
QHAHN_DEFINE_ERROR(DegenerateBracket);
QHAHN_DEFINE_ERROR(PearsonViolated);
QHAHN_DEFINE_ERROR(PrerequisiteFailed);
QHAHN_DEFINE_ERROR(FactorSearchExceeded);
QHAHN_DEFINE_ERROR(IoError);

#undef QHAHN_DEFINE_ERROR

} // namespace qhahn
