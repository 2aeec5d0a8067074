#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

// Numerical failures carry the error name used in CLI exit diagnostics.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define BLOWUP_DEFINE_ERROR(E)                                        \
    class E : public NumericalError {                                 \
    public:                                                           \
        explicit E(const std::string& what) : NumericalError(#E, what) {} \
    }

BLOWUP_DEFINE_ERROR(NoConvergence);
BLOWUP_DEFINE_ERROR(PoleOfC);
BLOWUP_DEFINE_ERROR(PoleOfGamma);
BLOWUP_DEFINE_ERROR(DegenerateCoefficient);
BLOWUP_DEFINE_ERROR(DomainError);
BLOWUP_DEFINE_ERROR(QuadratureFailure);
BLOWUP_DEFINE_ERROR(OutsideLightcone);
BLOWUP_DEFINE_ERROR(LogCase);
BLOWUP_DEFINE_ERROR(ResonantDivision);
BLOWUP_DEFINE_ERROR(OutOfHalfPlane);
BLOWUP_DEFINE_ERROR(DimensionMismatch);
BLOWUP_DEFINE_ERROR(UnderResolved);
BLOWUP_DEFINE_ERROR(EigFailure);
BLOWUP_DEFINE_ERROR(SingularGram);
BLOWUP_DEFINE_ERROR(Instability);
BLOWUP_DEFINE_ERROR(BlowupInFrame);
BLOWUP_DEFINE_ERROR(HypothesisViolation);
BLOWUP_DEFINE_ERROR(CFLViolation);
BLOWUP_DEFINE_ERROR(NonFiniteState);
BLOWUP_DEFINE_ERROR(IOError);

#undef BLOWUP_DEFINE_ERROR

}  // namespace blowup
