#pragma once

#include <stdexcept>
#include <string>

namespace unipoly {

// Base of every domain error raised by the library. `name()` is the stable
// identifier reported by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define UNIPOLY_DEFINE_ERROR(Type)                                        \
    class Type : public Error {                                           \
    public:                                                               \
        explicit Type(const std::string& what) : Error(#Type, what) {}    \
    }

UNIPOLY_DEFINE_ERROR(RingMismatch);
UNIPOLY_DEFINE_ERROR(NotAUnit);
UNIPOLY_DEFINE_ERROR(NotDivisible);
UNIPOLY_DEFINE_ERROR(OutOfRange);
UNIPOLY_DEFINE_ERROR(PreconditionFailed);
UNIPOLY_DEFINE_ERROR(NotAnAutomorphism);
UNIPOLY_DEFINE_ERROR(NoSolution);
UNIPOLY_DEFINE_ERROR(NotFoundWithinCap);
UNIPOLY_DEFINE_ERROR(InfiniteCoefficientRing);
UNIPOLY_DEFINE_ERROR(UnsupportedRing);
UNIPOLY_DEFINE_ERROR(IntegralityViolation);
UNIPOLY_DEFINE_ERROR(ShapeMismatch);
UNIPOLY_DEFINE_ERROR(KernelMismatch);
UNIPOLY_DEFINE_ERROR(NotAbelian);
UNIPOLY_DEFINE_ERROR(DegreeOverflow);
UNIPOLY_DEFINE_ERROR(ParseError);
UNIPOLY_DEFINE_ERROR(InternalInconsistency);

#undef UNIPOLY_DEFINE_ERROR

} // namespace unipoly
