#pragma once

#include <stdexcept>
#include <string>

namespace gpcb {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GPCB_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

GPCB_DEFINE_ERROR(NonPrimitivePoly);
GPCB_DEFINE_ERROR(DivisionByZero);
GPCB_DEFINE_ERROR(InvalidParams);
GPCB_DEFINE_ERROR(LengthMismatch);
GPCB_DEFINE_ERROR(IncompatiblePair);
GPCB_DEFINE_ERROR(IncompatibleCodes);
GPCB_DEFINE_ERROR(BadGeometry);
GPCB_DEFINE_ERROR(EmptyCandidateSet);

#undef GPCB_DEFINE_ERROR

} // namespace gpcb
