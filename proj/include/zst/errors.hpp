#pragma once

#include <stdexcept>
#include <string>

namespace zst {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ZST_ERROR(Name)                          \
    struct Name : Error {                        \
        using Error::Error;                      \
    }

ZST_ERROR(NonConvergence);
ZST_ERROR(ContourTooClose);
ZST_ERROR(NonIntegerWinding);
ZST_ERROR(CountMismatch);
ZST_ERROR(SignMismatch);
ZST_ERROR(DegenerateLambda);
ZST_ERROR(BranchTrackingFailed);
ZST_ERROR(NoCrossingFound);
ZST_ERROR(StepFailure);
ZST_ERROR(EndpointMismatch);
ZST_ERROR(MonotonicityViolation);
ZST_ERROR(NonzeroMean);
ZST_ERROR(BlowupDetected);
ZST_ERROR(ParseError);
ZST_ERROR(IoError);

#undef ZST_ERROR

}  // namespace zst
