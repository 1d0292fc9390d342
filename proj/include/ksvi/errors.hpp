#pragma once

#include <stdexcept>
#include <string>

namespace ksvi {

// Base class for all checked failures raised by the library.  Callers that
// only care about "something went wrong" can catch this; the concrete types
// below identify the failed precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// core geometry
struct ZeroVector : Error {
    using Error::Error;
};
struct DegenerateCross : Error {
    using Error::Error;
};
struct UnsupportedComplexCross : Error {
    using Error::Error;
};
struct DegeneratePair : Error {
    using Error::Error;
};

// hypergraphs and assignments
struct UnknownObservable : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct SeedConflict : Error {
    using Error::Error;
};
struct CompletionFailed : Error {
    using Error::Error;
};
struct TheoremCheckFailed : Error {
    using Error::Error;
};

// constructions
struct OutOfRange : Error {
    using Error::Error;
};

// qrng
struct InsufficientData : Error {
    using Error::Error;
};

// decomposition
struct NotUnitary : Error {
    NotUnitary(const std::string& msg, double deviation)
        : Error(msg), max_deviation(deviation) {}
    double max_deviation;
};
struct BadPort : Error {
    using Error::Error;
};

} // namespace ksvi
