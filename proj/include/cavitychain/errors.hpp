#pragma once

#include <stdexcept>
#include <string>

namespace cavitychain {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched vector lengths, bad matrix dimensions, invalid indices.
struct DimensionError : Error {
    using Error::Error;
};

// Inputs violate a required ordering (e.g. mode frequencies not ascending).
struct OrderingError : Error {
    using Error::Error;
};

// A spectrum that cannot be produced by the assumed model.
struct InconsistentSpectrumError : Error {
    using Error::Error;
};

// Qubit branches cannot be identified in a sweep (dark or hybridized).
struct BranchError : Error {
    using Error::Error;
};

// Ill-formed circuit description or port lookup failure.
struct NetworkError : Error {
    using Error::Error;
};

struct PortError : Error {
    using Error::Error;
};

struct GridError : Error {
    using Error::Error;
};

struct CalibrationError : Error {
    using Error::Error;
};

struct FitError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct AmbiguousWindowError : Error {
    using Error::Error;
};

struct DegenerateFitError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace cavitychain
