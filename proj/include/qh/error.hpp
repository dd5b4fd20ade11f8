#pragma once

#include <stdexcept>
#include <string>

namespace qh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Mixing scalars from different cyclotomic fields is an error, never a coercion.
struct FieldMismatch : Error {
    using Error::Error;
};

struct RankMismatch : Error {
    using Error::Error;
};

struct NotInvertible : Error {
    using Error::Error;
};

struct NotAnRMatrix : Error {
    explicit NotAnRMatrix(const std::string& witness)
        : Error("not an R-matrix: " + witness), witness(witness) {}
    std::string witness;
};

// A cross-check between two routes to the same element disagreed; the input
// algebra is malformed.
struct InternalIdentityFailure : Error {
    using Error::Error;
};

struct NoSolution : Error {
    NoSolution(const std::string& msg, long space_dim)
        : Error(msg), space_dim(space_dim) {}
    long space_dim;
};

struct NotSemisimple : Error {
    using Error::Error;
};

struct ConstructionFailure : Error {
    explicit ConstructionFailure(const std::string& witness)
        : Error("construction failed: " + witness), witness(witness) {}
    std::string witness;
};

struct BadParameters : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

}  // namespace qh
