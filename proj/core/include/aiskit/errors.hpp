#pragma once

#include <stdexcept>

namespace aiskit {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands disagree on length or shape.
struct DimensionError : Error {
    using Error::Error;
};

// A parameter or constructed value violates a documented invariant.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed text input; the message carries a 1-based line number when the
// input came from a file.
struct ParseError : Error {
    using Error::Error;
};

// A file could not be opened or read.
struct IoError : Error {
    using Error::Error;
};

// Two vote profiles share no items.
struct NoOverlapError : Error {
    using Error::Error;
};

// An observed packet contains wildcards.
struct InvalidObservationError : Error {
    using Error::Error;
};

// The shape cannot be hypermutated (vote profiles).
struct UnsupportedMutationError : Error {
    using Error::Error;
};

// A requested id does not exist in the dataset.
struct NotFoundError : Error {
    using Error::Error;
};

// No neighbor can contribute to the requested prediction.
struct NoDataError : Error {
    using Error::Error;
};

// The candidate stream for a stabilization run was empty.
struct EmptyPoolError : Error {
    using Error::Error;
};

// A self set would be built from zero records.
struct EmptySelfError : Error {
    using Error::Error;
};

// Evaluation was requested on an unlabeled log.
struct EvaluationError : Error {
    using Error::Error;
};

}  // namespace aiskit
