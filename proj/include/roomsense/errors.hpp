#pragma once

#include <stdexcept>

namespace roomsense {

// Configuration / usage problems. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input (CSV cell, MAC string, JSON field).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vector or row whose width does not match the expected AP count.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A room label with too few samples for the requested operation.
struct EmptyClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ROC positive class with no positives or no negatives.
struct DegenerateClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PayloadTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Send counter no longer fits the 48-bit wire field.
struct CounterOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownDestination : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidCode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace roomsense
