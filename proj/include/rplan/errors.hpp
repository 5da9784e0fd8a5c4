#pragma once

#include <stdexcept>
#include <string>

namespace rplan {

// Error hierarchy shared across the library. Each maps to one failure class
// surfaced by the public operations; the CLI turns them into exit codes.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / configuration problems (exit code 2)
struct ParseError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct MissingArtifact : Error { using Error::Error; };

// Model problems (exit code 3)
struct MissingReference : Error { using Error::Error; };
struct ModelError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IncompatibleLayout : Error { using Error::Error; };

// Solver / evaluation problems (exit code 4)
struct NumericalFailure : Error { using Error::Error; };
struct StatusError : Error { using Error::Error; };
struct NegativeRegret : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

} // namespace rplan
