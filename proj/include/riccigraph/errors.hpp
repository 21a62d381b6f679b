#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct DuplicateEdgeError : Error { using Error::Error; };
struct LoopError : Error { using Error::Error; };
struct NonpositiveWeightError : Error { using Error::Error; };
struct NotAdjacentError : Error { using Error::Error; };
struct IsolatedVertexError : Error { using Error::Error; };
struct SameVertexError : Error { using Error::Error; };
struct CrossComponentError : Error { using Error::Error; };
struct EmptyMeasureError : Error { using Error::Error; };
struct SupportTooLargeError : Error { using Error::Error; };
struct DegreeError : Error { using Error::Error; };
struct DomainMismatchError : Error { using Error::Error; };
struct WeightedGraphError : Error { using Error::Error; };
struct HypothesisViolationError : Error { using Error::Error; };
struct NumericalFailureError : Error { using Error::Error; };
struct InvalidArgumentError : Error { using Error::Error; };

}  // namespace ricci
