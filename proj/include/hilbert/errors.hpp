#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

enum class ErrorCode {
    InvalidBody,
    PointNotInterior,
    ZeroDirection,
    NotOnBoundary,
    UnsupportedRepresentation,
    SingularMap,
    ImageUnbounded,
    RegionNotInside,
    TriangleNotInside,
    NotACornerOrFlat,
    DeltaTooLarge,
    OutsideDomain,
    OutOfRange,
    NegativeT,
    NonpositiveT,
    OutsideSquare,
    DegenerateTriangle,
    SolverDidNotConverge,
    BodyIsEllipse,
    DegenerateDirection,
    PreconditionViolated,
    NoIntersection,
    RectangleNotInside,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class HilbertError : public std::runtime_error {
public:
    HilbertError(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw HilbertError(code, detail);
}

}  // namespace hilbert
