#include "hilbert/errors.hpp"

namespace hilbert {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidBody: return "InvalidBody";
        case ErrorCode::PointNotInterior: return "PointNotInterior";
        case ErrorCode::ZeroDirection: return "ZeroDirection";
        case ErrorCode::NotOnBoundary: return "NotOnBoundary";
        case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
        case ErrorCode::SingularMap: return "SingularMap";
        case ErrorCode::ImageUnbounded: return "ImageUnbounded";
        case ErrorCode::RegionNotInside: return "RegionNotInside";
        case ErrorCode::TriangleNotInside: return "TriangleNotInside";
        case ErrorCode::NotACornerOrFlat: return "NotACornerOrFlat";
        case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NegativeT: return "NegativeT";
        case ErrorCode::NonpositiveT: return "NonpositiveT";
        case ErrorCode::OutsideSquare: return "OutsideSquare";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::SolverDidNotConverge: return "SolverDidNotConverge";
        case ErrorCode::BodyIsEllipse: return "BodyIsEllipse";
        case ErrorCode::DegenerateDirection: return "DegenerateDirection";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::RectangleNotInside: return "RectangleNotInside";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace hilbert
