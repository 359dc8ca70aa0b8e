#include "rbound/error.hpp"

namespace rbound {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BelowGrid: return "BelowGrid";
    case ErrorCode::AboveGrid: return "AboveGrid";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::MissingVariate: return "MissingVariate";
    case ErrorCode::NotUnimodal: return "NotUnimodal";
    case ErrorCode::DivergentMoment: return "DivergentMoment";
    case ErrorCode::SymmetryUnavailable: return "SymmetryUnavailable";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::InfeasibleBudget: return "InfeasibleBudget";
    case ErrorCode::TooManyCells: return "TooManyCells";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace rbound
