#include "epgr/error.hpp"

namespace epgr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::SpecTooLarge: return "SpecTooLarge";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::ColoringSizeMismatch: return "ColoringSizeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
  }
  return "UnknownError";
}

}  // namespace epgr
