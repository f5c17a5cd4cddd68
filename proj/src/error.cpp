#include "comogphog/error.hpp"

namespace comogphog {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoCaAtoms: return "NoCaAtoms";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::BadSccs: return "BadSccs";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Io: return "Io";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::CorruptEntry: return "CorruptEntry";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::UndefinedRate: return "UndefinedRate";
    case ErrorCode::MissingLabel: return "MissingLabel";
  }
  return "Unknown";
}

}  // namespace comogphog
