#include "gcjstyle/error.hpp"

namespace gcjstyle {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingManifest: return "MissingManifest";
    case ErrorCode::ManifestRowMalformed: return "ManifestRowMalformed";
    case ErrorCode::UnknownRoundName: return "UnknownRoundName";
    case ErrorCode::MissingFeatures: return "MissingFeatures";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::InvalidProfiles: return "InvalidProfiles";
    case ErrorCode::CorpusRootMissing: return "CorpusRootMissing";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::SingleCluster: return "SingleCluster";
    case ErrorCode::MinorityTooSmall: return "MinorityTooSmall";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::SingleClassTraining: return "SingleClassTraining";
    case ErrorCode::TooFewSamplesPerClass: return "TooFewSamplesPerClass";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::EmptyConfusion: return "EmptyConfusion";
    case ErrorCode::OneClassOnly: return "OneClassOnly";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gcjstyle
