#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcjstyle {

enum class ErrorCode {
  // corpus
  MissingManifest,
  ManifestRowMalformed,
  UnknownRoundName,
  MissingFeatures,
  InvalidRate,
  InvalidProfiles,
  CorpusRootMissing,
  // stylometry
  EmptySource,
  EmptySelection,
  // cluster
  TooFewPoints,
  NonFiniteInput,
  KTooLarge,
  InvalidRange,
  SingleCluster,
  // learn
  MinorityTooSmall,
  EmptyClass,
  SingleClassTraining,
  TooFewSamplesPerClass,
  InvalidConfig,
  // metrics
  LengthMismatch,
  Empty,
  EmptyConfusion,
  OneClassOnly,
  // io
  SchemaMismatch,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gcjstyle
