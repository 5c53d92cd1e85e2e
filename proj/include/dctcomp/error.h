// Copyright 2026 The dctcomp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCTCOMP_ERROR_H_
#define DCTCOMP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dctcomp {

enum class ErrorCode {
  // Bitstream parsing.
  kMissingSOI,
  kUnsupportedMarker,
  kTruncatedStream,
  kBadTableSlot,
  kMalformedSegment,
  // Entropy coding.
  kOverfullCodeSpace,
  kBitstreamExhausted,
  kInvalidHuffmanCode,
  kBadRestartMarker,
  // Encoder input.
  kDimensionMismatch,
  kSampleOutOfRange,
  // Coefficient-domain transforms.
  kTableMismatch,
  kWrongLength,
  kCropExceedsGrid,
  kOddDimensions,
  kInconsistentGeometry,
  // Network.
  kBadArchConfig,
  kShapeMismatch,
  kLabelOutOfRange,
  kEmptyDataset,
  kBadCheckpoint,
  // Datasets and harness.
  kBadRecordSize,
  kUndecodableFile,
  kIoFailure,
  kEmptyCorpus,
  kConfigInvalid,
};

std::string_view ErrorCodeName(ErrorCode code);

// The single exception type thrown by the library. `code()` identifies the
// failure class; `what()` carries a human readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dctcomp

#endif  // DCTCOMP_ERROR_H_
