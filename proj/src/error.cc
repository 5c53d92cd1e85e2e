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

#include "dctcomp/error.h"

namespace dctcomp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingSOI: return "MissingSOI";
    case ErrorCode::kUnsupportedMarker: return "UnsupportedMarker";
    case ErrorCode::kTruncatedStream: return "TruncatedStream";
    case ErrorCode::kBadTableSlot: return "BadTableSlot";
    case ErrorCode::kMalformedSegment: return "MalformedSegment";
    case ErrorCode::kOverfullCodeSpace: return "OverfullCodeSpace";
    case ErrorCode::kBitstreamExhausted: return "BitstreamExhausted";
    case ErrorCode::kInvalidHuffmanCode: return "InvalidHuffmanCode";
    case ErrorCode::kBadRestartMarker: return "BadRestartMarker";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSampleOutOfRange: return "SampleOutOfRange";
    case ErrorCode::kTableMismatch: return "TableMismatch";
    case ErrorCode::kWrongLength: return "WrongLength";
    case ErrorCode::kCropExceedsGrid: return "CropExceedsGrid";
    case ErrorCode::kOddDimensions: return "OddDimensions";
    case ErrorCode::kInconsistentGeometry: return "InconsistentGeometry";
    case ErrorCode::kBadArchConfig: return "BadArchConfig";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kBadCheckpoint: return "BadCheckpoint";
    case ErrorCode::kBadRecordSize: return "BadRecordSize";
    case ErrorCode::kUndecodableFile: return "UndecodableFile";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + detail),
      code_(code) {}

}  // namespace dctcomp
