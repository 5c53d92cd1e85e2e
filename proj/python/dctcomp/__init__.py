# Copyright 2026 The dctcomp Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""DCT-domain image classification from partially decoded JPEG files."""

from ._dctcomp import (
    DctcompError,
    benchmark_decode,
    build_input_tensor,
    decode_coefficients,
    default_config,
    encode_jpeg,
    fdct_block,
    full_decode,
    idct_block,
    lr_for_epoch,
    make_synthetic_images,
    parse_jpeg,
    run_experiment,
)

__all__ = [
    "DctcompError",
    "benchmark_decode",
    "build_input_tensor",
    "decode_coefficients",
    "default_config",
    "encode_jpeg",
    "fdct_block",
    "full_decode",
    "idct_block",
    "lr_for_epoch",
    "make_synthetic_images",
    "parse_jpeg",
    "run_experiment",
]
