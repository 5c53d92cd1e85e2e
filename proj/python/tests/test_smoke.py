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
import io

import numpy as np
import pytest

import dctcomp


def _image(side=32, seed=0):
    images, _ = dctcomp.make_synthetic_images(2, 1, side, seed)
    return images[0]


def test_unquantized_roundtrip_is_close():
    rgb = _image()
    data = dctcomp.encode_jpeg(rgb, unquantized=True, subsampling="444")
    out = dctcomp.full_decode(data)
    assert out.shape == rgb.shape
    # Only colour conversion and integer rounding of samples and levels remain.
    err = np.abs(out.astype(int) - rgb.astype(int))
    assert err.mean() < 1.0
    assert err.max() <= 6


def test_pillow_decodes_our_stream():
    Image = pytest.importorskip("PIL.Image")
    rgb = _image()
    # 4:4:4 so the comparison does not depend on the chroma upsampling filter.
    data = dctcomp.encode_jpeg(rgb, quality=90, subsampling="444")
    theirs = np.asarray(Image.open(io.BytesIO(data)).convert("RGB"))
    ours = dctcomp.full_decode(data)
    assert np.abs(theirs.astype(int) - ours.astype(int)).max() <= 2


def test_coefficients_and_headers():
    data = dctcomp.encode_jpeg(_image(), quality=75)
    info = dctcomp.parse_jpeg(data)
    assert (info["width"], info["height"]) == (32, 32)
    assert [c["h_samp"] for c in info["components"]] == [2, 1, 1]
    grids = dctcomp.decode_coefficients(data)
    assert [g.shape for g in grids] == [(4, 4, 8, 8), (2, 2, 8, 8), (2, 2, 8, 8)]


def test_input_tensor_shapes():
    data = dctcomp.encode_jpeg(_image(), quality=75)
    up = dctcomp.build_input_tensor(data, "upsample")
    down = dctcomp.build_input_tensor(data, "downsample")
    assert up.shape == (32, 32, 3) and up.dtype == np.float32
    assert down.shape == (16, 16, 3)


def test_dct_inverse():
    x = np.random.default_rng(1).uniform(-128, 127, (8, 8))
    assert np.allclose(dctcomp.idct_block(dctcomp.fdct_block(x)), x, atol=1e-9)


def test_lr_schedule():
    assert dctcomp.lr_for_epoch(0) == pytest.approx(0.01)
    assert dctcomp.lr_for_epoch(25) == pytest.approx(0.01 * 0.9**2)


def test_errors_carry_code():
    with pytest.raises(dctcomp.DctcompError, match="MissingSOI"):
        dctcomp.parse_jpeg(b"not a jpeg")


def test_tiny_experiment(tmp_path):
    config = "\n".join([
        "dataset_kind = synthetic",
        "synthetic_train_per_class = 16",
        "synthetic_test_per_class = 8",
        "arch = c8,p,c8,g",
        "epochs = 1",
        "batch_size = 16",
        "bench_repetitions = 5",
        f"output_dir = {tmp_path}",
    ])
    lines = []
    report = dctcomp.run_experiment(config, lines.append)
    assert len(report["cells"]) == 4
    assert all(c["completed"] for c in report["cells"])
    assert lines
    assert (tmp_path / "report.json").exists()
