#!/usr/bin/env python3
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
"""Builds tests/data/conformance from third-party JPEG encoders.

Every file here is produced by libjpeg-turbo (through Pillow) or copied from
sample data shipped with scientific Python packages, so the decoder under test
never sees its own encoder's output. Re-running is deterministic.
"""

import argparse
import pathlib
import shutil

import numpy as np
from PIL import Image

SITE = pathlib.Path(np.__file__).resolve().parents[1]

# Baseline originals shipped with other packages.
COPIES = [
    "matplotlib/mpl-data/sample_data/grace_hopper.jpg",
    "IPython/core/tests/2x2.jpg",
    "skimage/data/rocket.jpg",
]

SOURCES = {
    "astronaut": "skimage/data/astronaut.png",
    "chelsea": "skimage/data/chelsea.png",
    "coffee": "skimage/data/coffee.png",
    "camera": "skimage/data/camera.png",
    "coins": "skimage/data/coins.png",
    "brick": "skimage/data/brick.png",
    "retina": "skimage/data/retina.jpg",
    "hubble": "skimage/data/hubble_deep_field.jpg",
}

# name, source, size, mode, save options
VARIANTS = [
    ("astronaut_q90_420", "astronaut", (128, 128), "RGB", dict(quality=90, subsampling="4:2:0")),
    ("astronaut_q30_444", "astronaut", (96, 80), "RGB", dict(quality=30, subsampling="4:4:4")),
    ("astronaut_q75_422", "astronaut", (100, 70), "RGB", dict(quality=75, subsampling="4:2:2")),
    ("chelsea_q95_420_opt", "chelsea", (150, 100), "RGB", dict(quality=95, subsampling="4:2:0", optimize=True)),
    ("chelsea_q10_420", "chelsea", (61, 47), "RGB", dict(quality=10, subsampling="4:2:0")),
    ("chelsea_q50_444_rst", "chelsea", (120, 88), "RGB", dict(quality=50, subsampling="4:4:4", restart_marker_blocks=3)),
    ("coffee_q85_420_rst", "coffee", (160, 104), "RGB", dict(quality=85, subsampling="4:2:0", restart_marker_rows=1)),
    ("coffee_q100_444", "coffee", (64, 48), "RGB", dict(quality=100, subsampling="4:4:4")),
    ("coffee_q60_420_opt_rst", "coffee", (97, 61), "RGB", dict(quality=60, subsampling="4:2:0", optimize=True, restart_marker_blocks=5)),
    ("camera_q75_gray", "camera", (128, 128), "L", dict(quality=75)),
    ("camera_q20_gray_opt", "camera", (77, 93), "L", dict(quality=20, optimize=True)),
    ("coins_q95_gray_rst", "coins", (96, 76), "L", dict(quality=95, restart_marker_blocks=7)),
    ("brick_q40_gray", "brick", (64, 64), "L", dict(quality=40)),
    ("retina_q80_420", "retina", (144, 144), "RGB", dict(quality=80, subsampling="4:2:0")),
    ("retina_q5_444_opt", "retina", (72, 72), "RGB", dict(quality=5, subsampling="4:4:4", optimize=True)),
    ("hubble_q70_420", "hubble", (128, 112), "RGB", dict(quality=70, subsampling="4:2:0")),
    ("hubble_q92_422_rst", "hubble", (90, 78), "RGB", dict(quality=92, subsampling="4:2:2", restart_marker_rows=2)),
    ("astronaut_q100_420_tiny", "astronaut", (9, 7), "RGB", dict(quality=100, subsampling="4:2:0")),
    ("chelsea_q75_420_32", "chelsea", (32, 32), "RGB", dict(quality=75, subsampling="4:2:0")),
    ("coffee_q75_420_224", "coffee", (224, 224), "RGB", dict(quality=75, subsampling="4:2:0")),
    ("noise_q97_444", None, (48, 40), "RGB", dict(quality=97, subsampling="4:4:4")),
    ("noise_q97_420_opt", None, (40, 48), "RGB", dict(quality=97, subsampling="4:2:0", optimize=True)),
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("out", type=pathlib.Path)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for rel in COPIES:
        src = SITE / rel
        shutil.copyfile(src, args.out / ("orig_" + src.name))

    rng = np.random.default_rng(20260101)
    for name, source, size, mode, opts in VARIANTS:
        if source is None:
            arr = rng.integers(0, 256, size=(size[1], size[0], 3), dtype=np.uint8)
            img = Image.fromarray(arr, "RGB")
        else:
            img = Image.open(SITE / SOURCES[source]).convert(mode)
            img = img.resize(size, Image.BILINEAR)
        img.convert(mode).save(args.out / (name + ".jpg"), "JPEG", **opts)

    # Negative fixture: progressive mode must be rejected by the parser.
    img = Image.open(SITE / SOURCES["chelsea"]).convert("RGB").resize((64, 48))
    img.save(args.out.parent / "progressive.jpg", "JPEG", quality=80, progressive=True)


if __name__ == "__main__":
    main()
