#!/usr/bin/env python3
# Copyright 2026 The qseg Authors
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
"""Regenerates the bundled evaluation corpus under data/corpus.

Each scene is a small RGB image with sensor-like noise plus a mask PNG
(0 background, 1 foreground, 255 void). The void band is a 2-pixel ring
around every object boundary. Output is deterministic for the fixed seed.
"""

import json
import pathlib

import numpy as np
from PIL import Image

W, H = 128, 96
RING = 2


def grid():
    y, x = np.mgrid[0:H, 0:W]
    return x.astype(float), y.astype(float)


def disk(cx, cy, r):
    x, y = grid()
    return (x - cx) ** 2 + (y - cy) ** 2 <= r * r


def shift_or(m, d):
    out = m.copy()
    for dy in range(-d, d + 1):
        for dx in range(-d, d + 1):
            out |= np.roll(np.roll(m, dy, axis=0), dx, axis=1)
    return out


def void_ring(fg):
    grown = shift_or(fg, RING)
    shrunk = ~shift_or(~fg, RING)
    return grown & ~shrunk


def finish(rgb, fg, rng, sigma=5.0):
    noisy = rgb + rng.normal(0.0, sigma, rgb.shape)
    img = np.clip(np.rint(noisy), 0, 255).astype(np.uint8)
    mask = np.where(fg, 1, 0).astype(np.uint8)
    mask[void_ring(fg)] = 255
    return img, mask


def scene_disk(rng):
    x, y = grid()
    bg = np.stack([40 + 60 * x / W, 70 + 40 * y / H, 120 + 0 * x], axis=-1)
    fg = disk(64, 48, 26)
    rgb = np.where(fg[..., None], np.array([210.0, 120.0, 40.0]), bg)
    return finish(rgb, fg, rng)


def scene_balls(rng):
    bg = np.full((H, W, 3), 25.0)
    fg = np.zeros((H, W), bool)
    balls = [
        ((22, 30, 12), (200, 30, 30), True),
        ((60, 28, 12), (40, 170, 50), True),
        ((98, 30, 12), (200, 210, 60), True),
        ((30, 72, 12), (10, 10, 60), False),
        ((98, 72, 12), (250, 250, 250), False),
    ]
    rgb = bg.copy()
    for (cx, cy, r), color, is_fg in balls:
        d = disk(cx, cy, r)
        rgb[d] = color
        if is_fg:
            fg |= d
    return finish(rgb, fg, rng)


def scene_roofs(rng):
    x, y = grid()
    terrain = np.stack([70 + 15 * np.sin(x / 7), 110 + 15 * np.cos(y / 9), 60 + 0 * x], axis=-1)
    fg = np.zeros((H, W), bool)
    for x0, y0, x1, y1 in [(10, 10, 40, 35), (60, 15, 110, 40), (25, 55, 70, 85), (85, 60, 118, 88)]:
        fg[y0:y1, x0:x1] = True
    rgb = np.where(fg[..., None], np.array([185.0, 175.0, 170.0]), terrain)
    return finish(rgb, fg, rng, sigma=6.0)


def scene_silhouette(rng):
    x, y = grid()
    sky = np.stack([250 - 80 * y / H, 160 - 60 * y / H, 60 + 80 * y / H], axis=-1)
    ridge = 60 + 10 * np.sin(x / 11) + 6 * np.cos(x / 5)
    fg = y >= ridge
    rgb = np.where(fg[..., None], np.array([35.0, 30.0, 45.0]), sky)
    return finish(rgb, fg, rng)


def scene_leaf(rng):
    x, y = grid()
    fg = ((x - 64) / 44) ** 2 + ((y - 48) / 26) ** 2 <= 1.0
    veins = 20 * np.sin((x + y) / 4)
    leaf = np.stack([60 + veins, 150 + veins, 50 + 0 * x], axis=-1)
    bg = np.stack([150 + 0 * x, 120 + 20 * np.sin(y / 6), 90 + 0 * x], axis=-1)
    rgb = np.where(fg[..., None], leaf, bg)
    return finish(rgb, fg, rng)


def scene_lowcontrast(rng):
    x, y = grid()
    fg = disk(40, 50, 20) | disk(90, 40, 16)
    bg = np.stack([110 + 20 * x / W, 110 + 0 * x, 115 + 0 * x], axis=-1)
    rgb = np.where(fg[..., None], np.array([150.0, 135.0, 120.0]), bg)
    return finish(rgb, fg, rng, sigma=8.0)


SCENES = [
    ("balls", scene_balls),
    ("disk", scene_disk),
    ("leaf", scene_leaf),
    ("lowcontrast", scene_lowcontrast),
    ("roofs", scene_roofs),
    ("silhouette", scene_silhouette),
]


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20221)
    entries = []
    for name, make in SCENES:
        img, mask = make(rng)
        Image.fromarray(img, "RGB").save(out / f"{name}.png", optimize=False)
        Image.fromarray(mask, "L").save(out / f"{name}_mask.png", optimize=False)
        entries.append({"id": name, "image": f"{name}.png", "mask": f"{name}_mask.png"})
    manifest = {"root": ".", "entries": entries}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
