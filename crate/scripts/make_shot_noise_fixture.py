#!/usr/bin/env python3
"""Build a shot-noise corrupted copy of the bundled MNIST subset in the
MNIST-C directory layout (<corruption>/<split>_images.npy[.gz], <split>_labels.npy[.gz]).

This is a local stand-in for the published corrupted data set: Poisson
noise with rate c * x on intensities x in [0, 1], clipped and rescaled to
bytes. Drop the real MNIST-C files into the same layout to use them instead.

usage: make_shot_noise_fixture.py <mnist_dir> <out_dir> [seed]
"""
import gzip
import struct
import sys
from pathlib import Path

import numpy as np

C = 60.0


def read_idx(path):
    raw = gzip.decompress(Path(path).read_bytes())
    magic = struct.unpack(">I", raw[:4])[0]
    ndim = magic & 0xFF
    dims = struct.unpack(">" + "I" * ndim, raw[4:4 + 4 * ndim])
    return np.frombuffer(raw[4 + 4 * ndim:], dtype=np.uint8).reshape(dims)


def main():
    src = Path(sys.argv[1])
    out = Path(sys.argv[2])
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    images = read_idx(src / "subset-images-idx3-ubyte.gz")
    labels = read_idx(src / "subset-labels-idx1-ubyte.gz")
    rng = np.random.default_rng(seed)
    x = images.astype(np.float64) / 255.0
    noisy = np.clip(rng.poisson(x * C) / C, 0.0, 1.0) * 255.0
    noisy = np.rint(noisy).astype(np.uint8)
    out.mkdir(parents=True, exist_ok=True)
    with gzip.GzipFile(out / "subset_images.npy.gz", "wb", mtime=0) as f:
        np.save(f, noisy.reshape(-1, 28, 28, 1))
    with gzip.GzipFile(out / "subset_labels.npy.gz", "wb", mtime=0) as f:
        np.save(f, labels.astype(np.uint8))
    print(f"wrote {len(labels)} images")


if __name__ == "__main__":
    main()
