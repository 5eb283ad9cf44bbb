#!/usr/bin/env python3
"""Convert the digit JSON files shipped in the `mnist` npm package into
gzipped IDX files.

The npm package stores each 28x28 digit as 784 floats in [0, 1] rounded to
two decimals. Pixels are mapped back to bytes with round(255 * v).

usage: mnist_npm_to_idx.py <package/src/digits> <out_dir> [digits...]
"""
import gzip
import json
import struct
import sys
from pathlib import Path


def main():
    src = Path(sys.argv[1])
    out = Path(sys.argv[2])
    digits = [int(d) for d in sys.argv[3:]] or [0, 1, 2]
    images = bytearray()
    labels = bytearray()
    count = 0
    for d in digits:
        data = json.loads((src / f"{d}.json").read_text())["data"]
        assert len(data) % 784 == 0
        for k in range(len(data) // 784):
            px = data[k * 784:(k + 1) * 784]
            images.extend(min(255, max(0, round(255 * v))) for v in px)
            labels.append(d)
            count += 1
    out.mkdir(parents=True, exist_ok=True)
    with gzip.GzipFile(out / "subset-images-idx3-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, count, 28, 28))
        f.write(bytes(images))
    with gzip.GzipFile(out / "subset-labels-idx1-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, count))
        f.write(bytes(labels))
    print(f"wrote {count} images")


if __name__ == "__main__":
    main()
