#!/usr/bin/env python3
"""List all faces of the correlation cone with their certificates."""

import argparse
import sys

from tlc import corrcone


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dim", type=int, default=2, choices=(1, 2, 3))
    args = ap.parse_args()

    faces = corrcone.enumerate_faces(args.dim)
    print(f"faces of the dimension-{args.dim} correlation cone: {len(faces)}")
    for f in faces:
        cert = corrcone.certificate_encode(args.dim, f)
        pts = " ".join("".join(str(b) for b in p) for p in f)
        print(f"{{{pts}}}  certificate: {' '.join(str(v) for v in cert.s)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
