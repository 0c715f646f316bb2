#!/usr/bin/env python3
"""Compare the compiled LU kernel against the pure-Python fallback.

Times raw small-system solves and end-to-end coordinate evaluation with
each backend selected in turn.  Run as:

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from momentcoords import sampling, shapes, smallsolve
from momentcoords.coords2d import moment_coords_quad
from momentcoords.coords3d import moment_coords_hex


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_raw_solves(n, count, repeats):
    rng = np.random.default_rng(42)
    mats = rng.normal(size=(count, n, n)) + n * np.eye(n)
    rhss = rng.normal(size=(count, n))

    def run():
        for a, b in zip(mats, rhss):
            smallsolve.solve_dense(a, b)

    return time_call(run, repeats) / count


def bench_quad_grid(resolution, repeats):
    from momentcoords.geometry import classify_point_quad

    quad = shapes.nonconvex_quad()
    lo = quad.vertices.min(axis=0)
    hi = quad.vertices.max(axis=0)
    pts = [
        (x, y)
        for x in np.linspace(lo[0], hi[0], resolution)
        for y in np.linspace(lo[1], hi[1], resolution)
        if classify_point_quad(quad, (x, y)).inside
    ]

    def run():
        for p in pts:
            moment_coords_quad(quad, p)

    return time_call(run, repeats) / len(pts)


def bench_hex_points(count, repeats):
    hexa = shapes.convex_hex()
    pts = sampling.interior_points_hex(hexa, count, np.random.default_rng(7))

    def run():
        for p in pts:
            moment_coords_hex(hexa, p)

    return time_call(run, repeats) / count


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = smallsolve.available_backends()
    if len(backends) < 2:
        print(f"only {backends} available; build the extension to compare")

    rows = []
    cases = [
        ("solve 4x4", lambda: bench_raw_solves(4, 2000, args.repeats)),
        ("solve 8x8", lambda: bench_raw_solves(8, 2000, args.repeats)),
        ("quad moment, 101x101 grid", lambda: bench_quad_grid(101, args.repeats)),
        ("hex moment, 2000 points", lambda: bench_hex_points(2000, args.repeats)),
    ]
    for name, fn in cases:
        timings = {}
        for backend in backends:
            smallsolve.set_backend(backend)
            timings[backend] = fn()
        rows.append((name, timings))

    width = max(len(name) for name, _ in rows) + 2
    header = f"{'case':<{width}}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, timings in rows:
        line = f"{name:<{width}}"
        for backend in backends:
            line += f"{timings[backend] * 1e6:>11.2f} us"
        if len(backends) == 2:
            a, b = (timings[b] for b in backends)
            line += f"{b / a:>9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
