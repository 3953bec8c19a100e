"""Command-line interface.

Subcommands: ``filter`` (fast Gaussian blur of a PGM image), ``optimize``
(compute approximation parameters and write a parameter file), ``bench``
(speed/accuracy CSV over an image corpus), ``synth`` (generate test
images) and ``psnr`` (compare two images).
"""

from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import approx, oracle, params, pgm, synth
from .filtering import separable_filter_2d

CSV_HEADER = [
    "method",
    "k",
    "sigma",
    "image_id",
    "wall_time_ns",
    "psnr_db",
    "adds_per_px",
    "muls_per_px",
]


@dataclass(frozen=True)
class BenchRecord:
    method: str
    k: int
    sigma: float
    image_id: str
    wall_time_ns: int
    psnr_db: float
    adds_per_px: float
    muls_per_px: float

    def row(self) -> list:
        return [
            self.method,
            self.k,
            repr(self.sigma),
            self.image_id,
            self.wall_time_ns,
            "inf" if math.isinf(self.psnr_db) else repr(self.psnr_db),
            repr(self.adds_per_px),
            repr(self.muls_per_px),
        ]


def _scaled_kernel(k: int, sigma: float, params_path=None) -> approx.SliceKernel:
    if params_path is not None:
        loaded = params.load_params(params_path)
        base = approx.to_slices(loaded.partition, loaded.sigma0)
    else:
        partition, sigma0 = approx.table_defaults(k)
        base = approx.to_slices(partition, sigma0)
    return approx.scale_to_sigma(base, sigma)


def cmd_filter(args) -> int:
    kernel = _scaled_kernel(args.k, args.sigma, args.params)
    image, maxval = pgm.read_pgm(args.input)
    out = separable_filter_2d(image, kernel, parallel=args.parallel)
    pgm.write_pgm(args.output, out, maxval)
    return 0


def cmd_optimize(args) -> int:
    n = args.samples
    sigma0 = n / math.pi
    target = approx.sample_gaussian(sigma0, n)
    if args.model == "qf":
        model = approx.build_autocorr(n - 1)
    else:
        model = approx.identity_model(n - 1)
    partition = approx.search_partitions(target, args.k, model)
    e2 = approx.quadratic_error(
        target, approx.partition_profile(partition, n), model
    )
    params.save_params(
        args.params, params.FilterParams(partition, sigma0, args.model, e2)
    )
    return 0


def _median_time_ns(fn, reps: int) -> int:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    return int(statistics.median(times))


def _l2_partitions(ks) -> dict[int, approx.Partition]:
    n = 100
    target = approx.sample_gaussian(n / math.pi, n)
    model = approx.identity_model(n - 1)
    return {k: approx.search_partitions(target, k, model) for k in ks}


def cmd_bench(args) -> int:
    corpus = sorted(Path(args.corpus_dir).glob("*.pgm"))
    if not corpus:
        raise FileNotFoundError(f"no .pgm images in {args.corpus_dir}")
    if args.reps < 3:
        raise ValueError("need at least 3 repetitions")
    images = [(p.stem, pgm.read_pgm(p)[0]) for p in corpus]
    l2_parts = _l2_partitions(args.k) if args.l2 else {}
    suffix = "-parallel" if args.parallel else ""

    records = []
    for image_id, image in images:
        for sigma in args.sigma:
            t_exact = _median_time_ns(
                lambda: oracle.exact_gaussian_2d(image, sigma), args.reps
            )
            reference = oracle.exact_gaussian_2d(image, sigma)
            taps = oracle.gaussian_taps(sigma).size
            records.append(
                BenchRecord(
                    "exact" + suffix, 0, sigma, image_id, t_exact, oracle.PSNR_INF,
                    2.0 * (taps - 1), 2.0 * taps,
                )
            )
            arms = [("slices-qf", {k: approx.table_defaults(k)[0] for k in args.k})]
            if args.l2:
                arms.append(("slices-l2", l2_parts))
            for method, parts in arms:
                for k in args.k:
                    base = approx.to_slices(parts[k], approx.SIGMA0)
                    kernel = approx.scale_to_sigma(base, sigma)
                    run = lambda: separable_filter_2d(
                        image, kernel, parallel=args.parallel
                    )
                    t = _median_time_ns(run, args.reps)
                    records.append(
                        BenchRecord(
                            method + suffix, k, sigma, image_id, t,
                            oracle.psnr(run(), reference),
                            4.0 * k, 2.0 * k,
                        )
                    )

    with open(args.csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.row())
    return 0


def cmd_synth(args) -> int:
    image = synth.make_image(args.kind, args.width, args.height, args.seed)
    pgm.write_pgm(args.output, image)
    return 0


def cmd_psnr(args) -> int:
    a, _ = pgm.read_pgm(args.image_a)
    b, _ = pgm.read_pgm(args.image_b)
    value = oracle.psnr(a, b)
    print("inf" if math.isinf(value) else repr(value))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliceblur",
        description="Constant-time Gaussian filtering with running sums",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="blur a PGM image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--k", type=int, default=3, choices=(3, 4, 5))
    p.add_argument("--params", default=None, help="parameter file (overrides --k)")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(fn=cmd_filter)

    p = sub.add_parser("optimize", help="compute approximation parameters")
    p.add_argument("--k", type=int, required=True, choices=range(1, 6))
    p.add_argument("--model", choices=("qf", "l2"), default="qf")
    p.add_argument("--params", required=True, help="output parameter file")
    p.add_argument("--samples", type=int, default=100, help="half-kernel samples")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("bench", help="benchmark a PGM corpus, write CSV")
    p.add_argument("corpus_dir")
    p.add_argument("--sigma", type=float, action="append", required=True)
    p.add_argument("--k", type=int, action="append", required=True)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--csv", required=True)
    p.add_argument("--l2", action="store_true", help="add l2-optimized rows")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("synth", help="generate a synthetic PGM image")
    p.add_argument("kind", choices=synth.KINDS)
    p.add_argument("output")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("psnr", help="PSNR between two PGM images")
    p.add_argument("image_a")
    p.add_argument("image_b")
    p.set_defaults(fn=cmd_psnr)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, ValueError) as exc:
        print(f"sliceblur: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
