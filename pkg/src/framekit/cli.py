"""Command-line front end.

Exit codes: 0 success (or witness found), 1 valid negative result (no
witness, frame only spans a proper subspace), 2 error. Logs go to stderr;
stdout carries results only.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__, io
from .errors import FramekitError
from .frames import (
    Classification,
    FrameSystem,
    canonical_parseval,
    classify,
    gram_matrix,
    reconstruct,
    tensor,
)
from .generators import SincFrameSpec, haar_tower, harmonic_frame, random_bessel, sinc_frame
from .kernels import KernelMatrix, kolmogorov_factorize
from .numerics import ToleranceProfile
from .subband import subdivide
from .symmetry import DEFAULT_MAX_SIZE, phase_equivalence

log = logging.getLogger("framekit")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    tol: Optional[float] = None
    output_path: Optional[str] = None
    json_mode: bool = False
    seed: Optional[int] = None

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")

    def tolerance(self) -> ToleranceProfile:
        return ToleranceProfile() if self.tol is None else ToleranceProfile(eq_tol=self.tol)


def _env_tol() -> Optional[float]:
    raw = os.environ.get("FRAMEKIT_TOL")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"FRAMEKIT_TOL={raw!r} is not a number") from None


def _emit(text: str, config: CliConfig) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        log.info("wrote %s", config.output_path)
    else:
        sys.stdout.write(text)


def _print(payload: dict, text: str, config: CliConfig) -> None:
    """Result on stdout: canonical JSON in --json mode, plain text otherwise."""
    if config.json_mode:
        sys.stdout.write(io.dumps(payload))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load_kernel_like(path: str) -> tuple[KernelMatrix, str]:
    doc = io.load_document(path)
    if doc["format"] == io.FRAME_FORMAT:
        frame = io.frame_from_document(doc, path)
        return KernelMatrix(frame.labels, gram_matrix(frame)), "frame"
    return io.kernel_from_document(doc, path), "kernel"


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args, config: CliConfig) -> int:
    kind = args.kind
    if kind == "harmonic":
        _need(args, "n")
        frame = harmonic_frame(args.n)
    elif kind == "sinc":
        _need(args, "p", "window", "extent")
        frame = sinc_frame(SincFrameSpec(args.p, args.window, args.extent))
    elif kind == "random":
        seed = args.seed if args.seed is not None else config.seed
        _need(args, "dim", "count")
        if seed is None:
            raise UsageError("random frames need --seed")
        frame = random_bessel(args.dim, args.count, seed)
    else:
        _need(args, "levels")
        _emit(io.dumps(io.tower_document(haar_tower(args.levels))), config)
        return EXIT_OK
    _emit(io.dumps_frame(frame), config)
    return EXIT_OK


def _need(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"gen {args.kind} requires {', '.join(missing)}")


def cmd_analyze(args, config: CliConfig) -> int:
    frame = io.load_frame(args.frame)
    report = classify(frame, config.tolerance())
    doc = io.report_document(report, io.file_digest(args.frame))
    text = io.dumps(doc)
    if config.output_path:
        _emit(text, config)
    if config.json_mode:
        sys.stdout.write(text)
    elif not config.output_path:
        tc = "-" if report.tight_constant is None else io.format_number(report.tight_constant)
        sys.stdout.write(
            f"classification: {report.classification.value}\n"
            f"bounds: {io.format_number(report.bounds.lower)} {io.format_number(report.bounds.upper)}\n"
            f"tight_constant: {tc}\n"
            f"rank: {report.rank} of {report.space_dim}\n"
        )
    if report.classification is Classification.FRAME_ON_SPAN:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_canonical(args, config: CliConfig) -> int:
    frame = io.load_frame(args.frame)
    _emit(io.dumps_frame(canonical_parseval(frame, config.tolerance())), config)
    return EXIT_OK


def cmd_tensor(args, config: CliConfig) -> int:
    a, b = io.load_frame(args.a), io.load_frame(args.b)
    _emit(io.dumps_frame(tensor(a, b)), config)
    return EXIT_OK


def cmd_factorize(args, config: CliConfig) -> int:
    kernel = io.load_kernel(args.kernel)
    _emit(io.dumps_frame(kolmogorov_factorize(kernel, config.tolerance())), config)
    return EXIT_OK


def _parse_vector(raw: str) -> np.ndarray:
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = [float(x) for x in raw.split(",")]
    out = []
    for x in value:
        if isinstance(x, list) and len(x) == 2:
            out.append(complex(x[0], x[1]))
        elif isinstance(x, (int, float)):
            out.append(complex(x))
        else:
            raise UsageError(f"cannot parse vector component {x!r}")
    return np.array(out, dtype=np.complex128)


def cmd_reconstruct(args, config: CliConfig) -> int:
    frame = io.load_frame(args.frame)
    try:
        f = _parse_vector(args.vector)
    except ValueError as exc:
        raise UsageError(f"bad --vector: {exc}") from None
    if args.c <= 0:
        raise UsageError("--c must be positive")
    g, err = reconstruct(frame, f, args.c)
    payload = {"reconstruction": io._complex_row(g), "error": err}
    text = "reconstruction: " + " ".join(io._pair(complex(z)) for z in g) + f"\nerror: {io.format_number(err)}"
    if config.output_path:
        _emit(io.dumps(payload), config)
    _print(payload, text, config)
    return EXIT_OK


def cmd_equiv(args, config: CliConfig) -> int:
    K1, _ = _load_kernel_like(args.a)
    K2, _ = _load_kernel_like(args.b)
    witness = phase_equivalence(
        K1, K2, allow_phases=args.phases, max_size=args.max_size, tol=config.tolerance()
    )
    if witness is None:
        payload = {"equivalent": False, "witness": None}
        text = "none"
    else:
        mapping = witness.label_mapping(K1.labels, K2.labels)
        phases = None if witness.phases is None else io._complex_row(witness.phases)
        payload = {
            "equivalent": True,
            "witness": {"permutation": mapping, "phases": phases},
        }
        lines = [f"{s} -> {t}" for s, t in mapping.items()]
        if witness.phases is not None:
            lines.append("phases: " + " ".join(io._pair(complex(z)) for z in witness.phases))
        text = "\n".join(lines)
    if config.output_path:
        _emit(io.dumps(payload), config)
    _print(payload, text, config)
    return EXIT_OK if witness is not None else EXIT_NEGATIVE


def cmd_subdivide(args, config: CliConfig) -> int:
    frame = io.load_frame(args.frame)
    if args.levels < 1:
        raise UsageError("--levels must be at least 1")
    level = frame.space_dim.bit_length() - 1
    tower = haar_tower(level + args.levels)
    sub = subdivide(frame, tower, args.levels)
    _emit(io.dumps_frame(sub.vectors), config)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--tol", type=float, default=default, help="equality tolerance (overrides FRAMEKIT_TOL)")
    parser.add_argument("--json", dest="json_mode", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="machine-readable output on stdout")
    parser.add_argument("-o", "--output", dest="output_path", default=default, help="output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"framekit {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = add("gen", cmd_gen, "generate a frame or operator tower")
    p.add_argument("kind", choices=["harmonic", "sinc", "random", "haar-tower"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--extent", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--levels", type=int)

    p = add("analyze", cmd_analyze, "classify a frame and report bounds and spectra")
    p.add_argument("frame")

    p = add("canonical", cmd_canonical, "canonical Parseval frame")
    p.add_argument("frame")

    p = add("tensor", cmd_tensor, "tensor product of two frames")
    p.add_argument("a")
    p.add_argument("b")

    p = add("factorize", cmd_factorize, "factor a PSD kernel into frame vectors")
    p.add_argument("kernel")

    p = add("reconstruct", cmd_reconstruct, "reconstruct a vector as c V*V f")
    p.add_argument("frame")
    p.add_argument("--vector", required=True, help="JSON array of numbers or [re, im] pairs")
    p.add_argument("--c", type=float, required=True, help="tight-frame constant")

    p = add("equiv", cmd_equiv, "search for a unitary equivalence between two frames or kernels")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--phases", action="store_true", help="allow unimodular phase factors")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)

    p = add("subdivide", cmd_subdivide, "refine a frame through the Haar subband tower")
    p.add_argument("frame")
    p.add_argument("--levels", type=int, required=True, help="number of subband levels K")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
    )
    try:
        tol = args.tol if args.tol is not None else _env_tol()
        config = CliConfig(tol=tol, output_path=args.output_path, json_mode=args.json_mode,
                           seed=getattr(args, "seed", None))
        return args.func(args, config)
    except (UsageError, FramekitError, OSError, ValueError) as exc:
        print(f"framekit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
