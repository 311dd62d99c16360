"""Versioned JSON file formats for frames, kernels, towers and reports.

Serialization is canonical: fixed key order, one matrix row per line, and
every float written with 17 significant digits (``'%.17g'``) so doubles
round-trip exactly. Complex numbers are ``[re, im]`` pairs. See FORMATS.md.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from typing import Any

import numpy as np

from . import __version__
from .errors import DimensionMismatch, DuplicateLabel, ParseError
from .frames import FrameReport, FrameSystem
from .kernels import KernelMatrix
from .numerics import hermitian_defect

FRAME_FORMAT = "framekit-frame/1"
KERNEL_FORMAT = "framekit-kernel/1"
REPORT_FORMAT = "framekit-report/1"
TOWER_FORMAT = "framekit-tower/1"

HERMITIAN_ERROR = 1e-9
HERMITIAN_WARN = 1e-12


class HermitianWarning(UserWarning):
    """Kernel loaded with an off-Hermitian defect between 1e-12 and 1e-9."""


# ---------------------------------------------------------------------------
# canonical writer


class _Raw(str):
    """Pre-rendered JSON fragment."""


def format_number(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def _pair(z: complex) -> str:
    return f"[{format_number(z.real)}, {format_number(z.imag)}]"


def _complex_row(row) -> _Raw:
    return _Raw("[" + ", ".join(_pair(complex(z)) for z in row) + "]")


def _real_row(row) -> _Raw:
    return _Raw("[" + ", ".join(format_number(x) for x in row) + "]")


def _render(value: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(value, _Raw):
        return str(value)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_render(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, str) and not isinstance(v, _Raw) for v in value):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in value) + "]"
        items = [pad + _render(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(document: dict) -> str:
    return _render(document, 0) + "\n"


def _write(text: str, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# reader helpers


def _read_json(path) -> tuple[dict, bytes]:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        line = getattr(exc, "lineno", "?")
        raise ParseError(f"{path}: invalid JSON (line {line}): {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    return doc, raw


def _field(doc: dict, name: str, path) -> Any:
    if name not in doc:
        raise ParseError(f"{path}: missing field {name!r}")
    return doc[name]


def _check_format(doc: dict, expected: str, path) -> None:
    fmt = _field(doc, "format", path)
    if fmt != expected:
        raise ParseError(f"{path}: unsupported format {fmt!r}, expected {expected!r}")


def _labels(doc: dict, path) -> tuple:
    labels = _field(doc, "labels", path)
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError(f"{path}: field 'labels' must be an array of strings")
    if len(set(labels)) != len(labels):
        dup = next(s for i, s in enumerate(labels) if s in labels[:i])
        raise DuplicateLabel(f"{path}: label {dup!r} appears more than once")
    return tuple(labels)


def _complex_matrix(rows, name: str, path) -> np.ndarray:
    if not isinstance(rows, list):
        raise ParseError(f"{path}: field {name!r} must be an array")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"{path}: {name}[{i}] must be an array")
        vals = []
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
            ):
                raise ParseError(f"{path}: {name}[{i}][{j}] must be a [re, im] number pair")
            vals.append(complex(pair[0], pair[1]))
        out.append(vals)
    return out


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


# ---------------------------------------------------------------------------
# frames


def frame_document(frame: FrameSystem) -> dict:
    return {
        "format": FRAME_FORMAT,
        "space_dim": frame.space_dim,
        "labels": list(frame.labels),
        "vectors": [_complex_row(v) for v in frame.vectors],
    }


def dumps_frame(frame: FrameSystem) -> str:
    return dumps(frame_document(frame))


def save_frame(frame: FrameSystem, path) -> None:
    _write(dumps_frame(frame), path)


def frame_from_document(doc: dict, path="<frame>") -> FrameSystem:
    _check_format(doc, FRAME_FORMAT, path)
    dim = _field(doc, "space_dim", path)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{path}: field 'space_dim' must be a positive integer")
    labels = _labels(doc, path)
    rows = _complex_matrix(_field(doc, "vectors", path), "vectors", path)
    if len(rows) != len(labels):
        raise DimensionMismatch(f"{path}: {len(labels)} labels but {len(rows)} vectors")
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise DimensionMismatch(f"{path}: vectors[{i}] has {len(row)} components, space_dim is {dim}")
    if not rows:
        raise DimensionMismatch(f"{path}: a frame needs at least one vector")
    return FrameSystem(dim, labels, np.array(rows, dtype=np.complex128))


def load_frame(path) -> FrameSystem:
    doc, _ = _read_json(path)
    return frame_from_document(doc, path)


# ---------------------------------------------------------------------------
# kernels


def kernel_document(kernel: KernelMatrix) -> dict:
    return {
        "format": KERNEL_FORMAT,
        "labels": list(kernel.labels),
        "entries": [_complex_row(r) for r in kernel.entries],
    }


def save_kernel(kernel: KernelMatrix, path) -> None:
    _write(dumps(kernel_document(kernel)), path)


def kernel_from_document(doc: dict, path="<kernel>") -> KernelMatrix:
    """Parse a kernel document.

    A Hermitian defect above 1e-9 is a :class:`ParseError`; above 1e-12 the
    kernel loads but a :class:`HermitianWarning` is emitted.
    """
    _check_format(doc, KERNEL_FORMAT, path)
    labels = _labels(doc, path)
    rows = _complex_matrix(_field(doc, "entries", path), "entries", path)
    n = len(rows)
    if n != len(labels) or any(len(r) != n for r in rows):
        raise ParseError(f"{path}: 'entries' must be a square {len(labels)}x{len(labels)} array")
    K = np.array(rows, dtype=np.complex128).reshape(n, n)
    defect = hermitian_defect(K)
    if defect > HERMITIAN_ERROR:
        raise ParseError(f"{path}: kernel is not Hermitian (defect {defect:.3e})")
    if defect > HERMITIAN_WARN:
        warnings.warn(f"{path}: kernel Hermitian defect {defect:.3e}", HermitianWarning, stacklevel=3)
    return KernelMatrix(labels, K)


def load_kernel(path) -> KernelMatrix:
    doc, _ = _read_json(path)
    return kernel_from_document(doc, path)


# ---------------------------------------------------------------------------
# towers


def tower_document(tower) -> dict:
    return {
        "format": TOWER_FORMAT,
        "levels": [
            {
                "level": l,
                "F0": [_complex_row(r) for r in F0],
                "F1": [_complex_row(r) for r in F1],
            }
            for l, (F0, F1) in enumerate(tower.levels, start=1)
        ],
    }


def save_tower(tower, path) -> None:
    _write(dumps(tower_document(tower)), path)


def load_tower(path):
    from .subband import OperatorTower

    doc, _ = _read_json(path)
    _check_format(doc, TOWER_FORMAT, path)
    levels = _field(doc, "levels", path)
    if not isinstance(levels, list):
        raise ParseError(f"{path}: field 'levels' must be an array")
    pairs = []
    for i, entry in enumerate(levels):
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: levels[{i}] must be an object")
        F0 = _complex_matrix(_field(entry, "F0", path), f"levels[{i}].F0", path)
        F1 = _complex_matrix(_field(entry, "F1", path), f"levels[{i}].F1", path)
        pairs.append((np.array(F0, dtype=np.complex128), np.array(F1, dtype=np.complex128)))
    return OperatorTower(tuple(pairs))


# ---------------------------------------------------------------------------
# reports


def report_document(report: FrameReport, input_digest: str = "") -> dict:
    tol = report.tolerances
    return {
        "format": REPORT_FORMAT,
        "classification": report.classification.value,
        "bounds": {"lower": report.bounds.lower, "upper": report.bounds.upper},
        "tight_constant": report.tight_constant,
        "rank": report.rank,
        "space_dim": report.space_dim,
        "count": report.count,
        "frame_operator_spectrum": _real_row(report.frame_operator_spectrum),
        "gram_spectrum": _real_row(report.gram_spectrum),
        "tolerances": {
            "eq_tol": tol.eq_tol,
            "rank_tol_factor": tol.rank_tol_factor,
            "psd_slack": tol.psd_slack,
        },
        "input_digest": input_digest,
        "tool_version": __version__,
    }


def save_report(report: FrameReport, path, input_digest: str = "") -> None:
    _write(dumps(report_document(report, input_digest)), path)


def load_document(path) -> dict:
    """Parse any framekit JSON file, returning the raw document."""
    doc, _ = _read_json(path)
    _field(doc, "format", path)
    return doc
