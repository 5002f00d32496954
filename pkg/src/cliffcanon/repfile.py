"""JSON interchange for representations and change-of-basis matrices.

Floats are written with ``repr``, which is the shortest decimal string that
parses back to the same binary64 value, so a write/read cycle is lossless.
Matrices are written one row per line to keep golden files diffable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, TextIO

import numpy as np

from .construct import CanonicalPackage, Representation
from .errors import CliffordError


class RepFileError(CliffordError, ValueError):
    """Malformed representation file; ``field`` names the first bad entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RepFile:
    r: int
    s: int
    dim: int
    generators: list[np.ndarray]
    class_sign: int | None = None
    metadata: dict[str, str] = field(default_factory=dict)
    extra: dict[str, list[np.ndarray]] = field(default_factory=dict)

    def to_representation(self) -> Representation:
        return Representation((self.r, self.s), tuple(self.generators), self.dim)

    @classmethod
    def from_representation(cls, rep: Representation, class_sign: int | None = None,
                            metadata: dict[str, str] | None = None,
                            extra: dict[str, list[np.ndarray]] | None = None) -> "RepFile":
        return cls(rep.r, rep.s, rep.dim, [np.asarray(g) for g in rep.generators],
                   class_sign, dict(metadata or {}), dict(extra or {}))

    @classmethod
    def from_package(cls, pkg: CanonicalPackage, metadata=None) -> "RepFile":
        extra = {}
        if pkg.commutant:
            extra["commutant"] = list(pkg.commutant)
        if pkg.complementary:
            extra["complementary"] = list(pkg.complementary)
        return cls.from_representation(pkg.rep, pkg.class_sign, metadata, extra)


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite entry {x}")
    if x == 0:
        return "0.0"  # no signed zeros in output
    return repr(x)


def format_matrix(m: np.ndarray, indent: str) -> str:
    m = np.asarray(m, dtype=float)
    rows = [indent + "  [" + ", ".join(_num(v) for v in row) + "]" for row in m]
    return "[\n" + ",\n".join(rows) + "\n" + indent + "]"


def _format_list(mats, indent: str) -> str:
    if not mats:
        return "[]"
    inner = indent + "  "
    return "[\n" + ",\n".join(inner + format_matrix(m, inner) for m in mats) + "\n" + indent + "]"


def dumps(rf: RepFile) -> str:
    parts = [f'"r": {int(rf.r)}', f'"s": {int(rf.s)}', f'"dim": {int(rf.dim)}']
    if rf.class_sign is not None:
        parts.append(f'"class_sign": {int(rf.class_sign)}')
    meta = {str(k): str(v) for k, v in sorted(rf.metadata.items())}
    parts.append(f'"metadata": {json.dumps(meta, sort_keys=True)}')
    parts.append(f'"generators": {_format_list(rf.generators, "  ")}')
    for name in sorted(rf.extra):
        parts.append(f"{json.dumps(name)}: {_format_list(rf.extra[name], '  ')}")
    return "{\n  " + ",\n  ".join(parts) + "\n}\n"


def dumps_matrices(named: dict[str, np.ndarray]) -> str:
    parts = []
    for name, m in named.items():
        if np.ndim(m) == 0:
            parts.append(f"{json.dumps(name)}: {json.dumps(m)}")
        else:
            parts.append(f"{json.dumps(name)}: {format_matrix(m, '  ')}")
    return "{\n  " + ",\n  ".join(parts) + "\n}\n"


def _int_field(obj: dict, name: str, minimum: int) -> int:
    if name not in obj:
        raise RepFileError(name, "missing")
    v = obj[name]
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise RepFileError(name, f"expected an integer >= {minimum}, got {v!r}")
    return v


def _matrix(value: Any, dim: int, name: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise RepFileError(name, f"expected {dim} rows")
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            raise RepFileError(f"{name}[{i}]", f"expected a row of length {dim}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise RepFileError(f"{name}[{i}][{j}]", f"expected a finite number, got {x!r}")
    return np.array(value, dtype=float)


def _matrix_list(value: Any, dim: int, name: str, count: int | None = None) -> list[np.ndarray]:
    if not isinstance(value, list):
        raise RepFileError(name, "expected a list of matrices")
    if count is not None and len(value) != count:
        raise RepFileError(name, f"expected {count} matrices, got {len(value)}")
    return [_matrix(m, dim, f"{name}[{k}]") for k, m in enumerate(value)]


def loads(text: str) -> RepFile:
    """Parse and validate a representation file.

    Raises
    ------
    RepFileError
        Naming the first field that is missing or malformed.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RepFileError("<json>", str(exc)) from None
    if not isinstance(obj, dict):
        raise RepFileError("<root>", "expected a JSON object")
    r = _int_field(obj, "r", 0)
    s = _int_field(obj, "s", 0)
    dim = _int_field(obj, "dim", 1)
    class_sign = obj.get("class_sign")
    if class_sign is not None and (isinstance(class_sign, bool) or class_sign not in (1, -1)):
        raise RepFileError("class_sign", f"expected +1 or -1, got {class_sign!r}")
    meta = obj.get("metadata", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise RepFileError("metadata", "expected a map of strings")
    if "generators" not in obj:
        raise RepFileError("generators", "missing")
    gens = _matrix_list(obj["generators"], dim, "generators", r + s)
    extra = {}
    for name in ("commutant", "complementary"):
        if name in obj:
            extra[name] = _matrix_list(obj[name], dim, name)
    return RepFile(r, s, dim, gens, class_sign, dict(meta), extra)


def loads_matrix(text: str, name: str = "p") -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RepFileError("<json>", str(exc)) from None
    if not isinstance(obj, dict) or name not in obj or not isinstance(obj[name], list):
        raise RepFileError(name, "missing")
    return _matrix(obj[name], len(obj[name]), name)


def read(fp: TextIO) -> RepFile:
    return loads(fp.read())


def write(rf: RepFile, fp: TextIO) -> None:
    fp.write(dumps(rf))
