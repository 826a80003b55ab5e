"""JSON model files: lattices, resolutions, curve configurations.

All three formats carry a "kind" discriminator. Rational entries are
integers or normalized "p/q" strings; JSON floats are rejected so no
binary rounding can leak into the exact arithmetic. A resolution file
either inlines its upstairs lattice or references another lattice file
by path (relative to the referencing file, or a ``corpus:`` name); the
downstairs matrix may be omitted, in which case it is derived from the
projection formula.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import corpus
from .dualgraph import CurveConfiguration, DualGraph, SingularPoint, build_graph
from .errors import DivlatError, InputError, LatticeError
from .lattice import Divisor, IntersectionLattice, rational_json
from .resolution import ResolutionModel, derive_downstairs_matrix

_LATTICE_KEYS = {"kind", "name", "primes", "matrix", "genus", "canonical", "smooth", "ample"}
_RESOLUTION_KEYS = {"kind", "name", "upstairs", "downstairs", "exceptional", "transform", "singclass"}
_DOWNSTAIRS_KEYS = {"name", "primes", "matrix", "ample"}
_DUALGRAPH_KEYS = {"kind", "name", "components", "singular_points"}
_SINGPOINT_KEYS = {"name", "branches"}


@dataclass(frozen=True)
class LatticeFile:
    lattice: IntersectionLattice
    ample: Divisor | None
    path: str | None


@dataclass(frozen=True)
class ResolutionFile:
    model: ResolutionModel
    singclass: str | None
    upstairs_ample: Divisor | None
    downstairs_ample: Divisor | None
    path: str | None


@dataclass(frozen=True)
class DualGraphFile:
    name: str
    config: CurveConfiguration
    graph: DualGraph
    path: str | None


def locate(ref: str | Path, base: Path | None = None) -> Path:
    """Resolve a model reference: a ``corpus:NAME`` alias or a path,
    relative paths taken against ``base`` when given."""
    if isinstance(ref, str) and ref.startswith("corpus:"):
        return corpus.corpus_path(ref[len("corpus:"):])
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return path


def read_model_file(path: Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object at top level")
    return data


def _check_keys(data: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise InputError(f"{where}: unknown keys: {', '.join(unknown)}")


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise InputError(
            f"{where}: floats are not accepted, use integers or 'p/q' strings"
        )
    try:
        from .lattice import as_rational

        return as_rational(value)
    except LatticeError as exc:
        raise InputError(f"{where}: {exc.message}") from exc


def _rational_vector(values, n: int, where: str) -> list[Fraction]:
    if not isinstance(values, list) or len(values) != n:
        raise InputError(f"{where}: expected a list of {n} entries")
    return [_rational(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _string_list(values, where: str) -> list[str]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise InputError(f"{where}: expected a list of strings")
    return list(values)


def lattice_from_data(data: dict, where: str = "lattice") -> tuple[IntersectionLattice, Divisor | None]:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object")
    _check_keys(data, _LATTICE_KEYS, where)
    if data.get("kind", "lattice") != "lattice":
        raise InputError(f"{where}: kind must be 'lattice', got {data.get('kind')!r}")
    if "primes" not in data or "matrix" not in data:
        raise InputError(f"{where}: 'primes' and 'matrix' are required")
    primes = _string_list(data["primes"], f"{where}.primes")
    n = len(primes)
    matrix_data = data["matrix"]
    if not isinstance(matrix_data, list) or len(matrix_data) != n:
        raise InputError(f"{where}.matrix: expected {n} rows")
    matrix = [
        _rational_vector(row, n, f"{where}.matrix[{i}]")
        for i, row in enumerate(matrix_data)
    ]
    genus = canonical = None
    if "genus" in data:
        genus = _rational_vector(data["genus"], n, f"{where}.genus")
    if "canonical" in data:
        canonical = _rational_vector(data["canonical"], n, f"{where}.canonical")
    smooth = data.get("smooth", False)
    if not isinstance(smooth, bool):
        raise InputError(f"{where}.smooth: expected true or false")
    lattice = IntersectionLattice(
        primes,
        matrix,
        genus=genus,
        canonical=canonical,
        smooth=smooth,
        name=data.get("name", ""),
    )
    ample = None
    if "ample" in data:
        ample = lattice.divisor(_rational_vector(data["ample"], n, f"{where}.ample"))
    return lattice, ample


def load_lattice(ref: str | Path, base: Path | None = None) -> LatticeFile:
    path = locate(ref, base)
    data = read_model_file(path)
    lattice, ample = lattice_from_data(data, str(path))
    return LatticeFile(lattice, ample, str(path))


def resolution_from_data(data: dict, where: str, base: Path | None) -> ResolutionFile:
    _check_keys(data, _RESOLUTION_KEYS, where)
    if data.get("kind", "resolution") != "resolution":
        raise InputError(f"{where}: kind must be 'resolution', got {data.get('kind')!r}")
    for key in ("upstairs", "downstairs", "exceptional", "transform"):
        if key not in data:
            raise InputError(f"{where}: {key!r} is required")
    up_data = data["upstairs"]
    if isinstance(up_data, str):
        try:
            up_file = load_lattice(up_data, base)
        except InputError as exc:
            raise InputError(
                f"{where}.upstairs: reference {up_data!r} did not resolve: {exc.message}"
            ) from exc
        upstairs, up_ample = up_file.lattice, up_file.ample
    else:
        upstairs, up_ample = lattice_from_data(up_data, f"{where}.upstairs")
    down_data = data["downstairs"]
    if not isinstance(down_data, dict):
        raise InputError(f"{where}.downstairs: expected a JSON object")
    _check_keys(down_data, _DOWNSTAIRS_KEYS, f"{where}.downstairs")
    if "primes" not in down_data:
        raise InputError(f"{where}.downstairs: 'primes' is required")
    down_primes = _string_list(down_data["primes"], f"{where}.downstairs.primes")
    exceptional = _string_list(data["exceptional"], f"{where}.exceptional")
    transform = data["transform"]
    if (
        not isinstance(transform, dict)
        or not all(isinstance(k, str) and isinstance(v, str) for k, v in transform.items())
    ):
        raise InputError(f"{where}.transform: expected an object mapping prime names")
    if "matrix" in down_data:
        down_lattice, down_ample = lattice_from_data(
            {"primes": down_primes, **{k: down_data[k] for k in ("name", "matrix", "ample") if k in down_data}},
            f"{where}.downstairs",
        )
    else:
        matrix = derive_downstairs_matrix(upstairs, exceptional, transform, down_primes)
        down_lattice = IntersectionLattice(
            down_primes, matrix, name=down_data.get("name", "")
        )
        down_ample = None
        if "ample" in down_data:
            down_ample = down_lattice.divisor(_rational_vector(
                down_data["ample"], len(down_primes), f"{where}.downstairs.ample"
            ))
    singclass = data.get("singclass")
    if singclass is not None and not isinstance(singclass, str):
        raise InputError(f"{where}.singclass: expected a string")
    model = ResolutionModel(
        upstairs,
        down_lattice,
        exceptional,
        transform,
        name=data.get("name", ""),
    )
    return ResolutionFile(model, singclass, up_ample, down_ample, None)


def load_resolution(ref: str | Path, base: Path | None = None) -> ResolutionFile:
    path = locate(ref, base)
    data = read_model_file(path)
    loaded = resolution_from_data(data, str(path), Path(path).parent)
    return ResolutionFile(
        loaded.model, loaded.singclass, loaded.upstairs_ample,
        loaded.downstairs_ample, str(path),
    )


def dualgraph_from_data(data: dict, where: str) -> tuple[str, CurveConfiguration]:
    _check_keys(data, _DUALGRAPH_KEYS, where)
    if data.get("kind", "dualgraph") != "dualgraph":
        raise InputError(f"{where}: kind must be 'dualgraph', got {data.get('kind')!r}")
    for key in ("components", "singular_points"):
        if key not in data:
            raise InputError(f"{where}: {key!r} is required")
    components = _string_list(data["components"], f"{where}.components")
    points_data = data["singular_points"]
    if not isinstance(points_data, list):
        raise InputError(f"{where}.singular_points: expected a list")
    points = []
    for i, pd in enumerate(points_data):
        pw = f"{where}.singular_points[{i}]"
        if not isinstance(pd, dict):
            raise InputError(f"{pw}: expected a JSON object")
        _check_keys(pd, _SINGPOINT_KEYS, pw)
        if "name" not in pd or "branches" not in pd:
            raise InputError(f"{pw}: 'name' and 'branches' are required")
        if not isinstance(pd["name"], str):
            raise InputError(f"{pw}.name: expected a string")
        points.append(SingularPoint(
            pd["name"], tuple(_string_list(pd["branches"], f"{pw}.branches"))
        ))
    config = CurveConfiguration(tuple(components), tuple(points))
    return data.get("name", ""), config


def load_dualgraph(ref: str | Path, base: Path | None = None) -> DualGraphFile:
    path = locate(ref, base)
    data = read_model_file(path)
    name, config = dualgraph_from_data(data, str(path))
    return DualGraphFile(name, config, build_graph(config), str(path))


def load_any(ref: str | Path, base: Path | None = None):
    """Load a model file of any kind, dispatching on its discriminator."""
    path = locate(ref, base)
    data = read_model_file(path)
    kind = data.get("kind")
    if kind == "lattice":
        return load_lattice(path)
    if kind == "resolution":
        return load_resolution(path)
    if kind == "dualgraph":
        return load_dualgraph(path)
    raise InputError(f"{path}: unknown model kind {kind!r}")


# --- serialization back out ---

def lattice_to_data(lattice: IntersectionLattice, ample: Divisor | None = None) -> dict:
    data: dict = {
        "kind": "lattice",
        "name": lattice.name,
        "primes": list(lattice.primes),
        "matrix": [[rational_json(v) for v in row] for row in lattice.matrix],
    }
    if lattice.genus is not None:
        data["genus"] = [rational_json(g) for g in lattice.genus]
    if lattice.canonical is not None:
        data["canonical"] = [rational_json(c) for c in lattice.canonical]
    if lattice.smooth:
        data["smooth"] = True
    if ample is not None:
        data["ample"] = [rational_json(c) for c in ample.coeffs]
    return data


def resolution_to_data(res: ResolutionFile) -> dict:
    model = res.model
    down = model.downstairs
    downstairs: dict = {
        "name": down.name,
        "primes": list(down.primes),
        "matrix": [[rational_json(v) for v in row] for row in down.matrix],
    }
    if res.downstairs_ample is not None:
        downstairs["ample"] = [rational_json(c) for c in res.downstairs_ample.coeffs]
    data: dict = {
        "kind": "resolution",
        "name": model.name,
        "upstairs": lattice_to_data(model.upstairs, res.upstairs_ample),
        "downstairs": downstairs,
        "exceptional": list(model.exceptional_primes()),
        "transform": {
            down.primes[i]: model.upstairs.primes[model.transform[i]]
            for i in range(down.n)
        },
    }
    if res.singclass is not None:
        data["singclass"] = res.singclass
    return data


def dualgraph_to_data(graph_file: DualGraphFile) -> dict:
    return {
        "kind": "dualgraph",
        "name": graph_file.name,
        "components": list(graph_file.config.components),
        "singular_points": [
            {"name": p.name, "branches": list(p.branches)}
            for p in graph_file.config.singularities
        ],
    }
