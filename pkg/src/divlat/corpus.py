"""Bundled example models.

The package ships a small corpus of ready-made fixtures: three bare
lattices, seven resolution models covering the tabulated singularity
classes, and two curve configurations for dual-graph computations.
Corpus entries are addressed by stem name (`corpus:duval_a1` on the
command line).
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import MissingDataError

_SUFFIX = ".json"


def _corpus_dir() -> Path:
    return Path(str(resources.files("divlat").joinpath("corpus")))


def corpus_names() -> tuple[str, ...]:
    return tuple(sorted(
        p.name[: -len(_SUFFIX)]
        for p in _corpus_dir().iterdir()
        if p.name.endswith(_SUFFIX)
    ))


def corpus_path(name: str) -> Path:
    path = _corpus_dir() / (name + _SUFFIX)
    if not path.is_file():
        raise MissingDataError(
            f"no bundled model named {name!r}; available: {', '.join(corpus_names())}"
        )
    return path


def corpus_lattice_files():
    """Every bundled lattice, standalone ones first, then the lattices
    carried by resolution files (upstairs and derived downstairs)."""
    from . import modelio

    out = []
    for name in corpus_names():
        data = modelio.read_model_file(corpus_path(name))
        kind = data.get("kind")
        if kind == "lattice":
            out.append(modelio.load_lattice(corpus_path(name)))
    for res in corpus_resolution_files():
        out.append(modelio.LatticeFile(
            res.model.upstairs, res.upstairs_ample, res.path,
        ))
        out.append(modelio.LatticeFile(
            res.model.downstairs, res.downstairs_ample, res.path,
        ))
    return out


def corpus_resolution_files():
    from . import modelio

    out = []
    for name in corpus_names():
        data = modelio.read_model_file(corpus_path(name))
        if data.get("kind") == "resolution":
            out.append(modelio.load_resolution(corpus_path(name)))
    return out


def corpus_dualgraph_files():
    from . import modelio

    out = []
    for name in corpus_names():
        data = modelio.read_model_file(corpus_path(name))
        if data.get("kind") == "dualgraph":
            out.append(modelio.load_dualgraph(corpus_path(name)))
    return out


def corpus_lattices():
    """Structurally distinct bundled lattices."""
    seen = []
    for lf in corpus_lattice_files():
        if not any(lf.lattice == other for other in seen):
            seen.append(lf.lattice)
    return seen
