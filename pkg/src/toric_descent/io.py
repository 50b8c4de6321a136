"""JSON input and output for fans, lattices, field models and omega sets."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .fan import Fan, FanError
from .glattice import FiniteMatrixGroup, GLattice, GroupError, LatticeError
from .zmodule import IntMatrix


class InputError(ValueError):
    """Malformed or unreadable input (CLI exit code 1)."""


BUNDLED_KINDS = ("fans", "lattices", "models")


def _read(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    try:
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _int_rows(x: Any, what: str) -> list[list[int]]:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise InputError(f"{what} must be a list of integer lists")
    try:
        return [[_int(v) for v in r] for r in x]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must contain integers") from exc


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(v)
    return v


def _matrix(rows: list[list[int]], what: str) -> IntMatrix:
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InputError(f"{what} must be a non-empty rectangular matrix")
    return IntMatrix.from_rows(rows, cols=len(rows[0]))


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------


def fan_from_dict(d: dict) -> Fan:
    try:
        rank = d["rank"]
        rays = _int_rows(d["rays"], "rays")
        cones = _int_rows(d["max_cones"] if "max_cones" in d else d["cones"], "max_cones")
    except KeyError as exc:
        if exc.args[0] == "cones":
            raise InputError("fan is missing the field 'max_cones'") from exc
        raise InputError(f"fan is missing the field {exc.args[0]!r}") from exc
    if not isinstance(rank, int) or rank < 1:
        raise InputError("rank must be a positive integer")
    if any(len(r) != rank for r in rays):
        raise InputError("every ray must have length rank")
    if any(not (0 <= i < len(rays)) for c in cones for i in c):
        raise InputError("cone refers to a ray index out of range")
    dm = d.get("degree_matrix")
    return Fan.make(rank, rays, cones, name=str(d.get("name", "")),
                    degree_matrix=None if dm is None else _int_rows(dm, "degree_matrix"),
                    class_names=d.get("class_names"))


def load_fan(source: Union[str, Path, dict]) -> Fan:
    return fan_from_dict(_read(source))


def fan_to_dict(f: Fan) -> dict:
    return f.to_json()


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


def lattice_from_dict(d: dict) -> GLattice:
    """A G-lattice from matrices of the generators' action.

    ``group.generators`` optionally gives a faithful matrix group for G; by
    default the lattice action itself is taken as the group.
    """
    if "generators" not in d:
        raise InputError("lattice is missing the field 'generators'")
    gens = [_matrix(_int_rows(g, "lattice generator"), "lattice generator") for g in d["generators"]]
    rank = d.get("rank", gens[0].rows if gens else None)
    if rank is None:
        raise InputError("lattice without generators needs a rank")
    if any(g.shape != (rank, rank) for g in gens):
        raise InputError("lattice generators must be rank x rank")
    group_gens = None
    if "group" in d:
        group_gens = [_matrix(_int_rows(g, "group generator"), "group generator")
                      for g in d["group"].get("generators", [])]
        if len(group_gens) != len(gens):
            raise InputError("group and lattice need the same number of generators")
    try:
        return GLattice.from_generators(gens, group_generators=group_gens, rank=rank)
    except (GroupError, LatticeError) as exc:
        raise InputError(str(exc)) from exc


def load_lattice(source: Union[str, Path, dict]) -> GLattice:
    return lattice_from_dict(_read(source))


# ---------------------------------------------------------------------------
# field models and omega
# ---------------------------------------------------------------------------


def model_from_dict(d: dict):
    from .descent import DescentError, GaloisModel
    kind = d.get("kind", "abstract")
    try:
        if kind == "real":
            return GaloisModel.real()
        if kind == "finite":
            return GaloisModel.finite(int(d["m"]))
        if kind != "abstract":
            raise InputError(f"unknown model kind {kind!r}")
        raw = d["group"]["generators"] if "group" in d else d["generators"]
        gens = [_matrix(_int_rows(g, "Gamma generator"), "Gamma generator") for g in raw]
        brauer = {int(k): [int(x) for x in v] for k, v in d["brauer"].items()}
        return GaloisModel.abstract(gens, brauer)
    except (KeyError, TypeError) as exc:
        if isinstance(exc, TypeError):
            raise InputError("malformed model") from exc
        raise InputError(f"model is missing the field {exc.args[0]!r}") from exc
    except (DescentError, GroupError) as exc:
        raise InputError(str(exc)) from exc


def load_model(source: Union[str, Path, dict]):
    return model_from_dict(_read(source))


def load_omega_classes(source: Union[str, Path, dict]) -> list[list[int]]:
    d = _read(source)
    classes = d.get("classes") if isinstance(d, dict) else d
    if classes is None:
        raise InputError("omega file needs a 'classes' list")
    return _int_rows(classes, "omega classes")


def parse_int_vector(text: str) -> tuple[int, ...]:
    """'1,-2,0' or '[1,-2,0]' to a tuple."""
    t = text.strip().strip("[]()")
    try:
        return tuple(int(x) for x in t.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"not an integer vector: {text!r}") from exc


# ---------------------------------------------------------------------------
# bundled data
# ---------------------------------------------------------------------------


def _bundled_dir(kind: str):
    return resources.files("toric_descent") / "data" / kind


def bundled_names(kind: str = "fans") -> list[str]:
    return sorted(p.name[:-5] for p in _bundled_dir(kind).iterdir() if p.name.endswith(".json"))


def bundled_json(name: str, kind: str = "fans") -> dict:
    p = _bundled_dir(kind) / f"{name}.json"
    if not p.is_file():
        raise InputError(f"no bundled {kind[:-1]} named {name!r}")
    return json.loads(p.read_text(encoding="utf-8"))


def bundled_fan(name: str) -> Fan:
    return fan_from_dict(bundled_json(name, "fans"))


def bundled_lattice(name: str) -> GLattice:
    return lattice_from_dict(bundled_json(name, "lattices"))


def resolve_fan(arg: str) -> Fan:
    """A file path, or the name of a bundled fan."""
    if Path(arg).is_file():
        return load_fan(arg)
    if arg in bundled_names("fans"):
        return bundled_fan(arg)
    raise InputError(f"{arg}: no such file or bundled fan")


def resolve_lattice(arg: str) -> GLattice:
    if Path(arg).is_file():
        return load_lattice(arg)
    if arg in bundled_names("lattices"):
        return bundled_lattice(arg)
    raise InputError(f"{arg}: no such file or bundled lattice")


def schema(name: str) -> dict:
    p = resources.files("toric_descent") / "schemas" / f"{name}.json"
    return json.loads(p.read_text(encoding="utf-8"))


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


__all__ = ["InputError", "FanError", "load_fan", "load_lattice", "load_model", "resolve_fan",
           "resolve_lattice", "bundled_names", "bundled_fan", "bundled_lattice", "dumps", "schema"]
