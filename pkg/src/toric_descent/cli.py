"""Command-line interface.

Exit codes: 0 success, 1 input (I/O or parse) error, 2 mathematical
precondition failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable, Optional

from . import __version__
from .descent import DescentError, GaloisModel, kernel_witness
from .fan import FanError, class_group, is_complete, is_smooth
from .glattice import (GroupError, LatticeError, coflasque_resolution, is_coflasque, is_flasque, is_invertible,
                       subgroups, tate_quotient)
from .io import (InputError, bundled_json, bundled_names, dumps, load_model, load_omega_classes,
                 parse_int_vector, resolve_fan, resolve_lattice)
from .omega import OmegaError
from .polyhedral import ConeError, h0, is_nef, nef_cone
from .report import analyze, forms, group_name, lattice_summary, render_analysis, render_forms

MATH_ERRORS = (FanError, DescentError, GroupError, LatticeError, OmegaError, ConeError)


class _Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data: Any, text: Callable[[Any], str]):
        sys.stdout.write(dumps(data) if self.as_json else text(data))


def _kv_text(data: dict) -> str:
    lines = []
    for k, v in data.items():
        if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        elif isinstance(v, dict):
            lines.append(f"{k}:")
            lines.extend(f"  {a}: {b}" for a, b in v.items())
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args, out: _Output) -> int:
    f = resolve_fan(args.fan)
    omega = load_omega_classes(args.omega) if args.omega else None
    rep = analyze(f, omega)
    out.emit(rep, render_analysis)
    validation = rep["omega"].get("validation")
    return 2 if validation is not None and not validation["passes"] else 0


def parse_field(spec: str, f=None) -> GaloisModel:
    if spec == "real":
        return GaloisModel.real()
    if spec == "finite" or spec.startswith("finite:"):
        if spec == "finite":
            from .autgroup import fan_automorphisms
            m = fan_automorphisms(f).group.exponent()
        else:
            try:
                m = int(spec.split(":", 1)[1])
            except ValueError as exc:
                raise InputError(f"bad field specification {spec!r}") from exc
        return GaloisModel.finite(m)
    return load_model(spec)


def cmd_forms(args, out: _Output) -> int:
    f = resolve_fan(args.fan)
    model = parse_field(args.field, f)
    out.emit(forms(f, model), render_forms)
    return 0


def cmd_omega(args, out: _Output) -> int:
    f = resolve_fan(args.fan)
    if not is_smooth(f):
        raise FanError("omega needs a smooth projective fan")
    omega = load_omega_classes(args.set) if args.set else None
    rep = analyze(f, omega)
    if isinstance(rep["omega"], dict) and rep["omega"].get("status") == "unavailable":
        raise FanError(rep["omega"]["reason"])
    data = {"fan": f.name, **rep["omega"]}

    def text(d):
        lines = [f"omega ({d['source']}) for {d['fan'] or '(unnamed)'}"]
        for c in d["classes"]:
            lines.append(f"  {c['name']:<16} h0 {c['h0']}")
        for k, v in d["validation"].items():
            lines.append(f"  {k.replace('_', ' ')}: {v}")
        lines.append(f"target Y   {d['target']}")
        lines.append(f"algebra B  {d['algebra']}")
        return "\n".join(lines) + "\n"

    out.emit(data, text)
    return 0 if data["validation"]["passes"] else 2


def cmd_nef(args, out: _Output) -> int:
    f = resolve_fan(args.fan)
    div = class_group(f)
    nef = nef_cone(f, div)
    data = {"fan": f.name, "generators": [list(r) for r in nef.rays],
            "inequalities": [list(a) for a in nef.inequalities],
            "names": [div.format_class(r) for r in nef.rays]}

    def text(d):
        lines = [f"nef cone of {d['fan'] or '(unnamed)'} in Cl coordinates"]
        lines.append("rays")
        lines.extend(f"  {r}  {n}" for r, n in zip(d["generators"], d["names"]))
        lines.append("facet inequalities a . x >= 0")
        lines.extend(f"  {a}" for a in d["inequalities"])
        return "\n".join(lines) + "\n"

    out.emit(data, text)
    return 0


def cmd_h0(args, out: _Output) -> int:
    f = resolve_fan(args.fan)
    d = parse_int_vector(args.divisor)
    if len(d) != f.nrays:
        raise InputError(f"divisor needs {f.nrays} coefficients, got {len(d)}")
    if not is_complete(f):
        raise FanError("h0 needs a complete fan")
    div = class_group(f)
    data = {"fan": f.name, "divisor": list(d), "class": div.format_class(div.classify(d)), "h0": h0(f, d)}
    if is_smooth(f):
        data["nef"] = is_nef(f, d)
    out.emit(data, _kv_text)
    return 0


def _subgroup(L, idx: Optional[int]):
    if idx is None:
        return None
    subs = subgroups(L.group)
    if not 0 <= idx < len(subs):
        raise InputError(f"subgroup index {idx} out of range (0..{len(subs) - 1})")
    return subs[idx]


def cmd_lattice(args, out: _Output) -> int:
    L = resolve_lattice(args.lattice)
    data: dict[str, Any] = lattice_summary(L)
    sub = args.action
    if sub == "cohomology":
        H = _subgroup(L, args.subgroup)
        degrees = [args.degree] if args.degree is not None else [-1, 0, 1]
        data["subgroup_order"] = len(L.group) if H is None else len(H)
        data["cohomology"] = {str(i): str(tate_quotient(i, L, H).group) for i in degrees}
    elif sub in ("flasque", "coflasque"):
        chk = is_flasque(L) if sub == "flasque" else is_coflasque(L)
        data[sub] = chk.holds
        if chk.witness is not None:
            data["witness_subgroup_order"] = len(chk.witness)
            data["witness_group"] = str(chk.value)
    elif sub == "resolve":
        res = coflasque_resolution(L, minimal=not args.full)
        data["P_rank"] = res.P.rank
        data["Q_rank"] = res.Q.rank
        data["P_blocks"] = [{"subgroup_order": len(H), "image": list(v)} for H, v in res.blocks]
        data["Q_coflasque"] = bool(is_coflasque(res.Q))
        data["pi"] = res.pi.tolist()
    elif sub == "invertible":
        v = is_invertible(L)
        data["invertible"] = v.status
        data["reason"] = v.reason
        if v.proven:
            data["certificate_verified"] = v.verify()
            data["section"] = v.section.tolist()
        if args.witness and not v.proven:
            w = kernel_witness(L)
            data["kernel_witness"] = None if w is None else w.render()
    out.emit(data, _kv_text)
    return 0


def cmd_examples(args, out: _Output) -> int:
    if args.action == "list":
        data = {kind: bundled_names(kind) for kind in ("fans", "lattices", "models")}
        out.emit(data, lambda d: "".join(f"{k}: {' '.join(v)}\n" for k, v in d.items()))
        return 0
    if not args.name:
        raise InputError("examples emit needs a name")
    for kind in ("fans", "lattices", "models"):
        if args.name in bundled_names(kind):
            sys.stdout.write(dumps(bundled_json(args.name, kind)))
            return 0
    raise InputError(f"no bundled example named {args.name!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-descent",
                                description="Galois descent for split smooth projective toric varieties.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="as_json", action="store_true", help="emit JSON")
    g.add_argument("--text", dest="as_json", action="store_false", help="emit text (default)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[fmt], help="full pipeline on one fan")
    a.add_argument("fan", help="fan JSON file or bundled fan name")
    a.add_argument("--omega", help="omega JSON file to validate instead of the canonical set")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("forms", parents=[fmt], help="twisted forms over a field model")
    f.add_argument("fan")
    f.add_argument("--field", default="real", help="real | finite | finite:m | model JSON file")
    f.set_defaults(func=cmd_forms)

    lat = sub.add_parser("lattice", parents=[fmt], help="G-lattice computations")
    lat.add_argument("action", choices=["cohomology", "flasque", "coflasque", "resolve", "invertible"])
    lat.add_argument("lattice", help="lattice JSON file or bundled lattice name")
    lat.add_argument("--degree", type=int, choices=[-1, 0, 1], help="Tate degree (default: all)")
    lat.add_argument("--subgroup", type=int, help="index into the sorted subgroup list")
    lat.add_argument("--full", action="store_true", help="resolve: use every subgroup block")
    lat.add_argument("--witness", action="store_true", help="invertible: search for a kernel witness")
    lat.set_defaults(func=cmd_lattice)

    o = sub.add_parser("omega", parents=[fmt], help="canonical or given omega with its shapes")
    o.add_argument("fan")
    o.add_argument("--set", help="omega JSON file {\"classes\": [...]}")
    o.set_defaults(func=cmd_omega)

    n = sub.add_parser("nef", parents=[fmt], help="nef cone in class-group coordinates")
    n.add_argument("fan")
    n.set_defaults(func=cmd_nef)

    h = sub.add_parser("h0", parents=[fmt], help="global sections of a torus-invariant divisor")
    h.add_argument("fan")
    h.add_argument("--divisor", required=True, help="coefficients a1,...,ar on the rays")
    h.set_defaults(func=cmd_h0)

    e = sub.add_parser("examples", parents=[fmt], help="bundled example corpus")
    e.add_argument("action", choices=["list", "emit"])
    e.add_argument("name", nargs="?")
    e.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(bool(getattr(args, "as_json", False)))
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
