"""Assembling and rendering analysis and forms reports.

Every report is first built as a plain JSON-compatible dict with a fixed key
order and deterministic list order; text output is rendered from that dict,
so the two views never disagree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .autgroup import class_aut_group, cox_algebra_shape, fan_automorphisms, weight_decomposition
from .descent import (FormsReport, GaloisModel, check_fingerprint_injectivity, classify_forms_finite,
                      classify_forms_real, fingerprint_in_P, h2_set, period)
from .fan import Fan, FanError, class_group, is_complete, is_projective, is_simplicial, is_smooth, validate_fan
from .glattice import FiniteMatrixGroup, GLattice, is_coflasque, is_flasque
from .omega import canonical_omega, injectivity_verdict, make_omega, target_shape, validate_omega
from .polyhedral import nef_cone

UNAVAILABLE = "unavailable"

_GROUP_NAMES = {
    (1, ()): "trivial",
    (2, ((2, 1),)): "C2",
    (3, ((3, 2),)): "C3",
    (4, ((2, 1), (4, 2))): "C4",
    (4, ((2, 3),)): "C2xC2",
    (6, ((2, 1), (3, 2), (6, 2))): "C6",
    (6, ((2, 3), (3, 2))): "S3",
    (8, ((2, 1), (4, 2), (8, 4))): "C8",
    (8, ((2, 3), (4, 4))): "C4xC2",
    (8, ((2, 7),)): "C2xC2xC2",
    (8, ((2, 5), (4, 2))): "D8",
    (8, ((2, 1), (4, 6))): "Q8",
    (12, ((2, 7), (3, 2), (6, 2))): "S3xC2",
    (12, ((2, 3), (3, 8))): "A4",
    (12, ((2, 3), (3, 2), (6, 6))): "C6xC2",
    (12, ((2, 1), (3, 2), (4, 2), (6, 2), (12, 4))): "C12",
    (12, ((2, 1), (3, 2), (4, 6), (6, 2))): "Dic3",
    (16, ((2, 15),)): "C2^4",
    (16, ((2, 11), (4, 4))): "D8xC2",
    (24, ((2, 9), (3, 8), (4, 6))): "S4",
    (48, ((2, 19), (3, 8), (4, 12), (6, 8))): "S4xC2",
}


def group_name(G: FiniteMatrixGroup) -> str:
    """Isomorphism type of a small group from its order statistics, when unambiguous."""
    stats = tuple(sorted((k, v) for k, v in G.order_statistics().items() if k > 1))
    return _GROUP_NAMES.get((len(G), stats), f"order {len(G)}")


def _q(v: Fraction) -> str:
    return "0" if v == 0 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def analyze(f: Fan, omega_classes: Optional[list] = None) -> dict[str, Any]:
    """The full pipeline on one fan, with unavailable sections marked as such.

    Raises FanError when the fan itself is invalid.
    """
    v = validate_fan(f)
    if not v.valid:
        raise FanError("invalid fan: " + "; ".join(v.violations))
    smooth, complete = is_smooth(f), is_complete(f)
    projective = complete and is_simplicial(f) and is_projective(f)
    out: dict[str, Any] = {
        "fan": {"name": f.name, "rank": f.rank, "rays": len(f.rays), "max_cones": len(f.max_cones),
                "simplicial": is_simplicial(f), "smooth": smooth, "complete": complete,
                "projective": projective},
    }
    div = class_group(f)
    wd = weight_decomposition(div)
    shape = cox_algebra_shape(wd)
    out["class_group"] = {"group": str(div.cl_group), "invariant_factors": list(div.cl_group.invariant_factors)}
    out["weights"] = [{"class": list(c), "name": div.format_class(c), "multiplicity": n, "rays": list(wd.rays_of(k))}
                      for k, (c, n) in enumerate(zip(wd.classes, wd.multiplicities))]
    out["cox_algebra"] = {"factors": [f"M{n}" for n in shape.sizes], "sizes": list(shape.sizes)}
    W = fan_automorphisms(f, div)
    out["weyl"] = {"order": W.order, "group": group_name(W.group)}
    if not div.cl_group.is_free():
        reason = "class group has torsion"
        out["weyl"].update({"kernel_order": UNAVAILABLE})
        for key in ("J", "pic_lattice", "omega", "descent"):
            out[key] = {"status": UNAVAILABLE, "reason": reason}
        return out
    J = class_aut_group(W, div)
    out["weyl"]["kernel_order"] = len(J.kernel)
    out["weyl"]["kernel_is_product_of_symmetric_groups"] = len(J.kernel) == shape.weyl_order
    out["J"] = {"order": J.order, "group": group_name(J.group),
                "generators_on_Cl": [J.group.elements[g].tolist() for g in J.group.generators],
                "split": True}
    if not (smooth and projective):
        reason = "fan is not smooth and projective"
        out["pic_lattice"] = {"status": UNAVAILABLE, "reason": reason}
        out["omega"] = {"status": UNAVAILABLE, "reason": reason}
        out["descent"] = {"status": UNAVAILABLE, "reason": reason}
        return out
    pic = J.pic_lattice()
    inj = injectivity_verdict(J)
    out["pic_lattice"] = {"rank": pic.rank, "flasque": bool(is_flasque(pic)), "coflasque": bool(is_coflasque(pic)),
                          "invertible": inj.verdict.status, "invertible_reason": inj.verdict.reason,
                          "certificate_verified": inj.verdict.verify() if inj.verdict.proven else False}
    nef = nef_cone(f, div)
    if omega_classes is None:
        om = canonical_omega(f, div, J, nef)
        source = "canonical"
    else:
        om = make_omega(omega_classes, f, div, J)
        source = "given"
    val = validate_omega(om, f, div, J, nef)
    om_out: dict[str, Any] = {
        "source": source,
        "nef_cone_rays": [list(r) for r in nef.rays],
        "classes": [{"class": list(c), "name": div.format_class(c), "h0": h} for c, h in zip(om.classes, om.h0)],
        "validation": {"j_stable": val.j_stable, "nef": val.all_globally_generated, "faithful": val.faithful,
                       "generates_pic": val.generates_pic, "kernel_coflasque": val.kernel_coflasque,
                       "fixed_points_surjective": all(ok for _, ok in val.fixed_surjective),
                       "kernel_rank": None if val.kernel is None else val.kernel.rank,
                       "passes": val.passes, "warnings": list(val.warnings)},
    }
    if val.j_stable:
        Y, B = target_shape(om)
        om_out["target"] = Y.render()
        om_out["algebra"] = B.render()
        om_out["orbits"] = [list(o) for o in Y.orbits]
    else:
        om_out["target"] = om_out["algebra"] = UNAVAILABLE
    out["omega"] = om_out
    out["descent"] = {"injectivity": inj.text, "fingerprint_injective": inj.injective}
    return out


def _bool(x) -> str:
    return "yes" if x is True else "no" if x is False else str(x)


def render_analysis(rep: dict[str, Any]) -> str:
    lines = []
    fan = rep["fan"]
    lines.append(f"fan {fan['name'] or '(unnamed)'}: rank {fan['rank']}, {fan['rays']} rays, "
                 f"{fan['max_cones']} maximal cones")
    lines.append("  " + ", ".join(f"{k} {_bool(fan[k])}" for k in ("simplicial", "smooth", "complete", "projective")))
    lines.append(f"class group     {rep['class_group']['group']}")
    lines.append("weights")
    for w in rep["weights"]:
        lines.append(f"  {w['name']:<16} multiplicity {w['multiplicity']}  rays {w['rays']}")
    lines.append(f"cox algebra     {' x '.join(rep['cox_algebra']['factors'])}")
    wy = rep["weyl"]
    lines.append(f"toric Weyl W    order {wy['order']} ({wy['group']}), W° order {wy['kernel_order']}")
    Jd = rep["J"]
    if Jd.get("status") == UNAVAILABLE:
        lines.append(f"J               unavailable ({Jd['reason']})")
    else:
        lines.append(f"J               order {Jd['order']} ({Jd['group']}), split")
        for g in Jd["generators_on_Cl"]:
            lines.append(f"  generator     {g}")
    p = rep["pic_lattice"]
    if p.get("status") == UNAVAILABLE:
        lines.append(f"Pic lattice     unavailable ({p['reason']})")
    else:
        lines.append(f"Pic lattice     rank {p['rank']}, flasque {_bool(p['flasque'])}, "
                     f"coflasque {_bool(p['coflasque'])}")
        lines.append(f"  invertible    {p['invertible']} ({p['invertible_reason']}; "
                     f"certificate verified {_bool(p['certificate_verified'])})")
    om = rep["omega"]
    if om.get("status") == UNAVAILABLE:
        lines.append(f"omega           unavailable ({om['reason']})")
    else:
        lines.append(f"omega ({om['source']})")
        for c in om["classes"]:
            lines.append(f"  {c['name']:<16} h0 {c['h0']}")
        v = om["validation"]
        lines.append("  " + ", ".join(f"{k.replace('_', ' ')} {_bool(v[k])}"
                                      for k in ("j_stable", "nef", "faithful", "generates_pic",
                                                "kernel_coflasque", "fixed_points_surjective")))
        for w in v["warnings"]:
            lines.append(f"  warning: {w}")
        lines.append(f"target Y        {om['target']}")
        lines.append(f"algebra B       {om['algebra']}")
    d = rep["descent"]
    if d.get("status") == UNAVAILABLE:
        lines.append(f"descent         unavailable ({d['reason']})")
    else:
        lines.append(f"descent         {d['injectivity']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def _etale(shape) -> list:
    return [{"orbit": list(o), "field": fld} for o, fld in zip(shape.orbits, shape.fields)]


def forms(f: Fan, model: GaloisModel) -> dict[str, Any]:
    """Classification of forms of the toric variety over a field model."""
    if not (is_smooth(f) and is_complete(f) and is_projective(f)):
        raise FanError("forms need a smooth projective fan")
    div = class_group(f)
    W = fan_automorphisms(f, div)
    J = class_aut_group(W, div)
    out: dict[str, Any] = {"fan": f.name, "model": model.describe()}
    if model.kind == "abstract":
        comps = h2_set(model, J)
        out["components"] = [{
            "component": c.index,
            "cocycle": list(c.cocycle.key),
            "group": str(c.group),
            "orbits": [{"orbit": list(o), "field": fld} for o, fld in zip(c.orbit_data.orbits, c.orbit_data.fields)],
            "classes": [{"element": list(o[0]), "neutral": not any(o[0]),
                         "period": c.group.element_order(o[0])} for o in c.orbits],
        } for c in comps]
        return out
    r = classify_forms_real(f, div, W, J) if model.kind == "real" else classify_forms_finite(f, div, W, J, model)
    nef = nef_cone(f, div)
    om = canonical_omega(f, div, J, nef)
    out["w_classes"] = len(r.w_classes)
    out["neutralization_classes"] = []
    for k, c in enumerate(r.j_classes):
        comp = r.components[k]
        out["neutralization_classes"].append({
            "index": k,
            "cocycle": list(c.key),
            "twisted_center": _etale(r.centers[k]),
            "canonical_torus": r.tori[k].render(),
            "h2_component": {"group": str(comp.group), "size": comp.size},
            "split_form_w_class": r.section_classes[k],
        })
    out["n_classes"] = []
    for i, n in enumerate(r.n_classes):
        fp = n.fingerprint
        row = {"index": i, "component": fp.component, "w_class": n.w_class, "h1_element": list(n.element),
               "torus": n.torus, "fingerprint": list(fp.element), "neutral": fp.neutral, "variety": n.variety}
        out["n_classes"].append(row)
    out["varieties"] = []
    for k, v in enumerate(r.varieties):
        entry = {"index": k, "component": v.component, "fingerprint": list(v.fingerprint.element),
                 "neutral": v.neutral, "period": period(v.fingerprint), "n_classes": list(v.n_classes)}
        if model.kind == "real":
            entry["brauer_fingerprint"] = fingerprint_in_P(v.fingerprint, r.components[v.component], om, J).render()
        out["varieties"].append(entry)
    out["omega"] = [div.format_class(c) for c in om.classes]
    return out


def render_forms(rep: dict[str, Any]) -> str:
    lines = [f"forms of {rep['fan'] or '(unnamed)'} over {rep['model']}"]
    if "components" in rep:
        for c in rep["components"]:
            orbs = ", ".join(f"{o['field']}{o['orbit']}" for o in c["orbits"])
            lines.append(f"component {c['component']}  cocycle {c['cocycle']}  group {c['group']}  orbits {orbs}")
            for cl in c["classes"]:
                tag = " neutral" if cl["neutral"] else ""
                lines.append(f"  {str(cl['element']):<20} period {cl['period']}{tag}")
        return "\n".join(lines) + "\n"
    lines.append(f"W-classes {rep['w_classes']}, N-classes {len(rep['n_classes'])}, "
                 f"variety classes {len(rep['varieties'])}, "
                 f"neutralization classes {len(rep['neutralization_classes'])}")
    lines.append("")
    lines.append("neutralization classes")
    for c in rep["neutralization_classes"]:
        center = " x ".join(e["field"] for e in c["twisted_center"])
        lines.append(f"  [{c['index']}] cocycle {c['cocycle']}  center {center}  torus {c['canonical_torus']}  "
                     f"H2 {c['h2_component']['group']} ({c['h2_component']['size']} classes)")
    lines.append("")
    header = ("row", "comp", "W-class", "torus", "fingerprint", "variety")
    rows = [(str(n["index"]), str(n["component"]), str(n["w_class"]), n["torus"] or "-",
             str(n["fingerprint"]) + (" neutral" if n["neutral"] else ""), str(n["variety"]))
            for n in rep["n_classes"]]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for r in rows:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    lines.append("")
    lines.append("varieties")
    for v in rep["varieties"]:
        extra = f"  brauer {v['brauer_fingerprint']}" if "brauer_fingerprint" in v else ""
        lines.append(f"  [{v['index']}] component {v['component']}  period {v['period']}  "
                     f"tori {len(v['n_classes'])}{'  neutral' if v['neutral'] else ''}{extra}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


def lattice_summary(L: GLattice) -> dict[str, Any]:
    return {"rank": L.rank, "group_order": len(L.group), "group": group_name(L.group)}
