"""Problem bundles: JSON files describing a presentation with optional group
grading, Hopf algebra, action, superpotential, dg algebra and bounds.

See docs/schema.md for the format.  Rationals are strings "p/q" or integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .actions import HAction, action_from_grading, trivial_action
from .dg import DGAlgebraSC, dg_algebra
from .groups import FiniteGroup, cyclic, from_table
from .hopf import (HopfAlgebraSC, dual_group_algebra, from_structure_constants, ground_field,
                   group_algebra)
from .linalg import identity, qparse
from .quiver import PathElement, Presentation, Quiver
from .superpotential import Superpotential


class BundleError(ValueError):
    pass


@dataclass(eq=False)
class ProblemBundle:
    name: str
    presentation: Presentation | None = None
    hopf: HopfAlgebraSC | None = None
    action: HAction | None = None
    superpotential: Superpotential | None = None
    dg: DGAlgebraSC | None = None
    dg_action: HAction | None = None
    bounds: dict = field(default_factory=dict)
    seed: int = 0
    source: str = ""

    @property
    def group(self) -> FiniteGroup | None:
        return self.presentation.group if self.presentation else None

    def require(self, *parts: str):
        missing = [p for p in parts if getattr(self, p) is None]
        if missing:
            raise BundleError(f"bundle {self.name!r} has no {', '.join(missing)} section")


def bundled_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("hopfsmash.data").iterdir()
                  if p.name.endswith(".json"))


def resolve_path(path: str | Path):
    p = Path(path)
    if p.exists():
        return p
    name = p.name[:-5] if p.name.endswith(".json") else p.name
    res = resources.files("hopfsmash.data") / f"{name}.json"
    if res.is_file():
        return res
    raise BundleError(f"no bundle file {str(path)!r} (bundled: {', '.join(bundled_names())})")


def load_bundle(path) -> ProblemBundle:
    src = resolve_path(path)
    text = src.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"{src}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return bundle_from_dict(data, name=data.get("name") or Path(str(src)).stem, source=str(src))
    except BundleError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise BundleError(f"{src}: {exc}") from exc


def parse_group(entry) -> FiniteGroup:
    if entry is None:
        return None
    if "cyclic" in entry:
        return cyclic(int(entry["cyclic"]))
    if "table" in entry:
        return from_table(entry["table"], entry.get("labels"))
    raise BundleError(f"group must give 'cyclic' or 'table', got {sorted(entry)}")


def parse_presentation(entry) -> Presentation:
    G = parse_group(entry.get("group"))
    arrows = []
    for a in entry.get("arrows", []):
        for key in ("label", "from", "to"):
            if key not in a:
                raise BundleError(f"arrow entry {a} lacks {key!r}")
        arrows.append((a["label"], a["from"], a["to"], a.get("gdeg"), int(a.get("ndeg", 1))))
    quiver = Quiver.build(entry["vertices"], arrows, G)
    rels = [parse_element(quiver, r) for r in entry.get("relations", [])]
    return Presentation(quiver, tuple(rels), entry.get("homogeneity_degree"), entry.get("name", ""))


def parse_element(quiver: Quiver, terms) -> PathElement:
    return PathElement.from_words(quiver, [(qparse(t["coef"]), list(t["path"])) for t in terms])


def parse_hopf(entry) -> HopfAlgebraSC:
    if entry is None:
        return None
    if entry.get("trivial"):
        return ground_field()
    if "group" in entry:
        G = parse_group(entry["group"])
        return dual_group_algebra(G) if entry.get("dual") else group_algebra(G)
    for key in ("dim", "mult", "comult", "counit", "antipode"):
        if key not in entry:
            raise BundleError(f"raw Hopf data lacks {key!r}")
    return from_structure_constants(entry["dim"], entry["mult"], entry["comult"], entry["counit"],
                                    entry["antipode"], entry.get("unit"), entry.get("labels"),
                                    entry.get("name", ""))


def _matrix(m, shape, what: str) -> np.ndarray:
    arr = np.array([[qparse(x) for x in row] for row in m], dtype=object).reshape(len(m), -1)
    if arr.shape != shape:
        raise BundleError(f"{what} has shape {arr.shape}, expected {shape}")
    return arr


def _per_label(H: HopfAlgebraSC, entry, shape, default, what: str) -> list:
    if entry is None:
        return [default(h) for h in range(H.dim)]
    if isinstance(entry, list):
        if len(entry) != H.dim:
            raise BundleError(f"{what}: expected {H.dim} matrices, got {len(entry)}")
        return [_matrix(m, shape, f"{what}[{i}]") for i, m in enumerate(entry)]
    unknown = [k for k in entry if k not in H.labels]
    if unknown:
        raise BundleError(f"{what} refers to unknown Hopf basis label {unknown[0]!r} "
                          f"(basis: {', '.join(H.labels)})")
    missing = [lab for lab in H.labels if lab not in entry]
    if missing:
        raise BundleError(f"{what} gives no matrix for Hopf basis label {missing[0]!r}")
    return [_matrix(entry[lab], shape, f"{what}[{lab}]") for lab in H.labels]


def parse_action(entry, H: HopfAlgebraSC, P: Presentation) -> HAction:
    if entry is None:
        return None
    if entry == "grading":
        act = action_from_grading(P)
        if act.hopf.labels != H.labels:
            raise BundleError("grading action needs the dual group algebra of the grading group")
        return act
    if entry == "trivial":
        return trivial_action(H, P)
    nv, na = len(P.quiver.vertices), len(P.quiver.arrows)
    vm = _per_label(H, entry.get("on_vertices"), (nv, nv), lambda h: H.counit[h] * identity(nv),
                    "on_vertices")
    am = _per_label(H, entry.get("on_arrows"), (na, na), lambda h: H.counit[h] * identity(na),
                    "on_arrows")
    return HAction(H, P, vm, am)


def parse_dg(entry) -> DGAlgebraSC:
    n = len(entry["degrees"])
    labels = entry.get("labels") or [f"b{i}" for i in range(n)]
    diff = entry.get("diff") or [[0] * n for _ in range(n)]
    return dg_algebra(labels, entry["degrees"], entry["mult"], diff, entry.get("unit"),
                      entry.get("name", "A"))


def parse_dg_action(entry, H: HopfAlgebraSC, A: DGAlgebraSC) -> HAction:
    if entry is None:
        return None
    if entry == "trivial":
        return trivial_action(H, A)
    mats = _per_label(H, entry.get("on_basis"), (A.dim, A.dim),
                      lambda h: H.counit[h] * identity(A.dim), "on_basis")
    return HAction(H, A, full_mats=mats)


def parse_superpotential(entry, quiver: Quiver) -> Superpotential:
    return Superpotential.from_words(quiver, [(qparse(t["coef"]), list(t["path"])) for t in entry])


def bundle_from_dict(data: dict, name: str = "", source: str = "") -> ProblemBundle:
    b = ProblemBundle(name or data.get("name", "bundle"), source=source)
    if "presentation" in data:
        b.presentation = parse_presentation(data["presentation"])
    b.hopf = parse_hopf(data.get("hopf"))
    if data.get("action") is not None:
        if b.hopf is None or b.presentation is None:
            raise BundleError("an action needs both a presentation and a hopf section")
        b.action = parse_action(data["action"], b.hopf, b.presentation)
        b.hopf = b.action.hopf
    if data.get("superpotential") is not None:
        if b.presentation is None:
            raise BundleError("a superpotential needs a presentation")
        b.superpotential = parse_superpotential(data["superpotential"], b.presentation.quiver)
    if "dg" in data:
        b.dg = parse_dg(data["dg"])
        if data["dg"].get("action") is not None:
            if b.hopf is None:
                raise BundleError("a dg action needs a hopf section")
            b.dg_action = parse_dg_action(data["dg"]["action"], b.hopf, b.dg)
    b.bounds = dict(data.get("bounds", {}))
    b.seed = int(data.get("seed", 0))
    return b
