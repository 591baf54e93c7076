"""Hopf actions on presentations, smash products and Galois coverings.

An action on a presentation R = kQ/I is given on the vertex idempotents and
on the span of the arrows, and extended to every graded piece through the
module-algebra rule h(ab) = (h1 a)(h2 b).  Whether the result is well defined
(the ideal is H-stable) is checked, never assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fdalgebra import FDAlgebra, sadd
from .groups import FiniteGroup
from .hopf import HopfAlgebraSC, check_module, dual_group_algebra
from .linalg import Q, identity, rank, zeros
from .quiver import (Path, PathElement, Presentation, PresentationError, Quiver,
                     check_g_homogeneity)
from .report import Report


class ActionError(ValueError):
    pass


def _matvec(cols, vec: dict) -> dict:
    """Sparse matrix (list of sparse columns) times sparse vector."""
    out: dict = {}
    for j, x in vec.items():
        sadd(out, cols[j], x)
    return out


def _sparse_cols(m) -> list[dict]:
    m = np.asarray(m, dtype=object)
    return [{i: Q(m[i, j]) for i in range(m.shape[0]) if m[i, j]} for j in range(m.shape[1])]


class HAction:
    """Action of H on a presentation (vertex and arrow data) or on an FDAlgebra."""

    def __init__(self, hopf: HopfAlgebraSC, target, vertex_mats=None, arrow_mats=None,
                 full_mats=None, grading: bool = False):
        self.hopf = hopf
        self.target = target
        self.grading = grading
        self._cache: dict = {}
        n = hopf.dim
        if isinstance(target, Presentation):
            nv, na = len(target.quiver.vertices), len(target.quiver.arrows)
            if vertex_mats is None or arrow_mats is None:
                raise ActionError("an action on a presentation needs vertex and arrow matrices")
            if len(vertex_mats) != n or len(arrow_mats) != n:
                raise ActionError(f"expected one matrix per Hopf basis element ({n})")
            self.vertex_mats = [np.asarray(m, dtype=object) for m in vertex_mats]
            self.arrow_mats = [np.asarray(m, dtype=object) for m in arrow_mats]
            for m in self.vertex_mats:
                if m.shape != (nv, nv):
                    raise ActionError(f"vertex matrix has shape {m.shape}, expected {(nv, nv)}")
            for m in self.arrow_mats:
                if m.shape != (na, na):
                    raise ActionError(f"arrow matrix has shape {m.shape}, expected {(na, na)}")
            arrows = target.quiver.arrows
            for m in self.arrow_mats:
                for i, j in zip(*np.nonzero(m != 0)):
                    if arrows[i].ndeg != arrows[j].ndeg:
                        raise ActionError("action does not preserve arrow degrees")
        elif isinstance(target, FDAlgebra):
            if full_mats is None or len(full_mats) != n:
                raise ActionError(f"expected one matrix per Hopf basis element ({n})")
            self.full_mats = [np.asarray(m, dtype=object) for m in full_mats]
            for m in self.full_mats:
                if m.shape != (target.dim, target.dim):
                    raise ActionError("action matrix does not match the algebra dimension")
            self._full_cols = [_sparse_cols(m) for m in self.full_mats]
        else:
            raise ActionError("actions are defined on presentations or finite-dimensional algebras")

    @property
    def on_presentation(self) -> bool:
        return isinstance(self.target, Presentation)

    # presentation case -------------------------------------------------
    def columns(self, h: int, d: int) -> list[dict]:
        """Sparse columns of rho(h) on R_d (basis of the presentation's piece)."""
        key = (h, d)
        if key not in self._cache:
            self._cache[key] = self._build_columns(h, d)
        return self._cache[key]

    def _build_columns(self, h: int, d: int) -> list[dict]:
        alg = self.target.algebra
        piece = alg.piece(d)
        if self.grading:
            # basis element h of kG* is p_h
            return [({m: Q(1)} if self.target.quiver.gdeg(p) == h else {})
                    for m, p in enumerate(piece.basis)]
        if d == 0:
            return _sparse_cols(self.vertex_mats[h])
        return [self.act_path(h, p) for p in piece.basis]

    def act_path(self, h: int, p: Path) -> dict:
        """h . p for a path p of kQ, evaluated in R through the coproduct."""
        alg = self.target.algebra
        if not p.arrows:
            return {k: v for k, v in enumerate(self.vertex_mats[h][:, p.source]) if v}
        a0 = p.arrows[0]
        quiver = self.target.quiver
        rest = Path(p.arrows[1:], p.source, quiver.arrows[p.arrows[1]].target, p.ndeg - quiver.arrows[a0].ndeg) \
            if len(p.arrows) > 1 else quiver.trivial_path(p.source)
        drest = rest.ndeg
        nf_rest = alg.nf_path(rest)
        out: dict = {}
        for c, h1, h2 in self.hopf.delta_terms[h]:
            right = _matvec(self.columns(h2, drest), nf_rest)
            if not right:
                continue
            col = self.arrow_mats[h1][:, a0]
            for b, coef in enumerate(col):
                if coef:
                    sadd(out, alg.lmul_path(quiver.path([b]), right, drest), c * coef)
        return out

    def apply(self, h: int, vec: dict, d: int | None = None) -> dict:
        if self.on_presentation:
            return _matvec(self.columns(h, d), vec)
        return _matvec(self._full_cols[h], vec)

    def apply_element(self, hvec, vec: dict, d: int | None = None) -> dict:
        out: dict = {}
        for h, c in enumerate(hvec):
            if c:
                sadd(out, self.apply(h, vec, d), c)
        return out

    def dense(self, h: int, d: int | None = None) -> np.ndarray:
        if not self.on_presentation:
            return self.full_mats[h]
        cols = self.columns(h, d)
        n = self.target.algebra.dim(d)
        m = zeros(n, n)
        for j, col in enumerate(cols):
            for i, v in col.items():
                m[i, j] = v
        return m

    def truncate(self, A: FDAlgebra) -> "HAction":
        """The induced action on a truncation built by ``truncated_algebra``."""
        mats = []
        for h in range(self.hopf.dim):
            m = zeros(A.dim, A.dim)
            for d, off in enumerate(A.offsets):
                for j, col in enumerate(self.columns(h, d)):
                    for i, v in col.items():
                        m[off + i, off + j] = v
            mats.append(m)
        return HAction(self.hopf, A, full_mats=mats)


def trivial_action(H: HopfAlgebraSC, target) -> HAction:
    """h . a = eps(h) a."""
    if isinstance(target, Presentation):
        nv, na = len(target.quiver.vertices), len(target.quiver.arrows)
        vm = [H.counit[h] * identity(nv) for h in range(H.dim)]
        am = [H.counit[h] * identity(na) for h in range(H.dim)]
        return HAction(H, target, vm, am)
    n = target.dim
    return HAction(H, target, full_mats=[H.counit[h] * identity(n) for h in range(H.dim)])


def action_from_grading(P: Presentation) -> HAction:
    """kG* acting on a G-graded presentation: p_g projects onto degree g."""
    rep = check_g_homogeneity(P)
    if not rep:
        raise ActionError(f"presentation is not G-homogeneous: {rep.first_failure}")
    G = P.group
    H = dual_group_algebra(G)
    nv, na = len(P.quiver.vertices), len(P.quiver.arrows)
    vm, am = [], []
    for g in G:
        v = zeros(nv, nv)
        if g == G.identity:
            for i in range(nv):
                v[i, i] = Q(1)
        a = zeros(na, na)
        for i in range(na):
            if P.quiver.arrow_gdeg(i) == g:
                a[i, i] = Q(1)
        vm.append(v)
        am.append(a)
    return HAction(H, P, vm, am, grading=True)


def grading_action_by_recursion(act: HAction) -> HAction:
    """Same vertex/arrow data, but graded pieces built by the coproduct recursion."""
    return HAction(act.hopf, act.target, act.vertex_mats, act.arrow_mats)


def verify_module_algebra(A, H: HopfAlgebraSC, act: HAction, D: int = 4,
                          differential=None) -> Report:
    """Check the H-module-algebra axioms on basis elements up to degree D."""
    rep = Report(f"{H.name}-module algebra", bounds={"D": D})
    if act.hopf is not H:
        rep.check("action uses the given Hopf algebra", act.hopf.labels == H.labels)
    if isinstance(A, Presentation):
        _verify_on_presentation(A, H, act, D, rep)
    else:
        _verify_on_fd(A, H, act, rep, differential)
    return rep


def _verify_on_presentation(P, H, act, D, rep):
    alg = P.algebra
    quiver = P.quiver
    n = H.dim
    # ideal stability first: otherwise the action on R is not well defined
    for r in P.relations:
        if r.ndeg > D:
            continue
        for h in range(n):
            img: dict = {}
            for p, c in r.terms.items():
                sadd(img, act.act_path(h, p), c)
            if img:
                rep.check("relations are H-stable", False, f"{H.labels[h]} . ({r}) != 0")
                return
    rep.check("relations are H-stable", True)
    # module axioms on every graded piece
    for d in range(D + 1):
        mats = [act.dense(h, d) for h in range(n)]
        err = check_module(H, mats) if alg.dim(d) else None
        if not rep.check(f"module axioms in degree {d}", err is None, err or ""):
            return
    one = {v: Q(1) for v in range(len(quiver.vertices))}
    bad = next((h for h in range(n)
                if act.apply(h, one, 0) != {k: H.counit[h] * v for k, v in one.items() if H.counit[h]}),
               None)
    rep.check("h.1 = eps(h)1", bad is None, bad is not None and H.labels[bad])
    # arrows act as given
    if not act.grading:
        for a in range(len(quiver.arrows)):
            p = quiver.path([a])
            for h in range(n):
                given = {}
                for b, c in enumerate(act.arrow_mats[h][:, a]):
                    if c:
                        sadd(given, alg.nf_path(quiver.path([b])), c)
                if act.act_path(h, p) != given:
                    rep.check("arrow data compatible with vertex action", False,
                              f"{H.labels[h]} on {quiver.arrows[a].label}")
                    return
        rep.check("arrow data compatible with vertex action", True)
    # module-algebra identity on basis pairs
    for d1 in range(D + 1):
        for d2 in range(D + 1 - d1):
            for i in range(alg.dim(d1)):
                x = {i: Q(1)}
                for j in range(alg.dim(d2)):
                    y = {j: Q(1)}
                    xy = alg.multiply(x, d1, y, d2)
                    for h in range(n):
                        lhs = act.apply(h, xy, d1 + d2)
                        rhs: dict = {}
                        for c, h1, h2 in H.delta_terms[h]:
                            sadd(rhs, alg.multiply(act.apply(h1, x, d1), d1,
                                                   act.apply(h2, y, d2), d2), c)
                        if lhs != rhs:
                            b1, b2 = alg.piece(d1).basis[i], alg.piece(d2).basis[j]
                            rep.check("h(ab) = (h1 a)(h2 b)", False,
                                      f"h={H.labels[h]}, a={quiver.word(b1)}, b={quiver.word(b2)}")
                            return
    rep.check("h(ab) = (h1 a)(h2 b)", True)


def _verify_on_fd(A: FDAlgebra, H, act, rep, differential):
    n = H.dim
    err = check_module(H, act.full_mats)
    if not rep.check("module axioms", err is None, err or ""):
        return
    for h in range(n):
        for i in range(A.dim):
            if any(act.full_mats[h][k, i] for k in range(A.dim) if A.hdeg[k] != A.hdeg[i]):
                rep.check("action preserves degrees", False, f"{H.labels[h]} on {A.labels[i]}")
                return
    rep.check("action preserves degrees", True)
    bad = next((h for h in range(n) if act.apply(h, A.unit) !=
                {k: H.counit[h] * v for k, v in A.unit.items() if H.counit[h]}), None)
    rep.check("h.1 = eps(h)1", bad is None, bad is not None and H.labels[bad])
    for i in range(A.dim):
        for j in range(A.dim):
            x, y = {i: Q(1)}, {j: Q(1)}
            xy = A.mul(x, y)
            for h in range(n):
                rhs: dict = {}
                for c, h1, h2 in H.delta_terms[h]:
                    sadd(rhs, A.mul(act.apply(h1, x), act.apply(h2, y)), c)
                if act.apply(h, xy) != rhs:
                    rep.check("h(ab) = (h1 a)(h2 b)", False,
                              f"h={H.labels[h]}, a={A.labels[i]}, b={A.labels[j]}")
                    return
    rep.check("h(ab) = (h1 a)(h2 b)", True)
    if differential is not None:
        dm = np.asarray(differential, dtype=object)
        for h in range(n):
            ah = act.full_mats[h]
            if not np.array_equal(dm.dot(ah), ah.dot(dm)):
                bad = next(i for i in range(A.dim) if any(dm.dot(ah)[:, i] != ah.dot(dm)[:, i]))
                rep.check("d(h.a) = h.d(a)", False, f"h={H.labels[h]}, a={A.labels[bad]}")
                return
        rep.check("d(h.a) = h.d(a)", True)


# smash products -------------------------------------------------------------

class SmashAlgebra:
    """Graded pieces (A#H)_d = A_d (x) H of a presentation A, up to degree D.

    Elements of degree d are sparse dicts keyed by ``m * dim H + h``.
    """

    def __init__(self, P: Presentation, H: HopfAlgebraSC, act: HAction, D: int):
        self.base, self.hopf, self.action, self.D = P, H, act, D
        self.alg = P.algebra

    def dim(self, d: int) -> int:
        return self.alg.dim(d) * self.hopf.dim

    @property
    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.D + 1)]

    def label(self, d: int, k: int) -> str:
        n = self.hopf.dim
        return f"{self.base.quiver.word(self.alg.piece(d).basis[k // n])}#{self.hopf.labels[k % n]}"

    def multiply(self, x: dict, dx: int, y: dict, dy: int) -> dict:
        """(a#h)(b#g) = a (h1 . b) # h2 g."""
        H, n = self.hopf, self.hopf.dim
        out: dict = {}
        for kx, cx in x.items():
            a, h = divmod(kx, n)
            for ky, cy in y.items():
                b, g = divmod(ky, n)
                for c, h1, h2 in H.delta_terms[h]:
                    hb = self.action.apply(h1, {b: Q(1)}, dy)
                    if not hb:
                        continue
                    ab = self.alg.multiply({a: Q(1)}, dx, hb, dy)
                    if not ab:
                        continue
                    hg = H.mult[h2, g]
                    for k2, v2 in enumerate(hg):
                        if v2:
                            for m, v in ab.items():
                                key = m * n + k2
                                nv = out.get(key, 0) + cx * cy * c * v2 * v
                                if nv:
                                    out[key] = nv
                                else:
                                    out.pop(key, None)
        return out

    def unit(self) -> dict:
        n = self.hopf.dim
        return {v * n + h: c for v in range(len(self.base.quiver.vertices))
                for h, c in enumerate(self.hopf.unit) if c}

    def associativity_check(self, trials: int = 50, seed: int = 0) -> Report:
        rng = random.Random(seed)
        rep = Report("smash associativity", bounds={"D": self.D, "trials": trials})
        degs = [d for d in range(self.D + 1) if self.dim(d)]
        for _ in range(trials):
            d1, d2 = rng.choice(degs), rng.choice(degs)
            rest = [d for d in degs if d + d1 + d2 <= self.D]
            if d1 + d2 > self.D or not rest:
                continue
            d3 = rng.choice(rest)
            x, y, z = (self._random(d, rng) for d in (d1, d2, d3))
            lhs = self.multiply(self.multiply(x, d1, y, d2), d1 + d2, z, d3)
            rhs = self.multiply(x, d1, self.multiply(y, d2, z, d3), d2 + d3)
            if lhs != rhs:
                rep.check("(xy)z = x(yz)", False, f"degrees {(d1, d2, d3)}")
                return rep
        rep.check("(xy)z = x(yz)", True)
        return rep

    def _random(self, d, rng) -> dict:
        n = self.dim(d)
        return {k: Q(rng.randint(-3, 3)) for k in rng.sample(range(n), min(n, 3))}

    def to_fd(self) -> FDAlgebra:
        n = self.hopf.dim
        offsets, labels, ideg = [], [], []
        for d in range(self.D + 1):
            offsets.append(len(labels))
            for k in range(self.dim(d)):
                labels.append(self.label(d, k))
                ideg.append(d)
        table = {}
        for d1 in range(self.D + 1):
            for d2 in range(self.D + 1 - d1):
                for i in range(self.dim(d1)):
                    for j in range(self.dim(d2)):
                        prod = self.multiply({i: Q(1)}, d1, {j: Q(1)}, d2)
                        if prod:
                            o = offsets[d1 + d2]
                            table[(offsets[d1] + i, offsets[d2] + j)] = {o + k: v for k, v in prod.items()}
        return FDAlgebra(tuple(labels), (0,) * len(labels), tuple(ideg), table, self.unit(),
                         name=f"{self.base.name}#{self.hopf.name}")


def smash_fd(A: FDAlgebra, H: HopfAlgebraSC, act: HAction) -> FDAlgebra:
    """A#H for a finite-dimensional A; basis index i * dim H + h."""
    n = H.dim
    labels, hdeg, ideg = [], [], []
    for i in range(A.dim):
        for h in range(n):
            labels.append(f"{A.labels[i]}#{H.labels[h]}")
            hdeg.append(A.hdeg[i])
            ideg.append(A.ideg[i])
    table = {}
    for i in range(A.dim):
        for h in range(n):
            for j in range(A.dim):
                for g in range(n):
                    out: dict = {}
                    for c, h1, h2 in H.delta_terms[h]:
                        ab = A.mul({i: Q(1)}, act.apply(h1, {j: Q(1)}))
                        for k2, v2 in enumerate(H.mult[h2, g]):
                            if v2:
                                for m, v in ab.items():
                                    sadd(out, {m * n + k2: v}, c * v2)
                    if out:
                        table[(i * n + h, j * n + g)] = out
    unit = {k * n + h: c * u for k, c in A.unit.items() for h, u in enumerate(H.unit) if u}
    return FDAlgebra(tuple(labels), tuple(hdeg), tuple(ideg), table, unit,
                     name=f"{A.name}#{H.name}")


def smash_product(A, H: HopfAlgebraSC, act: HAction, D: int | None = None):
    """A#H: a SmashAlgebra for presentations (up to degree D), an FDAlgebra otherwise."""
    if isinstance(A, Presentation):
        if D is None:
            raise ValueError("a degree bound is required for presentations")
        rep = verify_module_algebra(A, H, act, min(D, 3))
        if not rep:
            raise ActionError(f"invalid action: {rep.first_failure}")
        return SmashAlgebra(A, H, act, D)
    rep = verify_module_algebra(A, H, act)
    if not rep:
        raise ActionError(f"invalid action: {rep.first_failure}")
    return smash_fd(A, H, act)


# coverings ------------------------------------------------------------------

@dataclass(eq=False)
class CoveringMap:
    source: Presentation
    base: Presentation
    group: FiniteGroup
    vertex_map: list  # S vertex -> (base vertex, h)
    arrow_map: list  # S arrow -> (base arrow, h)

    def vertex(self, v: int, h: int) -> int:
        return v * self.group.order + h

    @cached_property
    def _arrow_lookup(self):
        return {ah: i for i, ah in enumerate(self.arrow_map)}

    def lift_path(self, p: Path, h: int) -> Path:
        """The lift of a base path starting at the vertex (source(p), h)."""
        G, bq = self.group, self.base.quiver
        if not p.arrows:
            v = self.vertex(p.source, h)
            return self.source.quiver.trivial_path(v)
        arrows = []
        cur = h
        for a in reversed(p.arrows):
            arrows.append(self._arrow_lookup[(a, cur)])
            cur = G.mul(bq.arrow_gdeg(a), cur)
        arrows.reverse()
        return self.source.quiver.path(arrows)

    def push(self, p: Path) -> tuple[Path, int]:
        """Base path and starting sheet of a covering path."""
        bq = self.base.quiver
        v, h = self.vertex_map[p.source]
        if not p.arrows:
            return bq.trivial_path(v), h
        return bq.path([self.arrow_map[a][0] for a in p.arrows]), h

    def lift_element(self, e: PathElement, h: int) -> PathElement:
        return PathElement(self.source.quiver, {self.lift_path(p, h): c for p, c in e.terms.items()})


def covering_presentation(P: Presentation):
    """The covering quiver of a G-graded presentation with its lifted relations."""
    rep = check_g_homogeneity(P)
    if not rep:
        raise PresentationError(f"covering needs a G-homogeneous presentation: {rep.first_failure}")
    G, bq = P.group, P.quiver
    one_vertex = len(bq.vertices) == 1
    vlabels, vmap = [], []
    for v, vl in enumerate(bq.vertices):
        for h in G:
            vlabels.append(G.labels[h] if one_vertex else f"{vl}.{G.labels[h]}")
            vmap.append((v, h))
    specs, amap = [], []
    nG = G.order
    for a, arr in enumerate(bq.arrows):
        ga = bq.arrow_gdeg(a)
        for h in G:
            specs.append((f"{arr.label}_{h}", vlabels[arr.source * nG + h],
                          vlabels[arr.target * nG + G.mul(ga, h)], None, arr.ndeg))
            amap.append((a, h))
    quiver = Quiver.build(vlabels, specs)
    cov = CoveringMap(None, P, G, vmap, amap)
    cov.source = Presentation(quiver, (), None)
    rels = []
    for r in P.relations:
        for h in G:
            rels.append(cov.lift_element(r, h))
    S = Presentation(quiver, tuple(rels), P.homogeneity_degree,
                     name=f"cover({P.name or 'R'}, {G.name or 'G'})")
    cov.source = S
    return S, cov


def covering_algebra_map(cov: CoveringMap, d: int) -> np.ndarray:
    """Matrix of S_d -> R_d (x) kG*, lifted path from (v,h) |-> path # p_h."""
    S, P, G = cov.source, cov.base, cov.group
    n = G.order
    salg, ralg = S.algebra, P.algebra
    m = zeros(ralg.dim(d) * n, salg.dim(d))
    for j, p in enumerate(salg.piece(d).basis):
        base, h = cov.push(p)
        for k, v in ralg.nf_path(base).items():
            m[k * n + h, j] = v
    return m


def verify_covering_iso(P: Presentation, G: FiniteGroup | None = None, D: int = 4) -> Report:
    """S = kQ'/(rho') is isomorphic to R # kG* degreewise up to D."""
    G = G or P.group
    if P.group is not G:
        raise PresentationError("the presentation must be graded by the given group")
    S, cov = covering_presentation(P)
    act = action_from_grading(P)
    smash = SmashAlgebra(P, act.hopf, act, D)
    rep = Report(f"covering isomorphism for {P.name or 'R'} and {G.name or 'G'}", bounds={"D": D})
    maps = []
    for d in range(D + 1):
        m = covering_algebra_map(cov, d)
        maps.append(m)
        ok = m.shape[0] == m.shape[1] and rank(m) == m.shape[0]
        if not rep.check(f"bijective in degree {d}", ok, f"shape {m.shape}, rank {rank(m)}"):
            return rep
    cols = [[{i: v for i, v in enumerate(m[:, j]) if v} for j in range(m.shape[1])] for m in maps]
    salg = S.algebra
    for d1 in range(D + 1):
        for d2 in range(D + 1 - d1):
            for i in range(salg.dim(d1)):
                for j in range(salg.dim(d2)):
                    xy = salg.multiply({i: Q(1)}, d1, {j: Q(1)}, d2)
                    lhs = _matvec(cols[d1 + d2], xy)
                    rhs = smash.multiply(cols[d1][i], d1, cols[d2][j], d2)
                    if lhs != rhs:
                        w = (S.quiver.word(salg.piece(d1).basis[i]), S.quiver.word(salg.piece(d2).basis[j]))
                        rep.check("multiplicative on basis pairs", False, f"{w}")
                        return rep
    rep.check("multiplicative on basis pairs", True)
    one = {v: Q(1) for v in range(len(S.quiver.vertices))}
    rep.check("unit preserved", _matvec(cols[0], one) == smash.unit())
    rep.details["dims"] = [salg.dim(d) for d in range(D + 1)]
    return rep
