"""Minimal graded projective resolutions over R = kQ/I, degree by degree.

A free module is a list of generators (vertex v, degree s), each standing
for a copy of R e_v shifted to start in degree s.  Its degree-t piece has
basis pairs (g, m) where m is a basis monomial of R_{t-s} starting at v; the
pair lives at the vertex where that monomial ends.

Resolution P^n -> ... -> P^0 -> M: the generators of P^{n+1} in degree t at
vertex v span a complement of (R_{>=1} Z)_t inside Z_t, where Z = ker d_n.
With an H-action the complement is made H-stable by averaging a section with
a normalised integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .actions import ActionError, HAction
from .fdalgebra import sadd
from .hopf import HopfAlgebraSC, left_integral
from .linalg import Echelon, Q, TrackedEchelon, sparse_kernel
from .quiver import PathElement, Presentation
from .report import Report


class ResolutionError(ValueError):
    pass


class GradedModuleRep:
    """A finite-dimensional graded R-module given by arrow matrices.

    ``vertices[t]`` lists the vertex of each basis vector of M_t;
    ``arrow_action[(a, t)]`` is a list of sparse columns M_t -> M_{t+|a|}.
    ``hact[(h, t)]`` optionally gives an H-action by sparse columns.
    """

    def __init__(self, presentation: Presentation, vertices: dict, arrow_action=None, hact=None,
                 name=""):
        self.presentation = presentation
        self.vertices = {t: list(v) for t, v in vertices.items()}
        self.arrow_action = arrow_action or {}
        self.hact = hact
        self.name = name

    def dim(self, t: int) -> int:
        return len(self.vertices.get(t, ()))

    @property
    def degrees(self) -> list[int]:
        return sorted(t for t, v in self.vertices.items() if v)

    def vertex(self, t: int, i: int) -> int:
        return self.vertices[t][i]

    def lmul_arrow(self, a: int, vec: dict, t: int) -> dict:
        cols = self.arrow_action.get((a, t))
        out: dict = {}
        if cols:
            for i, c in vec.items():
                sadd(out, cols[i], c)
        return out

    def lmul_path(self, p, vec: dict, t: int) -> dict:
        if not p.arrows:
            return {i: c for i, c in vec.items() if self.vertices[t][i] == p.source}
        arrows = self.presentation.quiver.arrows
        for a in reversed(p.arrows):
            vec = self.lmul_arrow(a, vec, t)
            t += arrows[a].ndeg
        return vec

    def happly(self, h: int, vec: dict, t: int) -> dict:
        out: dict = {}
        cols = self.hact[(h, t)]
        for i, c in vec.items():
            sadd(out, cols[i], c)
        return out

    def relation_failure(self):
        """First relation acting nonzero, or None."""
        for r in self.presentation.relations:
            src = next(iter(r.endpoints()))[0]
            for t in self.degrees:
                for i in range(self.dim(t)):
                    if self.vertices[t][i] != src:
                        continue
                    acc: dict = {}
                    for p, c in r.terms.items():
                        sadd(acc, self.lmul_path(p, {i: Q(1)}, t), c)
                    if acc:
                        return r
        return None


def trivial_module(P: Presentation, vertices=None, hopf: HopfAlgebraSC | None = None) -> GradedModuleRep:
    """The semisimple module sum_v S_v over the chosen vertices (default: R_0)."""
    nv = len(P.quiver.vertices)
    vs = list(range(nv)) if vertices is None else [P.quiver.vertex_index(v) if isinstance(v, str) else v
                                                    for v in vertices]
    hact = None
    if hopf is not None:
        hact = {(h, 0): [({i: hopf.counit[h]} if hopf.counit[h] else {}) for i in range(len(vs))]
                for h in range(hopf.dim)}
    name = "R0" if vertices is None else "+".join(f"S_{P.quiver.vertices[v]}" for v in vs)
    return GradedModuleRep(P, {0: vs}, {}, hact, name=name)


def simple_module(P: Presentation, v) -> GradedModuleRep:
    return trivial_module(P, [v])


class FreeModule:
    """Graded free module over R = kQ/I built generator by generator."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.alg = presentation.algebra
        self.gens: list[tuple[int, int]] = []  # (vertex, degree)
        self._basis: dict[int, list] = {}
        self._index: dict[int, dict] = {}

    def add_generator(self, vertex: int, degree: int) -> int:
        self.gens.append((vertex, degree))
        for t in list(self._basis):
            if t >= degree:
                del self._basis[t]
                del self._index[t]
        return len(self.gens) - 1

    def basis(self, t: int) -> list:
        if t not in self._basis:
            out = []
            for g, (v, s) in enumerate(self.gens):
                if s > t:
                    continue
                for m, p in enumerate(self.alg.piece(t - s).basis):
                    if p.source == v:
                        out.append((g, m))
            self._basis[t] = out
            self._index[t] = {b: i for i, b in enumerate(out)}
        return self._basis[t]

    def index(self, t: int) -> dict:
        self.basis(t)
        return self._index[t]

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def vertex(self, t: int, i: int) -> int:
        g, m = self.basis(t)[i]
        return self.alg.piece(t - self.gens[g][1]).basis[m].target

    def block(self, t: int, v: int) -> list[int]:
        return [i for i in range(self.dim(t)) if self.vertex(t, i) == v]

    def generator_position(self, g: int) -> int:
        v, s = self.gens[g]
        return self.index(s)[(g, v)]

    def lmul_path(self, p, vec: dict, t: int) -> dict:
        """p * vec for vec in degree t; result in degree t + |p|."""
        bt = self.basis(t)
        t2 = t + p.ndeg
        idx2 = self.index(t2)
        out: dict = {}
        for i, c in vec.items():
            g, m = bt[i]
            s = self.gens[g][1]
            if not p.arrows:
                if self.alg.piece(t - s).basis[m].target == p.source:
                    sadd(out, {i: c})
                continue
            for m2, x in self.alg.lmul_path(p, {m: Q(1)}, t - s).items():
                k = idx2[(g, m2)]
                nv = out.get(k, 0) + c * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def lmul_arrow(self, a: int, vec: dict, t: int) -> dict:
        return self.lmul_path(self.presentation.quiver.path([a]), vec, t)


@dataclass
class SectionCertificate:
    level: int
    degree: int
    vertex: int
    count: int
    section_ok: bool
    h_linear: bool


@dataclass(eq=False)
class MinimalResolution:
    presentation: Presentation
    module: GradedModuleRep
    N: int
    D: int
    free: list = field(default_factory=list)
    # images[n][g] = d(generator g of P^n) as a sparse vector over P^{n-1} (or M)
    images: list = field(default_factory=list)
    hopf: HopfAlgebraSC | None = None
    action: HAction | None = None
    # gen_action[n][h] = {g: {g': c}} action on generators of P^n
    gen_action: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    _cols: dict = field(default_factory=dict, repr=False)

    @property
    def equivariant(self) -> bool:
        return self.hopf is not None

    def generators(self, n: int) -> list[tuple[int, int]]:
        return list(self.free[n].gens) if n < len(self.free) else []

    def ranks(self) -> list[int]:
        return [len(f.gens) for f in self.free]

    @property
    def length(self) -> int | None:
        """Projective dimension if some computed P^n is empty, else None."""
        for n, f in enumerate(self.free):
            if not f.gens:
                return n - 1
        return None

    @property
    def terminated(self) -> bool:
        return self.length is not None

    def target(self, n: int):
        return self.module if n == 0 else self.free[n - 1]

    def d_columns(self, n: int, t: int) -> list[dict]:
        """Columns of d_n on P^n_t, aligned with free[n].basis(t)."""
        key = (n, t)
        if key not in self._cols:
            F, tgt = self.free[n], self.target(n)
            cols = []
            for g, m in F.basis(t):
                v, s = F.gens[g]
                b = F.alg.piece(t - s).basis[m]
                cols.append(tgt.lmul_path(b, self.images[n][g], s))
            self._cols[key] = cols
        return self._cols[key]

    def differential_entries(self, n: int) -> dict:
        """Entries of d_n: (target generator, source generator) -> PathElement."""
        if n == 0:
            raise ResolutionError("the augmentation has no path entries")
        F, T = self.free[n], self.free[n - 1]
        quiver = self.presentation.quiver
        out = {}
        for g, img in enumerate(self.images[n]):
            s = F.gens[g][1]
            for i, c in img.items():
                g2, m = T.basis(s)[i]
                p = T.alg.piece(s - T.gens[g2][1]).basis[m]
                e = PathElement(quiver, {p: c})
                out[(g2, g)] = out[(g2, g)] + e if (g2, g) in out else e
        return out

    def minimality_failure(self):
        """(level, generator) whose image has a unit entry, or None."""
        for n in range(1, len(self.free)):
            T = self.free[n - 1]
            for g, img in enumerate(self.images[n]):
                s = self.free[n].gens[g][1]
                for i in img:
                    g2, m = T.basis(s)[i]
                    if T.gens[g2][1] == s:
                        return (n, g)
        return None

    def composition_failure(self):
        """(level, degree) where d_{n-1} d_n != 0, or None."""
        for n in range(1, len(self.free)):
            for g, img in enumerate(self.images[n]):
                s = self.free[n].gens[g][1]
                if self._apply_d(n - 1, img, s):
                    return (n, s)
        return None

    def _apply_d(self, n: int, vec: dict, t: int) -> dict:
        cols = self.d_columns(n, t)
        out: dict = {}
        for i, c in vec.items():
            sadd(out, cols[i], c)
        return out

    def exactness_failure(self):
        """(level, degree) where ker d_n != im d_{n+1} in a computed degree, or None."""
        for n in range(len(self.free) - 1):
            for t in range(self.D + 1):
                src = self.free[n].dim(t)
                if src == 0:
                    continue
                tgt_dim = self.target(n).dim(t) if n else self.module.dim(t)
                rows = _transpose(self.d_columns(n, t), tgt_dim)
                kdim = len(sparse_kernel(rows, src))
                ech = Echelon(src)
                for col in self.d_columns(n + 1, t):
                    ech.add(col)
                if ech.rank != kdim:
                    return (n, t)
        return None

    def betti_table(self) -> dict:
        out: dict = {}
        for n, F in enumerate(self.free):
            for v, s in F.gens:
                out[(n, s)] = out.get((n, s), 0) + 1
        return out

    def certificate(self) -> Report:
        rep = Report("minimal resolution", bounds={"N": self.N, "D": self.D})
        rep.check("d o d = 0", self.composition_failure() is None, str(self.composition_failure()))
        rep.check("entries lie in the augmentation ideal", self.minimality_failure() is None,
                  str(self.minimality_failure()))
        rep.check("exact in computed degrees", self.exactness_failure() is None,
                  str(self.exactness_failure()))
        if self.equivariant:
            bad = [c for c in self.sections if not (c.section_ok and c.h_linear)]
            rep.check("equivariant sections: pi s = id and H-linear", not bad, str(bad[:1]))
        rep.details["betti"] = {f"{n},{s}": c for (n, s), c in sorted(self.betti_table().items())}
        if not self.terminated:
            rep.details["truncated"] = f"P^{-self.N} is nonzero; resolution continues past N"
        return rep


def _transpose(cols: list[dict], nrows: int) -> list[dict]:
    rows = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return rows


def _require_counit_on_vertices(H: HopfAlgebraSC, act: HAction):
    for h in range(H.dim):
        m = act.vertex_mats[h]
        nv = m.shape[0]
        for i in range(nv):
            for j in range(nv):
                want = H.counit[h] if i == j else 0
                if m[i, j] != want:
                    raise ActionError("equivariant resolutions need H to act on vertices through the counit")


def minimal_resolution(P: Presentation, M: GradedModuleRep | None = None, N: int = 4, D: int = 6,
                       equivariant: tuple | None = None) -> MinimalResolution:
    """Minimal graded free resolution of M (default R_0) up to P^N and degree D.

    ``equivariant`` is an optional pair (H, action) with H semisimple; the
    generator spaces then carry compatible H-actions.
    """
    if N < 0 or D < 0:
        raise ValueError("bounds must be non-negative")
    H = act = None
    if equivariant is not None:
        H, act = equivariant
        if not act.on_presentation or act.target is not P:
            raise ActionError("the action must be defined on the same presentation")
        _require_counit_on_vertices(H, act)
        cert = left_integral(H)
        if not cert.semisimple:
            raise ActionError("equivariant resolutions need a semisimple Hopf algebra")
        integral = cert.element
        if M is None:
            M = trivial_module(P, hopf=H)
        elif M.hact is None:
            raise ActionError("module has no H-action")
    M = M or trivial_module(P)
    if M.presentation is not P:
        raise ResolutionError("module is over a different presentation")
    bad = M.relation_failure()
    if bad is not None:
        raise ResolutionError(f"relation {bad} does not act as zero on the module")
    res = MinimalResolution(P, M, N, D, hopf=H, action=act)
    nv = len(P.quiver.vertices)
    arrows = P.quiver.arrows
    for n in range(N + 1):
        F = FreeModule(P)
        res.free.append(F)
        res.images.append([])
        gact = {h: {} for h in range(H.dim)} if H else None
        res.gen_action.append(gact)
        tgt = res.target(n)
        for t in range(D + 1):
            tdim = tgt.dim(t)
            if tdim == 0:
                continue
            if n == 0:
                zero_cols = None
            else:
                zero_cols = res.d_columns(n - 1, t)
            # image of generators of lower degree
            image_cols = []
            for g, (v, s) in enumerate(F.gens):
                for m, p in enumerate(F.alg.piece(t - s).basis):
                    if p.source == v:
                        image_cols.append(tgt.lmul_path(p, res.images[n][g], s))
            for v in range(nv):
                blk = [i for i in range(tdim) if tgt.vertex(t, i) == v]
                if not blk:
                    continue
                if zero_cols is None:
                    kernel = [{i: Q(1)} for i in blk]
                else:
                    ndim = res.target(n - 1).dim(t)
                    rows = _transpose([zero_cols[i] for i in blk], ndim)
                    kernel = [{blk[k]: c for k, c in vec.items()}
                              for vec in sparse_kernel([r for r in rows if r], len(blk))]
                if not kernel:
                    continue
                ech = TrackedEchelon()
                for j, col in enumerate(image_cols):
                    if col and tgt.vertex(t, min(col)) == v:
                        ech.add(col, ("img", j))
                complement = []
                for z in kernel:
                    if ech.add(z, ("new", len(complement))):
                        complement.append(z)
                if not complement:
                    continue
                if H is None:
                    for z in complement:
                        F.add_generator(v, t)
                        res.images[n].append(z)
                    continue
                gens, qact, cert = _averaged_section(H, integral, tgt, t, complement, ech,
                                                     res, n, v)
                res.sections.append(cert)
                first = len(F.gens)
                for z in gens:
                    F.add_generator(v, t)
                    res.images[n].append(z)
                for h in range(H.dim):
                    for i in range(len(gens)):
                        gact[h][first + i] = {first + k: c for k, c in qact[h][i].items()}
        if not F.gens:
            break
    return res


def _happly_target(res: MinimalResolution, n: int, h: int, vec: dict, t: int) -> dict:
    """Action of basis element h of H on the target of d_n in degree t."""
    if n == 0:
        return res.module.happly(h, vec, t)
    F = res.free[n - 1]
    H, act = res.hopf, res.action
    gact = res.gen_action[n - 1]
    basis = F.basis(t)
    idx = F.index(t)
    out: dict = {}
    for i, c in vec.items():
        g, m = basis[i]
        s = F.gens[g][1]
        for c1, h1, h2 in H.delta_terms[h]:
            hb = act.apply(h1, {m: Q(1)}, t - s)
            if not hb:
                continue
            for g2, cg in gact[h2].get(g, {}).items():
                for m2, cb in hb.items():
                    sadd(out, {idx[(g2, m2)]: c * c1 * cg * cb})
    return out


def _averaged_section(H, integral, tgt, t, complement, ech, res, n, v):
    """H-stable generators lifting the quotient Z/I, via s~ = L1 s(S(L2) .)."""
    k = len(complement)

    def quotient_coords(vec):
        rem, combo = ech.express(vec)
        if rem:
            raise ResolutionError("submodule is not H-stable")
        return {tag[1]: c for tag, c in combo.items() if tag[0] == "new"}

    def act(h, vec):
        return _happly_target(res, n, h, vec, t)

    # action on the quotient, columns indexed by complement position
    qact = [[quotient_coords(act(h, z)) for z in complement] for h in range(H.dim)]

    def qapply_elem(hvec, q: dict) -> dict:
        out: dict = {}
        for h, c in enumerate(hvec):
            if c:
                for i, x in q.items():
                    sadd(out, qact[h][i], c * x)
        return out

    gens = []
    for i in range(k):
        total: dict = {}
        for c, l1, l2 in H.delta_terms_of(integral):
            q = qapply_elem(H.antipode[:, l2], {i: Q(1)})
            lifted: dict = {}
            for j, x in q.items():
                sadd(lifted, complement[j], x)
            sadd(total, act(l1, lifted), c)
        gens.append(total)
    section_ok = all(quotient_coords(gens[i]) == {i: Q(1)} for i in range(k))
    h_linear = True
    for h in range(H.dim):
        for i in range(k):
            want: dict = {}
            for j, c in qact[h][i].items():
                sadd(want, gens[j], c)
            if act(h, gens[i]) != want:
                h_linear = False
    return gens, qact, SectionCertificate(n, t, v, k, section_ok, h_linear)


def betti_table(res: MinimalResolution) -> dict:
    return res.betti_table()


def koszul_degree(n: int, d: int) -> int:
    """Generator degree of P^n for a d-Koszul algebra."""
    return (n // 2) * d if n % 2 == 0 else ((n - 1) // 2) * d + 1


def d_koszul_check(res: MinimalResolution, d: int) -> Report:
    rep = Report(f"{d}-Koszul up to homological degree {len(res.free) - 1}",
                 bounds={"N": res.N, "D": res.D})
    for n, F in enumerate(res.free):
        want = koszul_degree(n, d)
        off = sorted({s for _, s in F.gens if s != want})
        if not rep.check(f"P^{-n} generated in degree {want}", not off,
                         f"generators in degree {off}"):
            rep.details["first_off_diagonal"] = {"n": n, "degree": off[0]}
            break
    rep.details["betti"] = {f"{n},{s}": c for (n, s), c in sorted(res.betti_table().items())}
    return rep


def hom_to_simple_differentials_vanish(res: MinimalResolution) -> bool:
    """The differentials of Hom(P, R_0) vanish (checked, not assumed)."""
    return res.minimality_failure() is None


def gorenstein_check_bounded(P: Presentation, N: int = 4, D: int = 6,
                             res: MinimalResolution | None = None) -> Report:
    """Cohomology of Hom_R(P, R) for the resolution P of R_0, by internal degree.

    Cell (n, j) is the dimension of Ext^n(R_0, R) in internal degree j (maps
    lowering degree by j).  The verdict is positive when exactly one cell is
    nonzero and its dimension is the number of vertices.
    """
    res = res or minimal_resolution(P, N=N, D=D)
    rep = Report(f"bounded AS-Gorenstein check for {P.name or 'R'}", bounds={"N": N, "D": D})
    if not res.terminated:
        rep.inconclusive(f"resolution does not terminate within N={N}, D={D}")
        return rep
    alg = P.algebra
    levels = [F for F in res.free if F.gens]
    smax = max(s for F in levels for _, s in F.gens)
    cells = {}
    for t in range(-smax, D - smax + 1):
        dims = [_cochain_dim(F, alg, t) for F in levels]
        ranks = [_coboundary_rank(res, n, alg, t) for n in range(len(levels))]
        for n in range(len(levels)):
            h = dims[n] - ranks[n] - (ranks[n - 1] if n else 0)
            if h:
                cells[(n, -t)] = h
    rep.details["cells"] = {f"{n},{j}": c for (n, j), c in sorted(cells.items())}
    nv = len(P.quiver.vertices)
    ok = len(cells) == 1 and next(iter(cells.values())) == nv
    rep.check("Ext(R0, R) concentrated in one cell of dimension #vertices", ok, str(cells))
    if ok:
        (n, j), = cells
        rep.details["dimension"] = n
        rep.details["shift"] = j
    return rep


def _cochain_basis(F: FreeModule, alg, t: int) -> list:
    out = []
    for g, (v, s) in enumerate(F.gens):
        if s + t < 0:
            continue
        for m, p in enumerate(alg.piece(s + t).basis):
            if p.target == v:
                out.append((g, m))
    return out


def _cochain_dim(F, alg, t) -> int:
    return len(_cochain_basis(F, alg, t))


def _coboundary_rank(res: MinimalResolution, n: int, alg, t: int) -> int:
    """Rank of Hom(P^n, R)_t -> Hom(P^{n+1}, R)_t, f |-> f o d."""
    if n + 1 >= len(res.free) or not res.free[n + 1].gens:
        return 0
    F, F2 = res.free[n], res.free[n + 1]
    src = _cochain_basis(F, alg, t)
    tgt_index = {b: i for i, b in enumerate(_cochain_basis(F2, alg, t))}
    # d(g') grouped by the source generator it involves
    by_gen: dict = {}
    for g2, img in enumerate(res.images[n + 1]):
        s2 = F2.gens[g2][1]
        for i, c in img.items():
            g, m = F.basis(s2)[i]
            by_gen.setdefault(g, []).append((g2, s2, m, c))
    ech = Echelon(len(tgt_index))
    for g, m in src:
        s = F.gens[g][1]
        col: dict = {}
        for g2, s2, mb, c in by_gen.get(g, ()):
            b = alg.piece(s2 - s).basis[mb]
            for k, x in alg.lmul_path(b, {m: Q(1)}, s + t).items():
                sadd(col, {tgt_index[(g2, k)]: c * x})
        ech.add(col)
    return ech.rank
