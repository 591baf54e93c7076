"""Quivers, paths and graded presentations R = kQ/I.

Paths are stored in *written* order: the path ``x y`` means "traverse y, then
x" (composition right-to-left), so ``Path.arrows[0]`` is the last arrow
traversed.  Files list paths in the same left-to-right written order.

Graded pieces are computed degree by degree without Groebner bases: every
path of degree d is an arrow times a path of lower degree, so

    R_d = span{a (x) m : m a basis monomial of R_{d-|a|}} / span{r q}

where r runs over relations and q over basis monomials of R_{d-|r|}.  The
chosen basis of R_d consists of monomials ``a*m``; the largest monomials in
degree-lexicographic order are eliminated first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .groups import FiniteGroup
from .linalg import Echelon, Q, qparse
from .report import Report


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int
    ndeg: int = 1
    gdeg: int | None = None  # group element index; None means identity


@dataclass(frozen=True)
class Path:
    arrows: tuple[int, ...]
    source: int
    target: int
    ndeg: int = 0

    @property
    def length(self) -> int:
        return len(self.arrows)

    def key(self):
        return (self.ndeg, self.arrows, self.source)


@dataclass(frozen=True, eq=False)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    group: FiniteGroup | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise PresentationError("arrow labels must be unique")
        if set(labels) & set(self.vertices):
            raise PresentationError("arrow and vertex labels must differ")
        nv = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < nv and 0 <= a.target < nv):
                raise PresentationError(f"arrow {a.label!r} has invalid endpoints")
            if a.ndeg < 1:
                raise PresentationError(f"arrow {a.label!r} must have positive degree")
            if a.gdeg is not None:
                if self.group is None or not 0 <= a.gdeg < self.group.order:
                    raise PresentationError(f"arrow {a.label!r} has an invalid group degree")

    @classmethod
    def build(cls, vertices, arrows, group=None) -> "Quiver":
        """``arrows`` is a list of (label, source label, target label[, gdeg[, ndeg]])."""
        vertices = tuple(vertices)
        vidx = {v: i for i, v in enumerate(vertices)}
        out = []
        for entry in arrows:
            label, s, t, *rest = entry
            gdeg = rest[0] if rest else None
            ndeg = rest[1] if len(rest) > 1 else 1
            if s not in vidx or t not in vidx:
                raise PresentationError(f"arrow {label!r} refers to an unknown vertex")
            if isinstance(gdeg, str):
                if group is None or gdeg not in group.labels:
                    raise PresentationError(f"arrow {label!r} has unknown group degree {gdeg!r}")
                gdeg = group.index(gdeg)
            out.append(Arrow(label, vidx[s], vidx[t], ndeg, gdeg))
        return cls(vertices, tuple(out), group)

    @cached_property
    def _arrow_index(self):
        return {a.label: i for i, a in enumerate(self.arrows)}

    def arrow_index(self, label: str) -> int:
        try:
            return self._arrow_index[label]
        except KeyError:
            raise PresentationError(f"unknown arrow {label!r}") from None

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise PresentationError(f"unknown vertex {label!r}") from None

    def arrow_gdeg(self, a: int) -> int:
        g = self.arrows[a].gdeg
        if g is None:
            return self.group.identity if self.group else 0
        return g

    def trivial_path(self, v: int) -> Path:
        return Path((), v, v, 0)

    def path(self, word) -> Path:
        """Path from arrow labels (or indices) in written order."""
        idx = tuple(self.arrow_index(a) if isinstance(a, str) else int(a) for a in word)
        if not idx:
            raise PresentationError("use trivial_path for length-zero paths")
        for left, right in zip(idx, idx[1:]):
            if self.arrows[left].source != self.arrows[right].target:
                raise PresentationError(
                    f"arrows {self.arrows[left].label}{self.arrows[right].label} are not composable")
        return Path(idx, self.arrows[idx[-1]].source, self.arrows[idx[0]].target,
                    sum(self.arrows[a].ndeg for a in idx))

    def concat(self, p: Path, q: Path) -> Path | None:
        """The product p*q (q first), or None when q does not end where p starts."""
        if p.source != q.target:
            return None
        return Path(p.arrows + q.arrows, q.source, p.target, p.ndeg + q.ndeg)

    def gdeg(self, p: Path) -> int:
        if self.group is None:
            return 0
        return self.group.prod(self.arrow_gdeg(a) for a in p.arrows)

    def word(self, p: Path) -> str:
        if not p.arrows:
            return f"e_{self.vertices[p.source]}"
        return "*".join(self.arrows[a].label for a in p.arrows)

    def reversed_arrow_order(self) -> "Quiver":
        return Quiver(self.vertices, tuple(reversed(self.arrows)), self.group)


class PathElement:
    """Formal rational combination of paths of one quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms=None):
        self.quiver = quiver
        self.terms: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            c = qparse(c)
            if c:
                self.terms[p] = self.terms.get(p, Q(0)) + c
                if not self.terms[p]:
                    del self.terms[p]

    @classmethod
    def from_words(cls, quiver: Quiver, words) -> "PathElement":
        """``words`` is a list of (coefficient, [arrow labels in written order])."""
        terms: dict = {}
        for coef, word in words:
            p = quiver.path(word)
            terms[p] = terms.get(p, Q(0)) + qparse(coef)
        return cls(quiver, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Q(0)) + c
        return PathElement(self.quiver, out)

    def __neg__(self):
        return PathElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PathElement":
        c = qparse(c)
        return PathElement(self.quiver, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PathElement):
            return self.scale(other)
        out: dict = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                pq = self.quiver.concat(p, q)
                if pq is not None:
                    out[pq] = out.get(pq, Q(0)) + c * d
        return PathElement(self.quiver, out)

    def __eq__(self, other):
        return isinstance(other, PathElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def ndegs(self) -> set[int]:
        return {p.ndeg for p in self.terms}

    @property
    def ndeg(self) -> int:
        degs = self.ndegs()
        if len(degs) != 1:
            raise PresentationError(f"element is not N-homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def gdegs(self) -> set[int]:
        return {self.quiver.gdeg(p) for p in self.terms}

    def endpoints(self) -> set[tuple[int, int]]:
        return {(p.source, p.target) for p in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms, key=Path.key):
            c = self.terms[p]
            parts.append(f"{c}*{self.quiver.word(p)}" if c != 1 else self.quiver.word(p))
        return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class Presentation:
    quiver: Quiver
    relations: tuple[PathElement, ...] = ()
    homogeneity_degree: int | None = None
    name: str = ""

    def __post_init__(self):
        rels = tuple(r for r in self.relations if not r.is_zero())
        object.__setattr__(self, "relations", rels)
        for r in rels:
            if r.quiver is not self.quiver:
                raise PresentationError("relation built on a different quiver")
            d = r.ndeg
            if d < 1:
                raise PresentationError("relations must have positive degree")
            if len(r.endpoints()) != 1:
                raise PresentationError(f"relation {r} is not a combination of parallel paths")
            if self.homogeneity_degree is not None and d != self.homogeneity_degree:
                raise PresentationError(
                    f"relation {r} has degree {d}, expected {self.homogeneity_degree}")

    @property
    def group(self) -> FiniteGroup | None:
        return self.quiver.group

    @cached_property
    def algebra(self) -> "QuotientAlgebra":
        return QuotientAlgebra(self)

    def with_relations(self, relations, name="") -> "Presentation":
        return Presentation(self.quiver, tuple(relations), None, name)


@dataclass
class _Piece:
    degree: int
    basis: list[Path]
    index: dict
    split: list  # (arrow, index in lower piece) for each basis monomial
    # left[a][m] = normal form of a * (monomial m of degree d-|a|), sparse
    left: dict = field(default_factory=dict)
    # reduction data: spanning pairs and the reduced relation rows
    pair_col: dict = field(default_factory=dict)
    pivot_rows: dict = field(default_factory=dict)
    col_to_basis: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)


class QuotientAlgebra:
    """Graded pieces, normal forms and multiplication of R = kQ/I."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self._pieces: list[_Piece] = []

    def piece(self, d: int) -> _Piece:
        if d < 0:
            raise ValueError("negative degree")
        while len(self._pieces) <= d:
            self._pieces.append(self._build(len(self._pieces)))
        return self._pieces[d]

    def dim(self, d: int) -> int:
        return self.piece(d).dim

    def _build(self, d: int) -> _Piece:
        Qv = self.quiver
        if d == 0:
            basis = [Qv.trivial_path(v) for v in range(len(Qv.vertices))]
            return _Piece(0, basis, {p: i for i, p in enumerate(basis)}, [None] * len(basis))
        pairs = []
        for a, arr in enumerate(Qv.arrows):
            if arr.ndeg > d:
                continue
            low = self.piece(d - arr.ndeg)
            for m, mp in enumerate(low.basis):
                if mp.target == arr.source:
                    pairs.append((Path((a,) + mp.arrows, mp.source, arr.target, d), a, m))
        # largest monomial gets column 0 so that it is eliminated first
        pairs.sort(key=lambda t: t[0].key(), reverse=True)
        pair_col = {(a, m): c for c, (_, a, m) in enumerate(pairs)}
        ech = Echelon(len(pairs))
        for r in self.presentation.relations:
            dr = r.ndeg
            if dr > d:
                continue
            src = next(iter(r.endpoints()))[0]
            low = self.piece(d - dr)
            for q, qp in enumerate(low.basis):
                if qp.target != src:
                    continue
                row: dict = {}
                for w, c in r.terms.items():
                    a0 = w.arrows[0]
                    vec = {q: Q(1)}
                    deg = d - dr
                    for a in reversed(w.arrows[1:]):
                        vec = self._lmul_arrow(a, vec, deg)
                        deg += Qv.arrows[a].ndeg
                    for m, x in vec.items():
                        col = pair_col[(a0, m)]
                        row[col] = row.get(col, Q(0)) + c * x
                ech.add(row)
        reduced = dict(ech.reduced_rows())
        free = [c for c in range(len(pairs)) if c not in reduced]
        free.sort(key=lambda c: pairs[c][0].key())
        basis = [pairs[c][0] for c in free]
        col_to_basis = {c: i for i, c in enumerate(free)}
        piece = _Piece(d, basis, {p: i for i, p in enumerate(basis)},
                       [(pairs[c][1], pairs[c][2]) for c in free],
                       pair_col=pair_col, pivot_rows=reduced, col_to_basis=col_to_basis)
        for a, arr in enumerate(Qv.arrows):
            if arr.ndeg > d:
                continue
            low = self.piece(d - arr.ndeg)
            cols = []
            for m in range(low.dim):
                c = pair_col.get((a, m))
                cols.append({} if c is None else self._reduce_col(piece, c))
            piece.left[a] = cols
        return piece

    @staticmethod
    def _reduce_col(piece: _Piece, c: int) -> dict:
        if c in piece.col_to_basis:
            return {piece.col_to_basis[c]: Q(1)}
        row = piece.pivot_rows[c]
        return {piece.col_to_basis[k]: -v for k, v in row.items() if k != c}

    def _lmul_arrow(self, a: int, vec: dict, deg: int) -> dict:
        """a * vec for vec a sparse vector over the basis of R_deg."""
        target = self.piece(deg + self.quiver.arrows[a].ndeg)
        cols = target.left[a]
        out: dict = {}
        for m, x in vec.items():
            for k, y in cols[m].items():
                nv = out.get(k, 0) + x * y
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def lmul_path(self, p: Path, vec: dict, deg: int) -> dict:
        """p * vec, vec sparse over R_deg; result over R_{deg+|p|}."""
        if not p.arrows:
            piece = self.piece(deg)
            return {m: x for m, x in vec.items() if piece.basis[m].target == p.source}
        for a in reversed(p.arrows):
            vec = self._lmul_arrow(a, vec, deg)
            deg += self.quiver.arrows[a].ndeg
        return vec

    def nf_path(self, p: Path) -> dict:
        return self.lmul_path(p, {p.source: Q(1)}, 0) if p.arrows else {p.source: Q(1)}

    def nf(self, e: PathElement) -> dict:
        out: dict = {}
        for p, c in e.terms.items():
            for k, x in self.nf_path(p).items():
                out[k] = out.get(k, Q(0)) + c * x
        return {k: v for k, v in out.items() if v}

    def multiply(self, x: dict, dx: int, y: dict, dy: int) -> dict:
        """Product of sparse elements x in R_dx and y in R_dy."""
        piece = self.piece(dx)
        out: dict = {}
        for m, c in x.items():
            for k, v in self.lmul_path(piece.basis[m], y, dy).items():
                out[k] = out.get(k, Q(0)) + c * v
        return {k: v for k, v in out.items() if v}

    def monomial_split(self, d: int, m: int):
        """(arrow, lower index) with basis[m] == arrow * lower basis monomial."""
        return self.piece(d).split[m]


@dataclass
class GradedBasis:
    degree: int
    basis: list[Path]
    algebra: QuotientAlgebra = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, p: Path) -> np.ndarray:
        return _dense(self.algebra.nf_path(p), self.dim)

    @property
    def nf_matrix(self) -> np.ndarray:
        """Columns: normal forms of all degree-d paths (in deglex order)."""
        paths = enumerate_paths(self.algebra.quiver, self.degree)
        m = np.empty((self.dim, len(paths)), dtype=object)
        m.fill(Q(0))
        for j, p in enumerate(paths):
            for k, v in self.algebra.nf_path(p).items():
                m[k, j] = v
        return m


def _dense(vec: dict, n: int) -> np.ndarray:
    v = np.empty(n, dtype=object)
    v.fill(Q(0))
    for k, x in vec.items():
        v[k] = x
    return v


def enumerate_paths(quiver: Quiver, d: int, endpoints=None) -> list[Path]:
    """All paths of total degree d in deglex order, optionally with fixed (source, target)."""
    if d < 0:
        raise ValueError("negative degree")
    by_deg: list[list[Path]] = [[quiver.trivial_path(v) for v in range(len(quiver.vertices))]]
    for k in range(1, d + 1):
        layer = []
        for a, arr in enumerate(quiver.arrows):
            if arr.ndeg > k:
                continue
            for q in by_deg[k - arr.ndeg]:
                if q.target == arr.source:
                    layer.append(Path((a,) + q.arrows, q.source, arr.target, k))
        by_deg.append(layer)
    out = by_deg[d]
    if endpoints is not None:
        s, t = endpoints
        out = [p for p in out if (s is None or p.source == s) and (t is None or p.target == t)]
    return sorted(out, key=Path.key)


def graded_basis(P: Presentation, d: int) -> GradedBasis:
    piece = P.algebra.piece(d)
    return GradedBasis(d, list(piece.basis), P.algebra)


def normal_form(e: PathElement, P: Presentation, d: int) -> np.ndarray:
    if not e.is_zero() and e.ndeg != d:
        raise PresentationError(f"element has degree {e.ndeg}, expected {d}")
    return _dense(P.algebra.nf(e), P.algebra.dim(d))


def hilbert_function(P: Presentation, D: int) -> list[int]:
    if D < 0:
        raise ValueError("negative degree bound")
    return [P.algebra.dim(d) for d in range(D + 1)]


def check_g_homogeneity(P: Presentation) -> Report:
    rep = Report("G-homogeneity")
    G = P.group
    if G is None:
        rep.check("presentation carries a group grading", False, "no group attached")
        return rep
    rep.check("vertex idempotents have identity degree", True)
    for r in P.relations:
        degs = r.gdegs()
        if len(degs) != 1:
            labels = sorted(G.labels[g] for g in degs)
            rep.check("relations are G-homogeneous", False, f"{r} mixes degrees {labels}")
            return rep
    rep.check("relations are G-homogeneous", True)
    return rep


def path_element(P_or_Q, words) -> PathElement:
    quiver = P_or_Q.quiver if isinstance(P_or_Q, Presentation) else P_or_Q
    return PathElement.from_words(quiver, words)


def one_vertex_presentation(arrows, relations=(), group=None, gdegs=None, name="",
                            homogeneity_degree=None) -> Presentation:
    """Convenience constructor for loops on a single vertex.

    ``relations`` is a list of relations, each a list of (coef, word) with
    words given as strings of single-letter arrow labels or label lists.
    """
    specs = []
    for i, a in enumerate(arrows):
        g = None if gdegs is None else gdegs[i]
        specs.append((a, "o", "o", g))
    quiver = Quiver.build(["o"], specs, group)
    rels = [PathElement.from_words(quiver, [(c, list(w)) for c, w in rel]) for rel in relations]
    return Presentation(quiver, tuple(rels), homogeneity_degree, name)


def commutative_polynomial(n_vars: int = 3, group=None, gdegs=None) -> Presentation:
    """k[x,y,z] (or fewer variables) as a one-vertex quiver with commutators."""
    names = "xyzuvw"[:n_vars]
    rels = [[(1, a + b), (-1, b + a)] for a, b in _pairs(names)]
    return one_vertex_presentation(list(names), rels, group, gdegs,
                                   name=f"k[{','.join(names)}]", homogeneity_degree=2)


def _pairs(names):
    # ordering of the commutators follows xy-yx, xz-zx, zy-yz for three variables
    out = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            out.append((a, b))
    if len(names) == 3:
        out[2] = ("z", "y")
    return out


def free_algebra(arrows, name="") -> Presentation:
    return one_vertex_presentation(list(arrows), (), name=name or f"k<{','.join(arrows)}>")


def all_words(alphabet, d):
    return ["".join(w) for w in product(alphabet, repeat=d)]
