"""Finite-dimensional graded algebras given by structure constants.

Each basis element carries two degrees: ``hdeg`` enters Koszul signs
(cohomological degree), ``ideg`` is an extra internal weight that never
produces a sign.  Products are stored sparsely: ``table[i, j]`` is a dict
``{k: coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .linalg import Echelon, Q, qmatrix, solve_linear, zeros


class AlgebraError(ValueError):
    pass


def sadd(acc: dict, vec: dict, c=1) -> dict:
    """acc += c*vec in place (sparse), dropping zeros."""
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def dense(vec: dict, n: int) -> np.ndarray:
    v = np.empty(n, dtype=object)
    v.fill(Q(0))
    for k, x in vec.items():
        v[k] = x
    return v


def sparse(vec) -> dict:
    return {i: Q(x) for i, x in enumerate(vec) if x}


@dataclass(eq=False)
class FDAlgebra:
    labels: tuple[str, ...]
    hdeg: tuple[int, ...]
    ideg: tuple[int, ...]
    table: dict
    unit: dict
    name: str = ""
    generators: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.hdeg) != n or len(self.ideg) != n:
            raise AlgebraError("one degree per basis element required")
        self.labels, self.hdeg, self.ideg = tuple(self.labels), tuple(self.hdeg), tuple(self.ideg)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.table.get((i, j))
                if prod:
                    sadd(out, prod, a * b)
        return out

    def degree_of(self, x: dict) -> int:
        degs = {self.hdeg[i] for i in x}
        if len(degs) != 1:
            raise AlgebraError("element is not homogeneous")
        return degs.pop()

    def basis_in_degree(self, n: int) -> list[int]:
        return [i for i in range(self.dim) if self.hdeg[i] == n]

    @cached_property
    def degrees(self) -> list[int]:
        return sorted(set(self.hdeg))

    def left_matrix(self, x: dict) -> np.ndarray:
        m = zeros(self.dim, self.dim)
        for j in range(self.dim):
            for k, v in self.mul(x, {j: Q(1)}).items():
                m[k, j] = v
        return m

    @cached_property
    def regular_action(self) -> list[np.ndarray]:
        return [self.left_matrix({i: Q(1)}) for i in range(self.dim)]

    def associativity_failure(self, triples=None):
        """First basis triple (i, j, k) with (ij)k != i(jk), or None."""
        rng = range(self.dim)
        for i, j, k in triples if triples is not None else product(rng, rng, rng):
            e = {i: Q(1)}, {j: Q(1)}, {k: Q(1)}
            if self.mul(self.mul(e[0], e[1]), e[2]) != self.mul(e[0], self.mul(e[1], e[2])):
                return (i, j, k)
        return None

    def unit_failure(self):
        for i in range(self.dim):
            e = {i: Q(1)}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return i
        return None

    def element_label(self, x: dict) -> str:
        if not x:
            return "0"
        return " + ".join(self.labels[k] if v == 1 else f"{v}*{self.labels[k]}"
                          for k, v in sorted(x.items()))

    def restrict_degrees(self, keep) -> "FDAlgebra":
        """Quotient by the span of basis elements of hdeg not in ``keep``
        (valid when that span is an ideal, e.g. a top truncation)."""
        idx = [i for i in range(self.dim) if self.hdeg[i] in keep]
        new = {o: n for n, o in enumerate(idx)}
        table = {}
        for (i, j), prod in self.table.items():
            if i in new and j in new:
                p = {new[k]: v for k, v in prod.items() if k in new}
                if p:
                    table[(new[i], new[j])] = p
        return FDAlgebra(tuple(self.labels[i] for i in idx), tuple(self.hdeg[i] for i in idx),
                         tuple(self.ideg[i] for i in idx), table,
                         {new[k]: v for k, v in self.unit.items() if k in new}, self.name)


def find_unit(labels, table) -> dict | None:
    """Solve for a two-sided unit of the structure constants, if any."""
    n = len(labels)
    rows, rhs = [], []
    for b, k in product(range(n), repeat=2):
        rows.append([table.get((i, b), {}).get(k, 0) for i in range(n)])
        rhs.append(1 if b == k else 0)
        rows.append([table.get((b, i), {}).get(k, 0) for i in range(n)])
        rhs.append(1 if b == k else 0)
    if n == 0:
        return {}
    sol = solve_linear(qmatrix(rows), np.array([Q(x) for x in rhs], dtype=object))
    return None if sol is None else sparse(sol)


def from_dense(labels, hdeg, mult, ideg=None, unit=None, name="") -> FDAlgebra:
    """``mult[i][j]`` is the coefficient vector of b_i b_j."""
    n = len(labels)
    table = {}
    for i, j in product(range(n), repeat=2):
        v = {k: Q(x) for k, x in enumerate(mult[i][j]) if Q(x)}
        if v:
            table[(i, j)] = v
    if unit is None:
        unit = find_unit(labels, table)
        if unit is None:
            raise AlgebraError("algebra has no unit")
    elif not isinstance(unit, dict):
        unit = sparse([Q(x) for x in unit])
    return FDAlgebra(tuple(labels), tuple(hdeg), tuple(ideg or [0] * n), table, unit, name)


def truncated_algebra(P, D: int) -> FDAlgebra:
    """R / R_{>D} for a presentation R, with basis the normal-form monomials."""
    alg = P.algebra
    quiver = P.quiver
    offsets, labels, ideg = [], [], []
    for d in range(D + 1):
        offsets.append(len(labels))
        for p in alg.piece(d).basis:
            labels.append(quiver.word(p))
            ideg.append(d)
    table = {}
    for d1 in range(D + 1):
        b1 = alg.piece(d1).basis
        for d2 in range(D + 1 - d1):
            for j in range(alg.dim(d2)):
                for i, p in enumerate(b1):
                    prod = alg.lmul_path(p, {j: Q(1)}, d2)
                    if prod:
                        o = offsets[d1 + d2]
                        table[(offsets[d1] + i, offsets[d2] + j)] = {o + k: v for k, v in prod.items()}
    nv = len(quiver.vertices)
    unit = {v: Q(1) for v in range(nv)}
    gens = []
    for a, arr in enumerate(quiver.arrows):
        if arr.ndeg <= D:
            nf = alg.nf_path(quiver.path([a]))
            gens.append({offsets[arr.ndeg] + k: v for k, v in nf.items()})
    A = FDAlgebra(tuple(labels), (0,) * len(labels), tuple(ideg), table, unit,
                  name=f"{P.name or 'R'}_<={D}", generators=gens)
    A.offsets = offsets
    A.presentation = P
    return A


def span_rank(vectors, ncols: int) -> int:
    ech = Echelon(ncols)
    for v in vectors:
        ech.add(v)
    return ech.rank
