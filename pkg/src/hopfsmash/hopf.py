"""Finite-dimensional Hopf algebras given by structure constants.

Conventions: ``mult[i, j, k]`` is the coefficient of b_k in b_i b_j,
``comult[i, j, k]`` the coefficient of b_j (x) b_k in Delta(b_i), and column
j of ``antipode`` is S(b_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .groups import FiniteGroup, cyclic
from .linalg import (Q, identity, inverse, kernel_basis, matmul, qmatrix, qparse, rank,
                     solve_linear, zeros)
from .report import Report


class HopfError(ValueError):
    pass


class ModuleError(ValueError):
    pass


def _tensor(n):
    t = np.empty((n, n, n), dtype=object)
    t.fill(Q(0))
    return t


@dataclass(eq=False)
class HopfAlgebraSC:
    labels: tuple[str, ...]
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    name: str = ""
    group: FiniteGroup | None = field(default=None, repr=False)
    kind: str = "raw"  # "group", "dual" or "raw"

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise HopfError("basis labels must be unique")
        shapes = {
            "mult": (self.mult, (n, n, n)), "unit": (self.unit, (n,)),
            "comult": (self.comult, (n, n, n)), "counit": (self.counit, (n,)),
            "antipode": (self.antipode, (n, n)),
        }
        for name, (arr, shape) in shapes.items():
            if np.shape(arr) != shape:
                raise HopfError(f"{name} has shape {np.shape(arr)}, expected {shape}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise HopfError(f"unknown Hopf basis label {label!r}") from None

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.empty(self.dim, dtype=object)
        v.fill(Q(0))
        v[i] = Q(1)
        return v

    def mul(self, x, y) -> np.ndarray:
        n = self.dim
        out = np.empty(n, dtype=object)
        out.fill(Q(0))
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        out += x[i] * y[j] * self.mult[i, j]
        return out

    @cached_property
    def delta_terms(self) -> list[list[tuple]]:
        """delta_terms[i] = [(coef, j, k), ...] with Delta(b_i) = sum coef b_j (x) b_k."""
        n = self.dim
        return [[(self.comult[i, j, k], j, k) for j in range(n) for k in range(n)
                 if self.comult[i, j, k]] for i in range(n)]

    @cached_property
    def delta2_terms(self) -> list[list[tuple]]:
        """(Delta (x) id) Delta(b_i) as [(coef, j, k, l), ...]."""
        out = []
        for i in range(self.dim):
            acc: dict = {}
            for c, a, l in self.delta_terms[i]:
                for c2, j, k in self.delta_terms[a]:
                    acc[(j, k, l)] = acc.get((j, k, l), Q(0)) + c * c2
            out.append([(c, j, k, l) for (j, k, l), c in acc.items() if c])
        return out

    def delta_terms_of(self, x) -> list[tuple]:
        """Delta of an arbitrary element as [(coef, j, k), ...]."""
        acc: dict = {}
        for i, c in enumerate(x):
            if c:
                for v, j, k in self.delta_terms[i]:
                    acc[(j, k)] = acc.get((j, k), Q(0)) + c * v
        return [(c, j, k) for (j, k), c in acc.items() if c]

    @cached_property
    def antipode_inverse(self) -> np.ndarray:
        return inverse(self.antipode)

    @cached_property
    def left_regular(self) -> list[np.ndarray]:
        """Matrices of left multiplication by each basis element."""
        n = self.dim
        mats = []
        for i in range(n):
            m = zeros(n, n)
            for j in range(n):
                m[:, j] = self.mult[i, j]
            mats.append(m)
        return mats

    def element_label(self, v) -> str:
        parts = [f"{c}*{self.labels[i]}" if c != 1 else self.labels[i]
                 for i, c in enumerate(v) if c]
        return " + ".join(parts) or "0"


def group_algebra(G: FiniteGroup) -> HopfAlgebraSC:
    n = G.order
    mult, comult = _tensor(n), _tensor(n)
    anti = zeros(n, n)
    for a in G:
        for b in G:
            mult[a, b, G.mul(a, b)] = Q(1)
        comult[a, a, a] = Q(1)
        anti[G.inv(a), a] = Q(1)
    unit = np.array([Q(1) if g == G.identity else Q(0) for g in G], dtype=object)
    counit = np.array([Q(1)] * n, dtype=object)
    return HopfAlgebraSC(tuple(G.labels), mult, unit, comult, counit, anti,
                         name=f"k[{G.name or 'G'}]", group=G, kind="group")


def dual_group_algebra(G: FiniteGroup) -> HopfAlgebraSC:
    n = G.order
    mult, comult = _tensor(n), _tensor(n)
    anti = zeros(n, n)
    for g in G:
        mult[g, g, g] = Q(1)
        anti[G.inv(g), g] = Q(1)
        for x in G:
            comult[g, x, G.mul(G.inv(x), g)] = Q(1)
    unit = np.array([Q(1)] * n, dtype=object)
    counit = np.array([Q(1) if g == G.identity else Q(0) for g in G], dtype=object)
    labels = tuple(f"p_{lab}" for lab in G.labels)
    return HopfAlgebraSC(labels, mult, unit, comult, counit, anti,
                         name=f"k[{G.name or 'G'}]*", group=G, kind="dual")


def ground_field() -> HopfAlgebraSC:
    H = group_algebra(cyclic(1))
    H.labels = ("1",)
    H.name = "k"
    return H


def from_structure_constants(dim, mult, comult, counit, antipode, unit=None,
                             labels=None, name="") -> HopfAlgebraSC:
    """Build from nested lists: mult[i][j] and comult[i] (an n x n grid) etc."""
    n = int(dim)
    m, c = _tensor(n), _tensor(n)
    for i, j in product(range(n), repeat=2):
        for k in range(n):
            m[i, j, k] = qparse(mult[i][j][k])
            c[i, j, k] = qparse(comult[i][j][k])
    eps = np.array([qparse(x) for x in counit], dtype=object)
    S = zeros(n, n)
    for i, j in product(range(n), repeat=2):
        S[i, j] = qparse(antipode[i][j])
    if unit is None:
        unit = _solve_unit(m)
    else:
        unit = np.array([qparse(x) for x in unit], dtype=object)
    labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(n))
    return HopfAlgebraSC(labels, m, unit, c, eps, S, name=name or f"H{n}")


def _solve_unit(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    rows, rhs = [], []
    for b, k in product(range(n), repeat=2):
        rows.append([m[i, b, k] for i in range(n)])
        rhs.append(Q(1) if b == k else Q(0))
        rows.append([m[b, i, k] for i in range(n)])
        rhs.append(Q(1) if b == k else Q(0))
    u = solve_linear(qmatrix(rows), np.array(rhs, dtype=object))
    if u is None:
        raise HopfError("multiplication has no unit")
    return u


def verify_hopf_axioms(H: HopfAlgebraSC) -> Report:
    """Check the Hopf algebra axioms; failures carry a witness basis element."""
    rep = Report(f"Hopf axioms for {H.name}")
    n, lab = H.dim, H.labels
    m, c, eps, u, S = H.mult, H.comult, H.counit, H.unit, H.antipode

    def first(it):
        return next((w for w in it), None)

    def mul_vec(x, y):
        return H.mul(x, y)

    e = [H.basis_vector(i) for i in range(n)]
    bad = first((i, j, k) for i, j, k in product(range(n), repeat=3)
                if any(mul_vec(mul_vec(e[i], e[j]), e[k]) != mul_vec(e[i], mul_vec(e[j], e[k]))))
    rep.check("associativity", bad is None, bad and f"({lab[bad[0]]},{lab[bad[1]]},{lab[bad[2]]})")

    bad = first(i for i in range(n) if any(mul_vec(u, e[i]) != e[i]) or any(mul_vec(e[i], u) != e[i]))
    rep.check("unit", bad is None, bad is not None and lab[bad])

    def delta(x):
        out = np.empty((n, n), dtype=object)
        out.fill(Q(0))
        for i in range(n):
            if x[i]:
                out += x[i] * c[i]
        return out

    def coassoc_fail(i):
        left = np.empty((n, n, n), dtype=object)
        left.fill(Q(0))
        right = left.copy()
        for a, b in product(range(n), repeat=2):
            if c[i, a, b]:
                left[:, :, b] += c[i, a, b] * c[a]
                right[a, :, :] += c[i, a, b] * c[b]
        return not np.array_equal(left, right)

    bad = first(i for i in range(n) if coassoc_fail(i))
    rep.check("coassociativity", bad is None, bad is not None and lab[bad])

    def counit_fail(i):
        left = sum((eps[a] * c[i, a, :] for a in range(n)), np.array([Q(0)] * n, dtype=object))
        right = sum((eps[b] * c[i, :, b] for b in range(n)), np.array([Q(0)] * n, dtype=object))
        return any(left != e[i]) or any(right != e[i])

    bad = first(i for i in range(n) if counit_fail(i))
    rep.check("counit", bad is None, bad is not None and lab[bad])

    def delta_mult_fail(i, j):
        lhs = delta(mul_vec(e[i], e[j]))
        di, dj = c[i], c[j]
        rhs = np.empty((n, n), dtype=object)
        rhs.fill(Q(0))
        for a, b in product(range(n), repeat=2):
            if not di[a, b]:
                continue
            for a2, b2 in product(range(n), repeat=2):
                if dj[a2, b2]:
                    rhs += di[a, b] * dj[a2, b2] * np.multiply.outer(m[a, a2], m[b, b2])
        return not np.array_equal(lhs, rhs)

    bad = first((i, j) for i, j in product(range(n), repeat=2) if delta_mult_fail(i, j))
    ok_unit = np.array_equal(delta(u), np.multiply.outer(u, u))
    rep.check("comultiplication is an algebra map", bad is None and ok_unit,
              f"({lab[bad[0]]},{lab[bad[1]]})" if bad else "Delta(1) != 1 (x) 1")

    bad = first((i, j) for i, j in product(range(n), repeat=2)
                if sum(eps[k] * m[i, j, k] for k in range(n)) != eps[i] * eps[j])
    ok_unit = sum(eps[k] * u[k] for k in range(n)) == 1
    rep.check("counit is an algebra map", bad is None and ok_unit,
              f"({lab[bad[0]]},{lab[bad[1]]})" if bad else "eps(1) != 1")

    def antipode_fail(i):
        left = np.array([Q(0)] * n, dtype=object)
        right = left.copy()
        for a, b in product(range(n), repeat=2):
            if c[i, a, b]:
                left = left + c[i, a, b] * mul_vec(S[:, a], e[b])
                right = right + c[i, a, b] * mul_vec(e[a], S[:, b])
        target = eps[i] * u
        return any(left != target) or any(right != target)

    bad = first(i for i in range(n) if antipode_fail(i))
    rep.check("antipode law", bad is None, bad is not None and lab[bad])
    rep.check("antipode invertible", rank(S) == n, "singular antipode matrix")
    return rep


@dataclass
class IntegralCertificate:
    element: np.ndarray
    normalized: bool
    semisimple: bool

    def __iter__(self):
        return iter((self.element, self.normalized, self.semisimple))


class InconsistentHopfError(HopfError):
    pass


def left_integral(H: HopfAlgebraSC) -> IntegralCertificate:
    """Solve h*L = eps(h)*L; semisimple iff eps(L) != 0 (characteristic zero)."""
    n = H.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([H.mult[i, j, k] - (H.counit[i] if j == k else 0) for j in range(n)])
    sols = kernel_basis(qmatrix(rows))
    if not sols:
        raise InconsistentHopfError("no nonzero left integral; structure constants inconsistent")
    for v in sols:
        e = sum(H.counit[k] * v[k] for k in range(n))
        if e:
            return IntegralCertificate(np.array([x / e for x in v], dtype=object), True, True)
    return IntegralCertificate(sols[0], False, False)


def check_module(H: HopfAlgebraSC, action) -> str | None:
    """Return a description of the first module-axiom failure, or None."""
    n = H.dim
    if len(action) != n:
        return f"expected {n} action matrices, got {len(action)}"
    dim = np.shape(action[0])[0]
    for i, j in product(range(n), repeat=2):
        lhs = matmul(action[i], action[j])
        rhs = zeros(dim, dim)
        for k in range(n):
            if H.mult[i, j, k]:
                rhs = rhs + H.mult[i, j, k] * action[k]
        if not np.array_equal(lhs, rhs):
            return f"rho({H.labels[i]})rho({H.labels[j]}) != rho({H.labels[i]}{H.labels[j]})"
    unit = zeros(dim, dim)
    for k in range(n):
        if H.unit[k]:
            unit = unit + H.unit[k] * action[k]
    if not np.array_equal(unit, identity(dim)):
        return "unit does not act as the identity"
    return None


def act_element(H: HopfAlgebraSC, action, x) -> np.ndarray:
    dim = np.shape(action[0])[0]
    out = zeros(dim, dim)
    for k in range(H.dim):
        if x[k]:
            out = out + x[k] * action[k]
    return out


@dataclass
class Invariants:
    basis: list
    projector: np.ndarray
    agrees: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def invariants(H: HopfAlgebraSC, action) -> Invariants:
    """X^H two ways: the eigen-system h x = eps(h) x and the image of x -> L x."""
    action = [np.asarray(a, dtype=object) for a in action]
    err = check_module(H, action)
    if err:
        raise ModuleError(err)
    dim = action[0].shape[0]
    if dim == 0:
        return Invariants([], zeros(0, 0), True)
    blocks = [action[i] - H.counit[i] * identity(dim) for i in range(H.dim)]
    basis = kernel_basis(np.concatenate(blocks, axis=0))
    integral = left_integral(H)
    proj = act_element(H, action, integral.element)
    agrees = integral.semisimple
    if agrees:
        img_rank = rank(proj)
        joint = rank(np.concatenate([proj, np.array(basis, dtype=object).T], axis=1)) \
            if basis else img_rank
        agrees = img_rank == len(basis) == joint
    return Invariants(basis, proj, agrees)
