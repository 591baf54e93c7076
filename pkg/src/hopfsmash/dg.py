"""Finite-dimensional dg algebras, their cohomology algebras and dg smash products.

The differential has degree +1 and satisfies d(ab) = d(a)b + (-1)^{|a|} a d(b).
Column i of ``diff`` is d(b_i).  Cohomology classes are represented through a
section: cocycles completing the coboundaries, taken in rref pivot order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .actions import ActionError, HAction, smash_fd, verify_module_algebra
from .fdalgebra import AlgebraError, FDAlgebra, from_dense, sadd
from .hopf import HopfAlgebraSC
from .linalg import Q, TrackedEchelon, kernel_basis, qmatrix, rank, zeros
from .report import Report


class DGError(ValueError):
    pass


@dataclass(eq=False)
class DGAlgebraSC(FDAlgebra):
    diff: np.ndarray = None

    def __post_init__(self):
        super().__post_init__()
        if self.diff is None:
            self.diff = zeros(self.dim, self.dim)
        self.diff = np.asarray(self.diff, dtype=object)
        if self.diff.shape != (self.dim, self.dim):
            raise DGError(f"differential has shape {self.diff.shape}, expected {(self.dim, self.dim)}")

    def d(self, x: dict) -> dict:
        out: dict = {}
        for i, c in x.items():
            for k in range(self.dim):
                v = self.diff[k, i]
                if v:
                    sadd(out, {k: v}, c)
        return out


def dg_algebra(labels, degrees, mult, diff, unit=None, name="") -> DGAlgebraSC:
    """From dense data: ``mult[i][j]`` is the vector of b_i b_j, ``diff[k][i]`` the
    coefficient of b_k in d(b_i)."""
    A = from_dense(labels, degrees, mult, unit=unit, name=name)
    return DGAlgebraSC(A.labels, A.hdeg, A.ideg, A.table, A.unit, name,
                       diff=qmatrix(diff) if len(labels) else zeros(0, 0))


def from_fd(A: FDAlgebra, diff=None) -> DGAlgebraSC:
    return DGAlgebraSC(A.labels, A.hdeg, A.ideg, A.table, A.unit, A.name, A.generators, diff=diff)


def verify_dg(A: DGAlgebraSC) -> Report:
    rep = Report(f"dg algebra {A.name or 'A'}")
    bad = next(((i, j) for (i, j), p in A.table.items()
                if any(A.hdeg[k] != A.hdeg[i] + A.hdeg[j] for k in p)), None)
    rep.check("multiplication is graded", bad is None, bad and f"{A.labels[bad[0]]}*{A.labels[bad[1]]}")
    fail = A.associativity_failure()
    rep.check("associative", fail is None, fail and "(%s %s) %s" % tuple(A.labels[i] for i in fail))
    u = A.unit_failure() if A.unit else None
    rep.check("unit", bool(A.unit) and u is None,
              "no unit" if not A.unit else (A.labels[u] if u is not None else ""))
    bad = next((i for i in range(A.dim) for k in range(A.dim)
                if A.diff[k, i] and A.hdeg[k] != A.hdeg[i] + 1), None)
    rep.check("d has degree +1", bad is None, bad is not None and A.labels[bad])
    d2 = A.diff.dot(A.diff)
    bad = next((i for i in range(A.dim) if any(d2[:, i])), None)
    rep.check("d^2 = 0", bad is None, bad is not None and f"d^2({A.labels[bad]}) = "
              f"{A.element_label({k: v for k, v in enumerate(d2[:, bad]) if v})}")
    for i, j in product(range(A.dim), repeat=2):
        a, b = {i: Q(1)}, {j: Q(1)}
        lhs = A.d(A.mul(a, b))
        rhs = sadd(A.mul(A.d(a), b), A.mul(a, A.d(b)), -1 if A.hdeg[i] % 2 else 1)
        if lhs != rhs:
            rep.check("Leibniz rule", False, f"a={A.labels[i]}, b={A.labels[j]}")
            break
    else:
        rep.check("Leibniz rule", True)
    return rep


@dataclass(eq=False)
class CohomologyAlgebra:
    algebra: DGAlgebraSC
    reps: list  # (degree, cocycle) per class
    products: dict = field(default_factory=dict)  # (i, j) -> {k: c}
    _solvers: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.reps)

    @property
    def dims(self) -> list[int]:
        degs = self.algebra.degrees
        if not degs:
            return []
        return [sum(1 for d, _ in self.reps if d == n) for n in range(min(degs), max(degs) + 1)]

    def classes_in_degree(self, n: int) -> list[int]:
        return [i for i, (d, _) in enumerate(self.reps) if d == n]

    def project(self, z: dict, n: int) -> dict:
        """Class of a cocycle of degree n, in the basis of classes."""
        rem, combo = self._solvers[n].express(z)
        if rem:
            raise DGError("not a cocycle")
        return {t[1]: c for t, c in combo.items() if t[0] == "r" and c}

    def to_fd(self) -> FDAlgebra:
        labels = tuple(f"[{self.algebra.element_label(z)}]" for _, z in self.reps)
        unit = self.project(self.algebra.unit, 0) if self.reps else {}
        return FDAlgebra(labels, tuple(d for d, _ in self.reps), (0,) * self.dim,
                         dict(self.products), unit, name=f"H({self.algebra.name or 'A'})")


def _cohomology_basis(A: DGAlgebraSC, n: int, order=None):
    """Coboundaries, cocycles and a section for degree n; ``order`` permutes
    the cocycle basis to produce an alternative section."""
    idx = A.basis_in_degree(n)
    prev = A.basis_in_degree(n - 1)
    bounds = [A.d({i: Q(1)}) for i in prev]
    if idx:
        dn = np.array([[A.diff[k, i] for i in idx] for k in range(A.dim)], dtype=object)
        ker = kernel_basis(dn) if dn.size else []
    else:
        ker = []
    cocycles = [{idx[r]: Q(v) for r, v in enumerate(vec) if v} for vec in ker]
    if order is not None:
        cocycles = order(cocycles)
    solver = TrackedEchelon()
    for k, b in enumerate(bounds):
        solver.add(b, ("b", k))
    reps = []
    for z in cocycles:
        if solver.add(z, ("r", len(reps))):
            reps.append(z)
    return reps, solver


def cohomology_algebra(A: DGAlgebraSC, alternate_seed: int | None = 0) -> CohomologyAlgebra:
    """H(A) with products through chosen representatives; cross-checked against
    a second section (reversed cocycle order plus random coboundaries)."""
    rep = verify_dg(A)
    if not rep:
        raise DGError(f"not a dg algebra: {rep.first_failure}")
    degs = A.degrees
    H = CohomologyAlgebra(A, [])
    start = {}
    for n in degs:
        reps, solver = _cohomology_basis(A, n)
        start[n] = len(H.reps)
        H._solvers[n] = _shift_tags(solver, start[n])
        H.reps.extend((n, z) for z in reps)
    for i, j in product(range(H.dim), repeat=2):
        (di, zi), (dj, zj) = H.reps[i], H.reps[j]
        prod = A.mul(zi, zj)
        if prod:
            p = H.project(prod, di + dj)
            if p:
                H.products[(i, j)] = p
    if alternate_seed is not None:
        _cross_check(A, H, alternate_seed)
    return H


def _shift_tags(solver: TrackedEchelon, offset: int) -> TrackedEchelon:
    out = TrackedEchelon()
    for c, (row, combo) in solver.pivots.items():
        out.pivots[c] = (row, {(t[0], t[1] + offset) if t[0] == "r" else t: v
                               for t, v in combo.items()})
    return out


def _cross_check(A: DGAlgebraSC, H: CohomologyAlgebra, seed: int):
    rng = random.Random(seed)
    alt = []
    for i, (n, z) in enumerate(H.reps):
        w = dict(z)
        for b in A.basis_in_degree(n - 1):
            c = rng.randint(-2, 2)
            if c:
                sadd(w, A.d({b: Q(1)}), c)
        alt.append(w)
    for i, j in product(range(H.dim), repeat=2):
        (di, _), (dj, _) = H.reps[i], H.reps[j]
        prod = A.mul(alt[i], alt[j])
        p = H.project(prod, di + dj) if prod else {}
        if p != H.products.get((i, j), {}):
            raise DGError(f"cohomology product depends on representatives at {(i, j)}")
    # an independently chosen complement: cocycles taken in reverse order
    for n in A.degrees:
        reps, _ = _cohomology_basis(A, n, order=lambda zs: list(reversed(zs)))
        if len(reps) != len(H.classes_in_degree(n)):
            raise DGError(f"sections disagree on dim H^{n}")
        for z in reps:
            H.project(z, n)


def euler_characteristic_check(A: DGAlgebraSC, H: CohomologyAlgebra | None = None) -> bool:
    H = H or cohomology_algebra(A)
    chi_a = sum((-1) ** (A.hdeg[i] % 2) for i in range(A.dim))
    chi_h = sum((-1) ** (d % 2) for d, _ in H.reps)
    return chi_a == chi_h


def tensor_dg(A: DGAlgebraSC, B: DGAlgebraSC) -> DGAlgebraSC:
    """A (x) B with (a(x)b)(a'(x)b') = (-1)^{|b||a'|} aa'(x)bb' and the Koszul
    differential d(a(x)b) = da(x)b + (-1)^{|a|} a(x)db."""
    nb = B.dim
    labels = tuple(f"{a}(x){b}" for a in A.labels for b in B.labels)
    hdeg = tuple(A.hdeg[i] + B.hdeg[j] for i in range(A.dim) for j in range(nb))
    table = {}
    for (i, i2), pa in A.table.items():
        for (j, j2), pb in B.table.items():
            sign = -1 if (B.hdeg[j] * A.hdeg[i2]) % 2 else 1
            table[(i * nb + j, i2 * nb + j2)] = {k * nb + l: sign * u * v
                                                 for k, u in pa.items() for l, v in pb.items()}
    unit = {k * nb + l: u * v for k, u in A.unit.items() for l, v in B.unit.items()}
    n = A.dim * nb
    diff = zeros(n, n)
    for i in range(A.dim):
        for j in range(nb):
            col = i * nb + j
            for k in range(A.dim):
                if A.diff[k, i]:
                    diff[k * nb + j, col] += A.diff[k, i]
            sign = -1 if A.hdeg[i] % 2 else 1
            for l in range(nb):
                if B.diff[l, j]:
                    diff[i * nb + l, col] += sign * B.diff[l, j]
    return DGAlgebraSC(labels, hdeg, (0,) * n, table, unit, f"{A.name}(x){B.name}", diff=diff)


def dg_smash(A: DGAlgebraSC, H: HopfAlgebraSC, act: HAction) -> DGAlgebraSC:
    """A#H with delta = d (x) id; basis index i * dim H + h."""
    rep = verify_module_algebra(A, H, act, differential=A.diff)
    if not rep:
        raise ActionError(f"action/differential incompatibility: {rep.first_failure}")
    B = smash_fd(A, H, act)
    n = H.dim
    diff = zeros(B.dim, B.dim)
    for i in range(A.dim):
        for k in range(A.dim):
            if A.diff[k, i]:
                for h in range(n):
                    diff[k * n + h, i * n + h] = A.diff[k, i]
    return DGAlgebraSC(B.labels, B.hdeg, B.ideg, B.table, B.unit, B.name, diff=diff)


def induced_action(HA: CohomologyAlgebra, H: HopfAlgebraSC, act: HAction) -> HAction:
    """h [z] = [h z] on H(A)."""
    mats = []
    for h in range(H.dim):
        m = zeros(HA.dim, HA.dim)
        for i, (n, z) in enumerate(HA.reps):
            hz = act.apply(h, z)
            for k, v in (HA.project(hz, n) if hz else {}).items():
                m[k, i] = v
        mats.append(m)
    return HAction(H, HA.to_fd(), full_mats=mats)


def dg_smash_cohomology_check(A: DGAlgebraSC, H: HopfAlgebraSC, act: HAction) -> Report:
    """Compare H(A#H) with H(A)#H through [a]#h |-> [a#h]."""
    rep = Report(f"H({A.name or 'A'}#{H.name}) vs H({A.name or 'A'})#{H.name}")
    B = dg_smash(A, H, act)
    rep.check("A#H is a dg algebra", verify_dg(B).passed)
    HA = cohomology_algebra(A)
    HB = cohomology_algebra(B)
    hact = induced_action(HA, H, act)
    HAfd = hact.target
    S = smash_fd(HAfd, H, hact)
    n = H.dim
    rep.details["dims H(A)"] = HA.dims
    rep.details["dims H(A#H)"] = HB.dims
    rep.details["dims H(A)#H"] = [x * n for x in HA.dims]
    rep.check("dim H^n(A#H) = dim H^n(A) dim H", HB.dims == [x * n for x in HA.dims],
              f"{HB.dims} vs {HA.dims} x {n}")
    phi = zeros(HB.dim, S.dim)
    for i, (deg, z) in enumerate(HA.reps):
        for h in range(n):
            lifted = {k * n + h: v for k, v in z.items()}
            for k, v in HB.project(lifted, deg).items():
                phi[k, i * n + h] = v
    r = rank(phi) if phi.size else 0
    rep.check("[a]#h -> [a#h] is bijective", r == S.dim == HB.dim, f"rank {r}")
    for x, y in product(range(S.dim), repeat=2):
        lhs = {k: v for k, v in enumerate(phi.dot(_col(S.mul({x: Q(1)}, {y: Q(1)}), S.dim))) if v}
        rhs = _hmul(HB, _vec(phi[:, x]), _vec(phi[:, y]))
        if lhs != rhs:
            rep.check("the identification is multiplicative", False, f"{S.labels[x]}, {S.labels[y]}")
            break
    else:
        rep.check("the identification is multiplicative", True)
    return rep


def _col(vec: dict, n: int) -> np.ndarray:
    out = np.array([Q(0)] * n, dtype=object)
    for k, v in vec.items():
        out[k] = v
    return out


def _vec(col) -> dict:
    return {k: v for k, v in enumerate(col) if v}


def _hmul(H: CohomologyAlgebra, x: dict, y: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            p = H.products.get((i, j))
            if p:
                sadd(out, p, a * b)
    return out


def z2_sign_action(A: FDAlgebra, H: HopfAlgebraSC, negated) -> HAction:
    """The generator of Z/2 acts by -1 on the listed basis elements, +1 elsewhere."""
    if H.dim != 2 or H.kind != "group":
        raise ActionError("the sign action needs the group algebra of Z/2")
    g = next(i for i in range(2) if not H.unit[i])
    neg = {A.labels.index(x) if isinstance(x, str) else int(x) for x in negated}
    mats = [zeros(A.dim, A.dim), zeros(A.dim, A.dim)]
    for i in range(A.dim):
        mats[1 - g][i, i] = Q(1)
        mats[g][i, i] = Q(-1) if i in neg else Q(1)
    return HAction(H, A, full_mats=mats)
