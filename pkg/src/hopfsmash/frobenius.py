"""Graded Frobenius forms and the bounded Calabi-Yau test for Koszul algebras.

A graded symmetric form on a finite-dimensional graded algebra E with top
degree n is a functional tau on E^n such that tau(xy) = (-1)^{|x||y|} tau(yx)
and every pairing E^i x E^{n-i} -> k, (x, y) |-> tau(xy), is nondegenerate.
The admissible tau form a linear space T; nondegeneracy is a polynomial
condition on T, decided symbolically when T is small.
"""

from __future__ import annotations

import random
from itertools import product
from dataclasses import dataclass, field

from sympy import QQ, symbols
from sympy.polys.matrices import DomainMatrix

from .ext import ExtAlgebraSC, yoneda_ext_algebra
from .fdalgebra import AlgebraError, FDAlgebra
from .linalg import Q, kernel_basis, qmatrix, rank
from .quiver import Presentation
from .report import Report
from .resolution import d_koszul_check, koszul_degree, minimal_resolution

SYMBOLIC_LIMIT = 4


@dataclass
class SymmetricFormCertificate:
    algebra: FDAlgebra
    top: int | None
    verdict: bool | None
    reason: str
    tau: dict | None = None  # basis index of E^top -> coefficient
    space_dim: int = 0
    method: str = ""
    determinants: dict = field(default_factory=dict)

    def report(self) -> Report:
        rep = Report(f"graded symmetric form on {self.algebra.name or 'E'}")
        rep.details.update(top=self.top, space_dim=self.space_dim, method=self.method,
                           reason=self.reason)
        if self.tau is not None:
            rep.details["tau"] = {self.algebra.labels[k]: v for k, v in self.tau.items()}
        if self.determinants:
            rep.details["determinants"] = self.determinants
        if self.verdict is None:
            rep.inconclusive(self.reason)
        else:
            rep.check("graded symmetric nondegenerate form exists", self.verdict, self.reason)
        return rep


def _pairing(A: FDAlgebra, i: int, n: int, tau_cols: list[dict], top: list[int]):
    """Entries tau_k(x y) for x in A^i, y in A^{n-i}, one matrix per tau_k."""
    pos = {b: r for r, b in enumerate(top)}
    left, right = A.basis_in_degree(i), A.basis_in_degree(n - i)
    mats = []
    for tau in tau_cols:
        m = [[sum((c * tau.get(pos[k], 0) for k, c in A.mul_basis(x, y).items() if k in pos), Q(0))
              for y in right] for x in left]
        mats.append(m)
    return mats


def _combine(mats, t) -> list[list]:
    rows = len(mats[0])
    cols = len(mats[0][0]) if rows else 0
    return [[sum((c * m[r][s] for c, m in zip(t, mats)), Q(0)) for s in range(cols)]
            for r in range(rows)]


def _nondegenerate(M) -> bool:
    if not M:
        return True
    return rank(qmatrix(M)) == len(M) == len(M[0])


def _symmetry_failure(A: FDAlgebra, n: int, tau: dict, top: list[int]):
    """tau is indexed by position in ``top``."""
    pos = {b: r for r, b in enumerate(top)}

    def ev(vec):
        return sum((c * tau.get(pos[k], 0) for k, c in vec.items() if k in pos), Q(0))

    for i in range(n + 1):
        for x in A.basis_in_degree(i):
            for y in A.basis_in_degree(n - i):
                sign = -1 if (i * (n - i)) % 2 else 1
                if ev(A.mul_basis(x, y)) != sign * ev(A.mul_basis(y, x)):
                    return (x, y)
    return None


def graded_symmetric_check(A: FDAlgebra | ExtAlgebraSC, seed: int = 0,
                           lines: int = 5) -> SymmetricFormCertificate:
    if isinstance(A, ExtAlgebraSC):
        A = A.to_fd()
    if not A.unit or A.unit_failure() is not None:
        raise AlgebraError("graded symmetric check needs a unital algebra")
    degs = [d for d in A.degrees if A.basis_in_degree(d)]
    n = max(degs)
    if min(degs) < 0:
        raise AlgebraError("degrees must be non-negative")
    for i in range(n + 1):
        a, b = len(A.basis_in_degree(i)), len(A.basis_in_degree(n - i))
        if a != b:
            return SymmetricFormCertificate(A, n, False, f"dim E^{i} = {a} but dim E^{n - i} = {b}",
                                            method="dimensions")
    top = A.basis_in_degree(n)
    pos = {b: r for r, b in enumerate(top)}
    constraints = []
    for i in range(n + 1):
        sign = -1 if (i * (n - i)) % 2 else 1
        for x in A.basis_in_degree(i):
            for y in A.basis_in_degree(n - i):
                row = [Q(0)] * len(top)
                for k, c in A.mul_basis(x, y).items():
                    row[pos[k]] += c
                for k, c in A.mul_basis(y, x).items():
                    row[pos[k]] -= sign * c
                if any(row):
                    constraints.append(row)
    if constraints:
        T = kernel_basis(qmatrix(constraints))
    else:
        T = [[Q(int(r == c)) for r in range(len(top))] for c in range(len(top))]
    T = [{r: Q(v) for r, v in enumerate(col) if v} for col in T]
    if not T:
        return SymmetricFormCertificate(A, n, False, "only tau = 0 is graded symmetric",
                                        method="symmetry constraints")
    pairings = {i: _pairing(A, i, n, T, top) for i in range(n + 1)}

    def try_point(t):
        if all(_nondegenerate(_combine(pairings[i], t)) for i in range(n + 1)):
            tau = {}
            for c, col in zip(t, T):
                for r, v in col.items():
                    tau[r] = tau.get(r, 0) + c * v
            tau = {r: v for r, v in tau.items() if v}
            if _symmetry_failure(A, n, tau, top) is None:
                return {top[r]: v for r, v in tau.items()}
        return None

    dets, polys = {}, []
    if len(T) <= SYMBOLIC_LIMIT:
        ts = symbols(f"t1:{len(T) + 1}")
        dom = QQ[ts]
        gens = dom.gens
        for i in range(n + 1):
            mats = pairings[i]
            size = len(mats[0])
            if not size:
                continue
            M = DomainMatrix([[sum((dom.convert(QQ(m[r][s].numerator, m[r][s].denominator)) * g
                                    for g, m in zip(gens, mats)), dom.zero)
                               for s in range(size)] for r in range(size)], (size, size), dom)
            det = M.det()
            dets[i] = str(dom.to_sympy(det))
            polys.append(det)
            if det == dom.zero:
                return SymmetricFormCertificate(
                    A, n, False, f"pairing E^{i} x E^{n - i} is degenerate for every admissible tau",
                    space_dim=len(T), method="symbolic", determinants=dets)
    rng = random.Random(seed)
    candidates = [[Q(int(j == k)) for j in range(len(T))] for k in range(len(T))]
    candidates.append([Q(1)] * len(T))
    # points on random lines; the determinant has degree at most dim E^i
    deg = max(len(A.basis_in_degree(i)) for i in range(n + 1))
    for _ in range(lines):
        base = [Q(rng.randint(-5, 5)) for _ in T]
        direction = [Q(rng.randint(-5, 5)) for _ in T]
        for s in range(deg + 1):
            candidates.append([b + s * d for b, d in zip(base, direction)])
    for t in candidates:
        tau = try_point(t)
        if tau is not None:
            return SymmetricFormCertificate(A, n, True, "explicit tau verified exactly", tau=tau,
                                            space_dim=len(T),
                                            method="symbolic" if len(T) <= SYMBOLIC_LIMIT
                                            else "sampled", determinants=dets)
    if len(T) <= SYMBOLIC_LIMIT:
        # the product of the determinants is a nonzero polynomial of degree m,
        # so it is nonzero somewhere on the grid {0..m}^k
        F = dom.one
        for f in polys:
            F *= f
        for t in product(range(F.total_degree() + 1), repeat=len(T)):
            if F(*t) != 0:
                tau = try_point([Q(x) for x in t])
                if tau is not None:
                    return SymmetricFormCertificate(A, n, True, "explicit tau verified exactly",
                                                    tau=tau, space_dim=len(T), method="symbolic",
                                                    determinants=dets)
        raise AssertionError("nonzero determinant polynomial vanishes on a full grid")
    return SymmetricFormCertificate(A, n, None, "no nondegenerate tau found by sampling",
                                    space_dim=len(T), method="sampled")


def cy_check(P: Presentation, d: int = 2, N: int = 4, D: int = 6, seed: int = 0) -> Report:
    """Bounded Calabi-Yau test through the Ext algebra of a d-Koszul algebra.

    The verdict holds up to the bounds N (homological) and D (internal).
    """
    rep = Report(f"Calabi-Yau check for {P.name or 'R'}", bounds={"N": N, "D": D, "d": d})
    res = minimal_resolution(P, N=N, D=D)
    kos = d_koszul_check(res, d)
    rep.details["betti"] = kos.details.get("betti")
    if not rep.check(f"{d}-Koszul within bounds", kos.passed, kos.first_failure or ""):
        return rep
    p = res.length
    if p is None:
        rep.inconclusive(f"resolution does not terminate within N={N}, D={D}")
        return rep
    need = koszul_degree(p + 1, d)
    if N < p + 1 or D < need:
        rep.inconclusive(f"termination at {p} needs N >= {p + 1} and D >= {need}")
        return rep
    E = yoneda_ext_algebra(res, p)
    cert = graded_symmetric_check(E, seed=seed)
    rep.details["ext_dims"] = E.dims
    rep.details["symmetric"] = cert.report().to_dict()
    if cert.verdict is None:
        rep.inconclusive(cert.reason)
    elif rep.check("Ext algebra is graded symmetric", cert.verdict, cert.reason):
        rep.details["dimension"] = p
        rep.details["verdict"] = f"Calabi-Yau of dimension {p}"
    return rep
