"""Modules over smash products A#H and the maps built from them.

Modules are finite-dimensional and given by matrices: one for each basis
element of A and one for each basis element of H, acting on column vectors.
Every basis vector carries a cohomological degree (``hdeg``, used for Koszul
signs) and an internal degree (``ideg``).  Hom spaces are spanned by
bihomogeneous maps, stored as (dim N) x (dim M) matrices.

The H-action on Hom_A(M, N) is (h -> f)(m) = h2 f(S^{-1}(h1) m), and
Hom_A(M, N)^H = Hom_{A#H}(M, N).  For an A#H-module P the map

    theta: Hom_A(P, P) # H -> Hom_{A#H}(P (x) H, P (x) H),
    theta(f # h)(p (x) g) = g2 f(S^{-1}(g1) p) (x) g3 h

is an algebra isomorphism, both sides multiplied with f*g = (-1)^{|f||g|} g o f.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .actions import HAction
from .fdalgebra import FDAlgebra
from .hopf import HopfAlgebraSC, check_module, invariants
from .linalg import Q, identity, matmul, rank, sparse_kernel, span_equal, zeros
from .report import Report
from .resolution import MinimalResolution, _happly_target


class ModuleRepError(ValueError):
    pass


def _lin(mats, coeffs, n) -> np.ndarray:
    out = zeros(n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + c * m
    return out


@dataclass(eq=False)
class ModuleRep:
    algebra: FDAlgebra
    hopf: HopfAlgebraSC
    action: HAction  # H on the algebra, full matrices
    amats: list
    hmats: list
    hdeg: tuple
    ideg: tuple
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.hdeg)

    def hmat(self, x) -> np.ndarray:
        """Matrix of an arbitrary element of H (coefficient vector)."""
        return _lin(self.hmats, x, self.dim)

    @cached_property
    def sparse_h(self) -> list:
        return [_sparse(m) for m in self.hmats]

    @cached_property
    def sparse_sinv(self) -> list:
        """S^{-1}(b_i) acting on the module, as sparse matrices."""
        Sinv = self.hopf.antipode_inverse
        return [_sparse(self.hmat(Sinv[:, i])) for i in range(self.hopf.dim)]

    def smash_matrix(self, a: int, h: int) -> np.ndarray:
        return matmul(self.amats[a], self.hmats[h])

    def verify(self) -> Report:
        A, H, n = self.algebra, self.hopf, self.dim
        rep = Report(f"A#H-module {self.name or 'M'}")
        for a in range(A.dim):
            m = self.amats[a]
            bad = [(j, i) for j, i in zip(*np.nonzero(m != 0))
                   if (self.hdeg[j] - self.hdeg[i], self.ideg[j] - self.ideg[i]) != (A.hdeg[a], A.ideg[a])]
            if not rep.check(f"{A.labels[a]} acts homogeneously", not bad, f"entry {bad[:1]}"):
                return rep
        for h in range(H.dim):
            m = self.hmats[h]
            bad = [(j, i) for j, i in zip(*np.nonzero(m != 0))
                   if (self.hdeg[j], self.ideg[j]) != (self.hdeg[i], self.ideg[i])]
            if not rep.check(f"{H.labels[h]} preserves degrees", not bad, f"entry {bad[:1]}"):
                return rep
        unit = _lin(self.amats, [A.unit.get(i, 0) for i in range(A.dim)], n)
        rep.check("unit of A acts as identity", np.array_equal(unit, identity(n)))
        for a, b in product(range(A.dim), repeat=2):
            lhs = matmul(self.amats[a], self.amats[b])
            rhs = _lin(self.amats, [A.mul_basis(a, b).get(k, 0) for k in range(A.dim)], n)
            if not rep.check("A-module axiom", np.array_equal(lhs, rhs), f"{A.labels[a]}, {A.labels[b]}"):
                return rep
        err = check_module(H, self.hmats) if n else None
        rep.check("H-module axioms", err is None, err or "")
        # h (a m) = (h1 . a)(h2 m)
        amat = self.action.full_mats
        for h, a in product(range(H.dim), range(A.dim)):
            lhs = matmul(self.hmats[h], self.amats[a])
            rhs = zeros(n, n)
            for c, h1, h2 in H.delta_terms[h]:
                ha = amat[h1][:, a]
                rhs = rhs + c * matmul(_lin(self.amats, ha, n), self.hmats[h2])
            if not rep.check("smash compatibility", np.array_equal(lhs, rhs),
                             f"h={H.labels[h]}, a={A.labels[a]}"):
                return rep
        return rep


def regular_module(A: FDAlgebra, H: HopfAlgebraSC, act: HAction) -> ModuleRep:
    amats = [A.left_matrix({i: Q(1)}) for i in range(A.dim)]
    return ModuleRep(A, H, act, amats, list(act.full_mats), A.hdeg, A.ideg, name=A.name or "A")


def trivial_module_rep(A: FDAlgebra, H: HopfAlgebraSC, act: HAction) -> ModuleRep:
    """A / A_{>0}: the degree-zero part of A with the positive part acting by zero."""
    idx = [i for i in range(A.dim) if A.ideg[i] == 0 and A.hdeg[i] == 0]
    pos = {i: r for r, i in enumerate(idx)}
    n = len(idx)
    amats = []
    for a in range(A.dim):
        m = zeros(n, n)
        if a in pos:
            for r, i in enumerate(idx):
                for k, v in A.mul_basis(a, i).items():
                    if k in pos:
                        m[pos[k], r] = v
        amats.append(m)
    hmats = []
    for h in range(H.dim):
        full = act.full_mats[h]
        hmats.append(np.array([[full[i, j] for j in idx] for i in idx], dtype=object).reshape(n, n))
    return ModuleRep(A, H, act, amats, hmats, (0,) * n, (0,) * n, name="R0")


def resolution_piece(res: MinimalResolution, n: int, A: FDAlgebra, tmax: int) -> ModuleRep:
    """P^{-n} of an equivariant resolution, truncated to internal degrees <= tmax.

    ``A`` must be a truncation (``truncated_algebra``) of the same presentation
    deep enough that its missing part acts by zero on the truncated module.
    """
    if not res.equivariant:
        raise ModuleRepError("an equivariant resolution is needed for the H-action")
    F = res.free[n]
    if not F.gens:
        raise ModuleRepError(f"P^{-n} is zero")
    smin = min(s for _, s in F.gens)
    if len(A.offsets) - 1 < tmax - smin:
        raise ModuleRepError(f"algebra truncated at {len(A.offsets) - 1} < {tmax - smin}")
    alg = res.presentation.algebra
    blocks = {t: F.dim(t) for t in range(smin, tmax + 1)}
    start, off = {}, 0
    for t in range(smin, tmax + 1):
        start[t] = off
        off += blocks[t]
    dim = off
    ideg = tuple(t for t in range(smin, tmax + 1) for _ in range(blocks[t]))
    amats = [zeros(dim, dim) for _ in range(A.dim)]
    for d, o in enumerate(A.offsets):
        for m, p in enumerate(alg.piece(d).basis):
            mat = amats[o + m]
            for t in range(smin, tmax + 1 - d):
                for i in range(blocks[t]):
                    for k, v in F.lmul_path(p, {i: Q(1)}, t).items():
                        mat[start[t + d] + k, start[t] + i] = v
    hmats = []
    for h in range(res.hopf.dim):
        mat = zeros(dim, dim)
        for t in range(smin, tmax + 1):
            for i in range(blocks[t]):
                for k, v in _happly_target(res, n + 1, h, {i: Q(1)}, t).items():
                    mat[start[t] + k, start[t] + i] = v
        hmats.append(mat)
    act = res.action.truncate(A)
    return ModuleRep(A, res.hopf, act, amats, hmats, (-n,) * dim, ideg, name=f"P^-{n}<={tmax}")


def module_tensor(M: ModuleRep, W: list, name: str = "") -> ModuleRep:
    """M (x) W for an H-module W (matrices, degree zero); basis index m * dim W + w.

    (a#h)(m (x) w) = (a#h1) m (x) h2 w.
    """
    H = M.hopf
    err = check_module(H, W)
    if err:
        raise ModuleRepError(f"W is not an H-module: {err}")
    dw = np.shape(W[0])[0]
    Iw = identity(dw)
    amats = [np.kron(a, Iw) for a in M.amats]
    hmats = []
    for h in range(H.dim):
        m = zeros(M.dim * dw, M.dim * dw)
        for c, h1, h2 in H.delta_terms[h]:
            m = m + c * np.kron(M.hmats[h1], W[h2])
        hmats.append(m)
    hdeg = tuple(M.hdeg[i] for i in range(M.dim) for _ in range(dw))
    ideg = tuple(M.ideg[i] for i in range(M.dim) for _ in range(dw))
    return ModuleRep(M.algebra, H, M.action, amats, hmats, hdeg, ideg,
                     name=name or f"{M.name}(x)W")


def module_tensor_H(M: ModuleRep) -> ModuleRep:
    return module_tensor(M, M.hopf.left_regular, name=f"{M.name}(x)H")


@dataclass(eq=False)
class HomSpace:
    source: ModuleRep
    target: ModuleRep
    basis: list  # matrices
    degrees: list  # (hdeg shift, ideg shift)
    pivots: list  # (row, col) of the free entry of each basis matrix
    h_linear: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def sparse_basis(self) -> list:
        return [_sparse(b) for b in self.basis]

    def coordinates(self, f, check: bool = True) -> list:
        """Coordinates of a map given densely or as a sparse {(row, col): value} dict."""
        if not isinstance(f, dict):
            f = _sparse(np.asarray(f, dtype=object))
        coords = [f.get(rc, Q(0)) for rc in self.pivots]
        if check:
            back: dict = {}
            for c, b in zip(coords, self.sparse_basis):
                if c:
                    for key, v in b.items():
                        back[key] = back.get(key, 0) + c * v
            if {k: v for k, v in back.items() if v} != {k: v for k, v in f.items() if v}:
                raise ModuleRepError("map is not in the Hom space")
        return coords

    def combine(self, coords) -> np.ndarray:
        out = zeros(self.target.dim, self.source.dim)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + c * b
        return out


def _sparse_entries(m) -> list:
    return [(int(j), int(i), m[j, i]) for j, i in zip(*np.nonzero(m != 0))]


def hom_space(M: ModuleRep, N: ModuleRep, h_linear: bool = False) -> HomSpace:
    """Bihomogeneous A-linear (and optionally H-linear) maps M -> N.

    A-linearity reads f(a m) = (-1)^{|f||a|} a f(m); solved block by block.
    """
    A, H = M.algebra, M.hopf
    shifts = sorted({(N.hdeg[j] - M.hdeg[i], N.ideg[j] - M.ideg[i])
                     for j in range(N.dim) for i in range(M.dim)})
    aM = [_sparse_entries(m) for m in M.amats]
    aN = [_sparse_entries(m) for m in N.amats]
    hM = [_sparse_entries(m) for m in M.hmats] if h_linear else []
    hN = [_sparse_entries(m) for m in N.hmats] if h_linear else []
    basis, degrees, pivots = [], [], []
    for dh, di in shifts:
        cells = [(j, i) for j in range(N.dim) for i in range(M.dim)
                 if (N.hdeg[j] - M.hdeg[i], N.ideg[j] - M.ideg[i]) == (dh, di)]
        var = {c: k for k, c in enumerate(cells)}
        rows = []

        def constrain(left, right, sign):
            # (f R - sign * L f)[j, i] = 0, with R on M and L on N
            eq: dict = {}
            for k, i, v in right:  # f[j, k] R[k, i]
                for j in range(N.dim):
                    x = var.get((j, k))
                    if x is not None:
                        eq.setdefault((j, i), {})
                        eq[(j, i)][x] = eq[(j, i)].get(x, 0) + v
            for j, k, v in left:  # L[j, k] f[k, i]
                for i in range(M.dim):
                    x = var.get((k, i))
                    if x is not None:
                        eq.setdefault((j, i), {})
                        eq[(j, i)][x] = eq[(j, i)].get(x, 0) - sign * v
            for r in eq.values():
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)

        for a in range(A.dim):
            constrain(aN[a], aM[a], -1 if (dh * A.hdeg[a]) % 2 else 1)
        for h in range(len(hM)):
            constrain(hN[h], hM[h], 1)
        for vec in sparse_kernel(rows, len(cells)):
            m = zeros(N.dim, M.dim)
            for k, v in vec.items():
                m[cells[k]] = v
            basis.append(m)
            degrees.append((dh, di))
            # the kernel vector has a 1 at its free column, which is its last
            # entry, and vanishes at every other free column
            pivots.append(cells[max(vec)])
    return HomSpace(M, N, basis, degrees, pivots, h_linear)


def _sinv_mats(M: ModuleRep) -> list:
    Sinv = M.hopf.antipode_inverse
    return [M.hmat(Sinv[:, i]) for i in range(M.hopf.dim)]


@dataclass(eq=False)
class HomAction:
    space: HomSpace
    hopf: HopfAlgebraSC
    mats: list  # per H basis, on Hom coordinates

    def apply_map(self, h, f) -> np.ndarray:
        M, N = self.space.source, self.space.target
        out = zeros(N.dim, M.dim)
        for key, v in _hom_act(M, N, h, f).items():
            out[key] = v
        return out

    def verify(self) -> Report:
        sp, H = self.space, self.hopf
        rep = Report(f"H-action on Hom({sp.source.name}, {sp.target.name})")
        rep.details["dim_hom"] = sp.dim
        if not sp.dim:
            rep.details["dim_invariants"] = 0
            rep.details["dim_hom_AH"] = hom_space(sp.source, sp.target, h_linear=True).dim
            rep.check("invariants equal Hom_{A#H}", rep.details["dim_hom_AH"] == 0)
            return rep
        err = check_module(H, self.mats)
        rep.check("H-module axioms on Hom", err is None, err or "")
        inv = invariants(H, self.mats)
        hom_ah = hom_space(sp.source, sp.target, h_linear=True)
        coords = [{k: v for k, v in enumerate(sp.coordinates(f)) if v} for f in hom_ah.basis]
        vecs = [{k: v for k, v in enumerate(b) if v} for b in inv.basis]
        rep.details["dim_invariants"] = len(inv.basis)
        rep.details["dim_hom_AH"] = hom_ah.dim
        rep.check("dim Hom_A(M,N)^H = dim Hom_{A#H}(M,N)", len(inv.basis) == hom_ah.dim,
                  f"{len(inv.basis)} vs {hom_ah.dim}")
        rep.check("invariants equal Hom_{A#H}(M,N) as subspaces", span_equal(vecs, coords, sp.dim))
        return rep


def _hom_act(M: ModuleRep, N: ModuleRep, h, f) -> dict:
    """(h -> f) = sum h2 f S^{-1}(h1) as a sparse matrix; h is a basis index or
    a coefficient vector, f dense or sparse."""
    H = M.hopf
    terms = H.delta_terms[h] if isinstance(h, (int, np.integer)) else H.delta_terms_of(h)
    if not isinstance(f, dict):
        f = _sparse(np.asarray(f, dtype=object))
    out: dict = {}
    for c, h1, h2 in terms:
        for key, v in _sparse_compose(N.sparse_h[h2], _sparse_compose(f, M.sparse_sinv[h1])).items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def hom_action(M: ModuleRep, N: ModuleRep, space: HomSpace | None = None) -> HomAction:
    space = space or hom_space(M, N)
    H = M.hopf
    mats = []
    for h in range(H.dim):
        m = zeros(space.dim, space.dim)
        for k, f in enumerate(space.sparse_basis):
            m[:, k] = space.coordinates(_hom_act(M, N, h, f))
        mats.append(m)
    return HomAction(space, H, mats)


def grading_action_on_hom(space: HomSpace, G) -> list:
    """kG* on Hom via gradings: p_g . f = sum_u p_{ug} f p_u.

    Requires H = kG* acting on source and target by the G-grading projections.
    """
    M, N = space.source, space.target
    mats = []
    for g in G:
        m = zeros(space.dim, space.dim)
        for k, f in enumerate(space.sparse_basis):
            out: dict = {}
            for u in G:
                for key, v in _sparse_compose(N.sparse_h[G.mul(u, g)],
                                              _sparse_compose(f, M.sparse_h[u])).items():
                    out[key] = out.get(key, 0) + v
            m[:, k] = space.coordinates(out)
        mats.append(m)
    return mats


@dataclass(eq=False)
class AdjointPhi:
    source_action: list  # H on Hom(W, Hom_A(M, N)), coordinates (w, k) -> w * dim Hom + k
    target: HomAction  # H on Hom_A(M (x) W, N)
    matrix: np.ndarray  # target coordinates x source coordinates
    report: Report


def adjoint_phi(W: list, M: ModuleRep, N: ModuleRep, W_hdeg=None) -> AdjointPhi:
    """phi: Hom(W, Hom_A(M, N)) -> Hom_A(M (x) W, N), phi(F)(m (x) w) = (-1)^{|m||w|} F(w)(m)."""
    H = M.hopf
    dw = np.shape(W[0])[0]
    wdeg = W_hdeg or (0,) * dw
    inner = hom_action(M, N)
    sp1 = inner.space
    MW = module_tensor(M, W)
    outer = hom_action(MW, N)
    sp2 = outer.space
    n1 = dw * sp1.dim
    Sinv = H.antipode_inverse
    src = []
    for h in range(H.dim):
        m = zeros(n1, n1)
        for c, h1, h2 in H.delta_terms[h]:
            # (h -> F)(w) = h2 -> F(S^{-1}(h1) w)
            Wm = _lin(W, Sinv[:, h1], dw)
            for w0 in range(dw):
                for k0 in range(sp1.dim):
                    col = w0 * sp1.dim + k0
                    for w in range(dw):
                        x = Wm[w0, w]
                        if x:
                            for r in range(sp1.dim):
                                y = inner.mats[h2][r, k0]
                                if y:
                                    m[w * sp1.dim + r, col] += c * x * y
        src.append(m)
    phi = zeros(sp2.dim, n1)
    for w0 in range(dw):
        for k0, f in enumerate(sp1.basis):
            g = zeros(N.dim, MW.dim)
            for mi in range(M.dim):
                sign = -1 if (M.hdeg[mi] * wdeg[w0]) % 2 else 1
                g[:, mi * dw + w0] = sign * f[:, mi]
            phi[:, w0 * sp1.dim + k0] = sp2.coordinates(g)
    rep = Report("adjoint phi is an H-module isomorphism")
    rep.details.update(dim_source=n1, dim_target=sp2.dim)
    r = rank(phi) if phi.size else 0
    rep.details["rank"] = r
    rep.check("phi bijective", r == n1 == sp2.dim, f"rank {r}, dims {n1} -> {sp2.dim}")
    checks = 0
    for h in range(H.dim):
        lhs = matmul(phi, src[h])
        rhs = matmul(outer.mats[h], phi)
        for col in range(n1):
            checks += 1
            if not np.array_equal(lhs[:, col], rhs[:, col]):
                rep.check("phi(h -> F) = h -> phi(F)", False, f"h={H.labels[h]}, basis F #{col}")
                break
    rep.check("phi(h -> F) = h -> phi(F) on all basis pairs", not rep.failures)
    rep.details["equivariance_checks"] = checks
    return AdjointPhi(src, outer, phi, rep)


def _sparse(m) -> dict:
    return {(int(r), int(c)): m[r, c] for r, c in zip(*np.nonzero(m != 0))}


def _sparse_compose(G: dict, F: dict) -> dict:
    """G o F for sparse matrices keyed by (row, col)."""
    rows: dict = {}
    for (k, c), v in F.items():
        rows.setdefault(k, []).append((c, v))
    out: dict = {}
    for (r, k), g in G.items():
        for c, v in rows.get(k, ()):
            key = (r, c)
            nv = out.get(key, 0) + g * v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


@dataclass(eq=False)
class Theta:
    module: ModuleRep
    hom: HomAction  # H on Hom_A(P, P)
    tensor: ModuleRep  # P (x) H
    target: HomSpace  # Hom_{A#H}(P (x) H, P (x) H)
    images: list  # theta(f_k # b_l) as sparse matrices, index k * dim H + l
    matrix: np.ndarray
    report: Report = field(default_factory=lambda: Report("theta"))

    def __post_init__(self):
        self._comp: dict = {}

    def source_degree(self, x: int) -> int:
        return self.hom.space.degrees[x // self.module.hopf.dim][0]

    def _compose(self, k1: int, k: int) -> list:
        """Coordinates of f_k o f_{k1} in Hom_A(P, P)."""
        if (k1, k) not in self._comp:
            sp = self.hom.space
            self._comp[(k1, k)] = sp.coordinates(matmul(sp.basis[k], sp.basis[k1]))
        return self._comp[(k1, k)]

    def source_product(self, x: int, y: int) -> dict:
        """(f'#h')(f#h) = f' * (h'1 -> f) # h'2 h, with f*g = (-1)^{|f||g|} g o f."""
        H = self.module.hopf
        sp = self.hom.space
        n = H.dim
        k1, l1 = divmod(x, n)
        k2, l2 = divmod(y, n)
        sign = -1 if (sp.degrees[k1][0] * sp.degrees[k2][0]) % 2 else 1
        out: dict = {}
        for c, h1, h2 in H.delta_terms[l1]:
            coords: dict = {}
            for k, a in enumerate(self.hom.mats[h1][:, k2]):
                if a:
                    for j, b in enumerate(self._compose(k1, k)):
                        if b:
                            coords[j] = coords.get(j, 0) + a * b
            hh = H.mult[h2, l2]
            for k, a in coords.items():
                if a:
                    for l, b in enumerate(hh):
                        if b:
                            key = k * n + l
                            out[key] = out.get(key, 0) + sign * c * a * b
        return {k: v for k, v in out.items() if v}

    def image(self, vec: dict) -> dict:
        out: dict = {}
        for k, v in vec.items():
            for key, x in self.images[k].items():
                nv = out.get(key, 0) + v * x
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def dense_image(self, vec: dict) -> np.ndarray:
        d = self.tensor.dim
        out = zeros(d, d)
        for key, v in self.image(vec).items():
            out[key] = v
        return out


def _target_product(F: dict, G: dict, dF: int, dG: int) -> dict:
    prod = _sparse_compose(G, F)
    if (dF * dG) % 2:
        prod = {k: -v for k, v in prod.items()}
    return prod


def theta(P: ModuleRep, random_pairs: int = 100, seed: int = 0) -> Theta:
    H = P.hopf
    n = H.dim
    hom = hom_action(P, P)
    sp = hom.space
    PH = module_tensor_H(P)
    target = hom_space(PH, PH, h_linear=True)
    Sinv = H.antipode_inverse
    Sinv_mats = [P.hmat(Sinv[:, i]) for i in range(n)]
    images = []
    for f in sp.basis:
        Xs = {}
        for g in range(n):
            for c, i, j, k in H.delta2_terms[g]:
                if (i, j) not in Xs:
                    Xs[(i, j)] = _sparse(matmul(matmul(P.hmats[j], f), Sinv_mats[i]))
        # theta(f # b_l)(p (x) b_g) = sum c rho(b_j) f rho(S^{-1} b_i) p (x) b_k b_l
        for l in range(n):
            m: dict = {}
            for g in range(n):
                for c, i, j, k in H.delta2_terms[g]:
                    kl = [(r, y) for r, y in enumerate(H.mult[k, l]) if y]
                    for (q, p), x in Xs[(i, j)].items():
                        for r, y in kl:
                            key = (q * n + r, p * n + g)
                            m[key] = m.get(key, 0) + c * x * y
            images.append({key: v for key, v in m.items() if v})
    rep = Report(f"theta for {P.name or 'P'}", bounds={"random_pairs": random_pairs, "seed": seed})
    nsrc = len(images)
    mat = zeros(target.dim, nsrc)
    inside = True
    for x, m in enumerate(images):
        dense = zeros(PH.dim, PH.dim)
        for key, v in m.items():
            dense[key] = v
        try:
            mat[:, x] = target.coordinates(dense)
        except ModuleRepError:
            inside = False
            rep.check("theta lands in Hom_{A#H}", False, f"source basis #{x}")
            break
    th = Theta(P, hom, PH, target, images, mat, rep)
    if not inside:
        return th
    r = rank(mat) if mat.size else 0
    rep.details.update(dim_source=nsrc, dim_target=target.dim, rank=r)
    rep.check("theta bijective", r == nsrc == target.dim, f"rank {r}, dims {nsrc} -> {target.dim}")
    ident = {}
    one = {i: c for i, c in enumerate(H.unit) if c}
    for k, a in enumerate(sp.coordinates(identity(P.dim))):
        for l, b in one.items():
            if a:
                ident[k * n + l] = a * b
    rep.check("theta(id # 1) = id", th.image(ident) == {(i, i): 1 for i in range(PH.dim)})
    products = {}
    for x, y in product(range(nsrc), repeat=2):
        prod = th.source_product(x, y)
        products[(x, y)] = prod
        lhs = th.image(prod)
        rhs = _target_product(images[x], images[y], th.source_degree(x), th.source_degree(y))
        if lhs != rhs:
            rep.check("theta is multiplicative on basis pairs", False, f"pair {(x, y)}")
            break
    else:
        rep.check("theta is multiplicative on basis pairs", True)
    rep.details["basis_pairs"] = len(products)
    rng = random.Random(seed)
    by_degree: dict = {}
    for x in range(nsrc):
        by_degree.setdefault(th.source_degree(x), []).append(x)
    degs = sorted(by_degree)
    done = 0
    for t in range(random_pairs if rep.passed else 0):
        d1, d2 = rng.choice(degs), rng.choice(degs)
        u = {x: Q(rng.randint(-3, 3)) for x in by_degree[d1]}
        v = {y: Q(rng.randint(-3, 3)) for y in by_degree[d2]}
        prod: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                if a and b:
                    for k, c in products[(x, y)].items():
                        prod[k] = prod.get(k, 0) + a * b * c
        lhs = th.image({k: c for k, c in prod.items() if c})
        rhs = _target_product(th.image(u), th.image(v), d1, d2)
        if lhs != rhs:
            rep.check("theta multiplicative on random pairs", False, f"pair {t}")
            break
        done += 1
    else:
        if rep.passed:
            rep.check(f"theta multiplicative on {done} random pairs", True)
    rep.details["random_pairs"] = done
    return th
