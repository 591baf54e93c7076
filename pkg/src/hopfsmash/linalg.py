"""Exact linear algebra over the rationals.

Matrices are numpy arrays with ``dtype=object`` holding ``fractions.Fraction``
entries.  Elimination runs on sparse dict rows internally, which keeps the
(mostly 0/1) matrices arising from path algebras cheap to reduce.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

Q = Fraction

__all__ = [
    "Q", "qparse", "qformat", "qmatrix", "qvector", "zeros", "identity",
    "rref", "rank", "kernel_basis", "solve_linear", "inverse", "matmul",
    "Echelon", "span_equal", "is_zero",
]


def qparse(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def qformat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zeros(rows: int, cols: int) -> np.ndarray:
    m = np.empty((rows, cols), dtype=object)
    m.fill(Q(0))
    return m


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = Q(1)
    return m


def qmatrix(rows, cols: int | None = None) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, cols or 0)
    m = zeros(len(rows), len(rows[0]))
    for i, r in enumerate(rows):
        if len(r) != m.shape[1]:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            m[i, j] = qparse(v)
    return m


def qvector(entries) -> np.ndarray:
    v = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        v[i] = qparse(x)
    return v


def is_zero(m) -> bool:
    return all(x == 0 for x in np.asarray(m).flat)


def _sparse_rows(m: np.ndarray) -> list[dict]:
    m = np.asarray(m, dtype=object)
    out = []
    for row in m:
        out.append({j: Q(v) for j, v in enumerate(row) if v != 0})
    return out


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of Q^n.

    Rows are sparse dicts normalised to leading coefficient 1; the leading
    column is the smallest index (leftmost nonzero).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        r = {c: v for c, v in vec.items() if v}
        done: dict = {}
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                done[c] = r.pop(c)
                continue
            f = r[c]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return done

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = {c: v for c, v in vec.items() if v}
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                inv = 1 / r[c]
                self.pivots[c] = {k: v * inv for k, v in r.items()}
                return True
            f = r[c]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return False

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> list[tuple[int, dict]]:
        """Return (pivot column, row) pairs of the reduced row echelon form."""
        piv = {c: dict(r) for c, r in self.pivots.items()}
        cols = sorted(piv)
        for c in reversed(cols):
            pc = piv[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r = piv[c2]
                f = r.get(c)
                if f:
                    for k, v in pc.items():
                        nv = r.get(k, 0) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
        return [(c, piv[c]) for c in cols]


def _echelon_of(m: np.ndarray) -> Echelon:
    m = np.asarray(m, dtype=object)
    ech = Echelon(m.shape[1])
    for row in _sparse_rows(m):
        ech.add(row)
    return ech


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    ech = _echelon_of(m)
    out = zeros(rows, cols)
    pivots = []
    for i, (c, r) in enumerate(ech.reduced_rows()):
        pivots.append(c)
        for k, v in r.items():
            out[i, k] = v
    return out, pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return _echelon_of(m).rank


def kernel_basis(m) -> list[np.ndarray]:
    """Basis of the right null space, one vector per non-pivot column."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    reduced = _echelon_of(m).reduced_rows() if m.shape[0] else []
    pivcols = {c for c, _ in reduced}
    basis = []
    for f in range(cols):
        if f in pivcols:
            continue
        v = np.empty(cols, dtype=object)
        v.fill(Q(0))
        v[f] = Q(1)
        for c, r in reduced:
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def sparse_kernel(rows: list[dict], ncols: int) -> list[dict]:
    """Null space of a matrix given by sparse rows, as sparse vectors."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    reduced = ech.reduced_rows()
    pivcols = {c for c, _ in reduced}
    free = [f for f in range(ncols) if f not in pivcols]
    fidx = {f: i for i, f in enumerate(free)}
    basis = [{f: Q(1)} for f in free]
    for c, r in reduced:
        for k, x in r.items():
            if k != c:
                basis[fidx[k]][c] = -x
    return basis


def solve_linear(m, b) -> np.ndarray | None:
    """Some x with m @ x == b, or None when b is outside the column space."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    rows, cols = m.shape
    if b.shape != (rows,):
        raise ValueError(f"right-hand side has length {b.shape}, expected {rows}")
    aug = np.concatenate([m, b.reshape(rows, 1)], axis=1)
    ech = _echelon_of(aug)
    if cols in ech.pivots:
        return None
    x = np.empty(cols, dtype=object)
    x.fill(Q(0))
    for c, r in ech.reduced_rows():
        x[c] = r.get(cols, Q(0))
    return x


def inverse(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, piv = rref(np.concatenate([m, identity(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


def _integerize(m: np.ndarray) -> tuple[np.ndarray, int, int]:
    den = 1
    for x in m.flat:
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = lcm(den, d)
    ints = np.empty(m.shape, dtype=object)
    big = 0
    for idx, x in np.ndenumerate(m):
        v = int(x * den)
        ints[idx] = v
        big = max(big, abs(v))
    return ints, den, big


def matmul(a, b) -> np.ndarray:
    """Exact product; integer fast path over common denominators."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.ndim == 1:
        return matmul(a, b.reshape(-1, 1))[:, 0]
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    ai, da, ma = _integerize(a)
    bi, db, mb = _integerize(b)
    inner = a.shape[-1]
    if ma * mb * max(inner, 1) < 2**62:
        prod = ai.astype(np.int64) @ bi.astype(np.int64)
    else:
        prod = ai @ bi
    den = da * db
    out = np.empty(prod.shape, dtype=object)
    for idx, v in np.ndenumerate(prod):
        out[idx] = Q(int(v), den)
    return out


def span_equal(vecs_a, vecs_b, ncols: int) -> bool:
    """True when two families of sparse vectors span the same subspace."""
    ea, eb, ec = Echelon(ncols), Echelon(ncols), Echelon(ncols)
    for v in vecs_a:
        ea.add(v)
        ec.add(v)
    for v in vecs_b:
        eb.add(v)
        ec.add(v)
    return ea.rank == eb.rank == ec.rank


class TrackedEchelon:
    """Echelon basis that remembers how each row was combined from inputs.

    ``express(v)`` returns ``(remainder, combo)`` with
    ``v = sum(combo[tag] * input[tag]) + remainder``; the remainder is empty
    exactly when v lies in the span of the inputs.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[dict, dict]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: dict, stop_at_free: bool):
        r = {c: v for c, v in vec.items() if v}
        combo: dict = {}
        done: dict = {}
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                if stop_at_free:
                    return r, combo, c
                done[c] = r.pop(c)
                continue
            f = r[c]
            row, rcombo = p
            for k, v in row.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            for t, v in rcombo.items():
                nv = combo.get(t, 0) + f * v
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)
        return done, combo, None

    def add(self, vec: dict, tag) -> bool:
        r, combo, lead = self._reduce(vec, True)
        if lead is None:
            return False
        inv = 1 / r[lead]
        row = {k: v * inv for k, v in r.items()}
        rcombo = {t: -v * inv for t, v in combo.items()}
        rcombo[tag] = rcombo.get(tag, 0) + inv
        self.pivots[lead] = (row, {t: v for t, v in rcombo.items() if v})
        return True

    def express(self, vec: dict) -> tuple[dict, dict]:
        done, combo, _ = self._reduce(vec, False)
        return done, combo
