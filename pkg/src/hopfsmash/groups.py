"""Finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group; elements are the indices ``0..order-1``.

    ``table[a][b]`` is the index of the product ``a*b``.  The group law is
    checked on construction.
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    name: str = ""
    identity: int = field(init=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0 or any(len(r) != n for r in table):
            raise GroupError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in table for x in r):
            raise GroupError("table entries out of range")
        ident = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
        if not ident:
            raise GroupError("no identity element")
        object.__setattr__(self, "identity", ident[0])
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"not associative at ({a}, {b}, {c})")
        for a in range(n):
            if ident[0] not in table[a]:
                raise GroupError(f"element {a} has no inverse")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        elif len(self.labels) != n or len(set(self.labels)) != n:
            raise GroupError("labels must be unique, one per element")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def prod(self, elems) -> int:
        out = self.identity
        for g in elems:
            out = self.table[out][g]
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"unknown group element {label!r}") from None

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self for b in self)


def cyclic(n: int) -> FiniteGroup:
    """Z/n with generator labelled ``g``; element k is ``g^k``."""
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    labels = tuple("e" if k == 0 else ("g" if k == 1 else f"g^{k}") for k in range(n))
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(table, labels, name=f"Z/{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in g for b in h]
    idx = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(idx[(g.mul(a1, a2), h.mul(b1, b2))] for (a2, b2) in pairs) for (a1, b1) in pairs
    )
    labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a, b in pairs)
    return FiniteGroup(table, labels, name=f"{g.name}x{h.name}")


def from_table(table, labels=None) -> FiniteGroup:
    return FiniteGroup(tuple(map(tuple, table)), tuple(labels or ()))
