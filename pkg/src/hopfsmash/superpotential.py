"""Superpotentials on quivers: cyclic words, cyclic derivatives, Jacobi algebras.

A superpotential is a combination of closed paths up to rotation.  Each cyclic
word is stored as its rotation that is least as a tuple of arrow indices
(declaration order).  The cyclic derivative by an arrow a rotates every
occurrence of a to the front and deletes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import covering_presentation
from .linalg import Q, qparse
from .quiver import Path, PathElement, Presentation, PresentationError, Quiver, hilbert_function
from .report import Report


class SuperpotentialError(ValueError):
    pass


def _check_closed(quiver: Quiver, word: tuple[int, ...]):
    if not word:
        raise SuperpotentialError("cyclic words must be nonempty")
    try:
        p = quiver.path(word)
    except PresentationError as exc:
        raise SuperpotentialError(str(exc)) from None
    if p.source != p.target:
        raise SuperpotentialError(f"{quiver.word(p)} is not a closed path")


def canonical_rotation(word) -> tuple[int, ...]:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class CyclicWord:
    arrows: tuple[int, ...]

    @classmethod
    def make(cls, quiver: Quiver, word) -> "CyclicWord":
        idx = tuple(quiver.arrow_index(a) if isinstance(a, str) else int(a) for a in word)
        _check_closed(quiver, idx)
        return cls(canonical_rotation(idx))

    def rotations(self) -> list[tuple[int, ...]]:
        w = self.arrows
        return [w[i:] + w[:i] for i in range(len(w))]


@dataclass
class Superpotential:
    quiver: Quiver
    terms: dict = field(default_factory=dict)  # CyclicWord -> Fraction

    def __post_init__(self):
        terms: dict = {}
        for w, c in self.terms.items():
            if not isinstance(w, CyclicWord):
                w = CyclicWord.make(self.quiver, w)
            terms[w] = terms.get(w, Q(0)) + qparse(c)
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def from_words(cls, quiver: Quiver, words) -> "Superpotential":
        """``words`` is a list of (coefficient, [arrow labels in written order])."""
        terms: dict = {}
        for c, w in words:
            cw = CyclicWord.make(quiver, w)
            terms[cw] = terms.get(cw, Q(0)) + qparse(c)
        return cls(quiver, terms)

    def __eq__(self, other):
        return isinstance(other, Superpotential) and self.terms == other.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Q(0)) + c
        return Superpotential(self.quiver, terms)

    @property
    def degree(self) -> int:
        degs = {sum(self.quiver.arrows[a].ndeg for a in w.arrows) for w in self.terms}
        if len(degs) != 1:
            raise SuperpotentialError(f"superpotential is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def rotation_sum(self) -> PathElement:
        """Sum over all rotations of every word, with the word's coefficient."""
        out: dict = {}
        for w, c in self.terms.items():
            for r in w.rotations():
                p = self.quiver.path(r)
                out[p] = out.get(p, Q(0)) + c
        return PathElement(self.quiver, out)

    def words(self) -> list[tuple[str, str]]:
        return [(str(c), "*".join(self.quiver.arrows[a].label for a in w.arrows))
                for w, c in sorted(self.terms.items(), key=lambda t: t[0].arrows)]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(w if c == "1" else f"{c}*{w}" for c, w in self.words())


def cyclic_derivative(W: Superpotential, a) -> PathElement:
    Qv = W.quiver
    a = Qv.arrow_index(a) if isinstance(a, str) else int(a)
    out: dict = {}
    for w, c in W.terms.items():
        word = w.arrows
        for i, b in enumerate(word):
            if b != a:
                continue
            rest = word[i + 1:] + word[:i]
            if rest:
                p = Qv.path(rest)
            else:
                arr = Qv.arrows[a]
                p = Path((), arr.target, arr.target, 0)
            out[p] = out.get(p, Q(0)) + c
    return PathElement(Qv, out)


def euler_identity_check(W: Superpotential) -> bool:
    """sum_a a * d_a W equals the rotation sum of W."""
    Qv = W.quiver
    total = PathElement(Qv)
    for a in range(len(Qv.arrows)):
        total = total + PathElement(Qv, {Qv.path([a]): 1}) * cyclic_derivative(W, a)
    return total == W.rotation_sum()


def jacobian_presentation(W: Superpotential, name: str = "") -> Presentation:
    """kQ / (d_a W : a an arrow), dropping vanishing derivatives."""
    Qv = W.quiver
    rels = [r for r in (cyclic_derivative(W, a) for a in range(len(Qv.arrows))) if not r.is_zero()]
    hom = None
    if rels and all(arr.ndeg == 1 for arr in Qv.arrows):
        degs = {d for r in rels for d in r.ndegs()}
        if len(degs) == 1:
            hom = degs.pop()
    return Presentation(Qv, tuple(rels), hom, name or "J(Q,W)")


def lift_superpotential(W: Superpotential):
    """Lift a G-graded superpotential to the covering quiver.

    Every word must have G-degree e so that each lift is closed; the lift sums
    the lifts starting at every sheet with the inherited coefficients.
    Returns (lifted superpotential, covering map).
    """
    Qv = W.quiver
    G = Qv.group
    if G is None:
        raise SuperpotentialError("lifting needs a G-graded quiver")
    for w in W.terms:
        g = Qv.gdeg(Qv.path(w.arrows))
        if g != G.identity:
            raise SuperpotentialError(
                f"no closed lift: {Qv.word(Qv.path(w.arrows))} has G-degree {G.labels[g]}")
    S, cov = covering_presentation(Presentation(Qv, (), None, "kQ"))
    terms: dict = {}
    for w, c in W.terms.items():
        p = Qv.path(w.arrows)
        for h in G:
            cw = CyclicWord.make(S.quiver, cov.lift_path(p, h).arrows)
            terms[cw] = terms.get(cw, Q(0)) + c
    return Superpotential(S.quiver, terms), cov


def _onto(quiver: Quiver, rels) -> list[PathElement]:
    out = []
    for r in rels:
        if r.quiver is not quiver:
            other = r.quiver
            if (other.vertices, other.arrows, other.group) != (quiver.vertices, quiver.arrows,
                                                               quiver.group):
                raise SuperpotentialError("relations live on a different quiver")
            r = PathElement(quiver, r.terms)
        out.append(r)
    return out


def ideal_equality_check(quiver: Quiver, rels_a, rels_b, D: int = 6) -> Report:
    """Compare the two-sided ideals generated by two relation sets up to degree D.

    I_A = I_B in degrees <= D iff dim R_A = dim R_B = dim R_{A u B} there.
    """
    rep = Report("ideal equality", bounds={"D": D})
    rels_a, rels_b = _onto(quiver, rels_a), _onto(quiver, rels_b)
    PA = Presentation(quiver, tuple(rels_a))
    PB = Presentation(quiver, tuple(rels_b))
    PAB = Presentation(quiver, tuple(rels_a) + tuple(rels_b))
    ha, hb, hab = (hilbert_function(P, D) for P in (PA, PB, PAB))
    rep.details.update(dims_A=ha, dims_B=hb, dims_union=hab)
    for d in range(D + 1):
        if not rep.check(f"degree {d}", ha[d] == hb[d] == hab[d],
                         f"dims {ha[d]}, {hb[d]}, union {hab[d]}"):
            break
    return rep
