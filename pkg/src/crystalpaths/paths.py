"""Tensor products of rectangular tableaux and restriction tests.

A path is an ordered tensor of tableaux; the rightmost list element is the
rightmost tensor factor, which is the factor the signature rule inspects
first.  Restriction against a dominant affine weight is decided by folding a
formal highest weight vector as an extra rightmost factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from . import tableaux
from .signature import fold_stats, lowering_index, raising_index
from .tableaux import RectShape, Tableau
from .weights import LevelWeight, equal_mod_ones, vadd


@dataclass(frozen=True)
class Path:
    """Tensor product element b_L (x) ... (x) b_1, stored leftmost first."""

    n: int
    factors: tuple[Tableau, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for t in self.factors:
            if t.n != self.n:
                raise ValueError("factor rank %d does not match path rank %d" % (t.n, self.n))

    def __len__(self):
        return len(self.factors)

    @property
    def shapes(self) -> tuple[RectShape, ...]:
        return tuple(t.shape for t in self.factors)

    def weight(self) -> tuple[int, ...]:
        """Total content vector."""
        w = (0,) * self.n
        for t in self.factors:
            w = vadd(w, t.content())
        return w

    def _stats(self, i: int) -> list[tuple[int, int]]:
        return [(tableaux.eps(t, i), tableaux.phi(t, i)) for t in self.factors]

    def eps(self, i: int) -> int:
        return fold_stats(self._stats(i))[0]

    def phi(self, i: int) -> int:
        return fold_stats(self._stats(i))[1]

    def e(self, i: int) -> Optional["Path"]:
        pos = raising_index(self._stats(i))
        if pos is None:
            return None
        moved = tableaux.e(self.factors[pos], i)
        assert moved is not None, "signature rule pointed at an exhausted factor"
        return self._with_factor(pos, moved)

    def f(self, i: int) -> Optional["Path"]:
        pos = lowering_index(self._stats(i))
        if pos is None:
            return None
        moved = tableaux.f(self.factors[pos], i)
        assert moved is not None, "signature rule pointed at an exhausted factor"
        return self._with_factor(pos, moved)

    def reflect(self, i: int) -> "Path":
        gap = self.phi(i) - self.eps(i)
        out: Optional[Path] = self
        for _ in range(gap):
            out = out.f(i)
        for _ in range(-gap):
            out = out.e(i)
        assert out is not None
        return out

    def _with_factor(self, pos: int, t: Tableau) -> "Path":
        factors = list(self.factors)
        factors[pos] = t
        return Path(self.n, tuple(factors))

    def __str__(self):
        return format_path(self)


@dataclass(frozen=True)
class FormalHighestVector:
    """Highest weight vector of a dominant affine weight, carried formally.

    Only its statistics matter: eps_i = 0 and phi_i is the coroot pairing.
    It is enough to decide restriction of a path tensored against it; the
    ambient infinite crystal is never materialized.
    """

    weight: LevelWeight

    def __post_init__(self):
        if not self.weight.is_dominant():
            raise ValueError("formal highest vector needs a dominant weight")

    def eps(self, i: int) -> int:
        return 0

    def phi(self, i: int) -> int:
        return self.weight.pairing(i)


def format_path(p: Path) -> str:
    return "|".join(tableaux.format_tableau(t) for t in p.factors)


def parse_path(text: str, n: int) -> Path:
    text = text.strip()
    if not text:
        return Path(n, ())
    return Path(n, tuple(tableaux.parse_tableau(part, n) for part in text.split("|")))


def enumerate_paths(n: int, shapes: Sequence[RectShape]) -> Iterator[Path]:
    """All paths with the given factor shapes, leftmost factor varying slowest."""
    pools = [tableaux.enumerate_tableaux(RectShape(*s), n) for s in shapes]
    for combo in itertools.product(*pools):
        yield Path(n, combo)


def is_classically_restricted(p: Path) -> bool:
    """No raising operator with classical index applies."""
    return all(p.eps(i) == 0 for i in range(1, p.n))


def restricted_epsilons(p: Path, lam: LevelWeight) -> tuple[int, ...]:
    """eps_i of p tensored with the formal highest vector of lam, for all i."""
    u = FormalHighestVector(lam)
    out = []
    for i in range(p.n):
        stats = p._stats(i) + [(u.eps(i), u.phi(i))]
        out.append(fold_stats(stats)[0])
    return tuple(out)


def is_level_restricted(p: Path, lam: LevelWeight) -> bool:
    """True when p tensored with the formal highest vector of lam is killed
    by every raising operator."""
    if not lam.is_dominant():
        raise ValueError("restriction weight must be dominant")
    for s in p.shapes:
        if s.cols > lam.level:
            raise ValueError(
                "factor %s has level %d above the restriction level %d"
                % (s, s.cols, lam.level)
            )
    return all(x == 0 for x in restricted_epsilons(p, lam))


def weight_out(p: Path, lam: LevelWeight) -> LevelWeight:
    """Weight of p tensored with the highest vector of lam: lam plus the
    classical weight of p.  The delta coefficient is left at zero; the
    energy grading supplies it separately."""
    return LevelWeight(lam.level, vadd(lam.finite, p.weight()), 0)


def normalize_content(lam: Iterable[int], n: int) -> tuple[int, ...]:
    """Zero-pad a partition or content vector to length n."""
    v = tuple(int(x) for x in lam)
    if len(v) > n:
        if any(v[n:]):
            raise ValueError("weight %s has more than %d nonzero parts" % (v, n))
        return v[:n]
    return v + (0,) * (n - len(v))


def classically_restricted_paths(
    n: int, shapes: Sequence[RectShape], lam: Iterable[int]
) -> Iterator[Path]:
    """Stream the classically restricted paths of the given content."""
    target = normalize_content(lam, n)
    for p in enumerate_paths(n, shapes):
        if p.weight() == target and is_classically_restricted(p):
            yield p


def level_restricted_paths(
    n: int, shapes: Sequence[RectShape], lam: LevelWeight, lam_out: LevelWeight
) -> Iterator[Path]:
    """Stream the paths whose tensor with the highest vector of lam is a
    highest weight vector of weight lam_out."""
    for p in enumerate_paths(n, shapes):
        if not is_level_restricted(p, lam):
            continue
        produced = weight_out(p, lam)
        if produced.level == lam_out.level and equal_mod_ones(produced.finite, lam_out.finite):
            yield p
