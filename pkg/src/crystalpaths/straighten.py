"""Straightening of signed q-weighted Schur symbols at a fixed level.

A symbol (sign, q-power, alpha) stands for sign * q^qpow * s_alpha where
alpha is an arbitrary integer vector.  Two rewrite moves preserve the symbol
class while flipping the sign: for 1 <= i <= n-1 the entries (a_i, a_{i+1})
become (a_{i+1} - 1, a_i + 1), and for i = 0 the vector becomes
(l + 1 + a_n, a_2, ..., a_{n-1}, -1 - l + a_1) while the q-power grows by
l + 1 - a_1 + a_n.  On the staircase-shifted vector mu = alpha + rho these
moves are the adjacent swap and the affine swap-and-translate at level
m = l + n, so a symbol normalizes to zero exactly when two entries of mu
collide modulo m, and otherwise to a unique dominant representative whose
sign is a permutation parity and whose q-power is recovered from the
translation part of the normalizing group element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .weights import (
    LevelWeight,
    Vector,
    dot,
    norm2,
    perm_sign,
    rho_vector,
    vadd,
    vsub,
)

NormalForm = tuple[int, int, Vector]  # (sign, q-power, dominant vector)


@dataclass(frozen=True)
class SchurSymbol:
    alpha: Vector
    level: int
    sign: int = 1
    qpow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if len(self.alpha) < 2:
            raise ValueError("rank must be at least 2")
        if self.level < 1:
            raise ValueError("level must be at least 1, got %d" % self.level)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def rank(self) -> int:
        return len(self.alpha)


def straighten_step(sym: SchurSymbol, i: int) -> SchurSymbol:
    """Apply one rewrite move; the result names the same symbol class."""
    n = sym.rank
    a = sym.alpha
    if i == 0:
        new_alpha = (sym.level + 1 + a[-1],) + a[1:-1] + (-1 - sym.level + a[0],)
        return SchurSymbol(
            new_alpha, sym.level, -sym.sign, sym.qpow + sym.level + 1 - a[0] + a[-1]
        )
    if not 1 <= i <= n - 1:
        raise ValueError("move index out of range: %d" % i)
    new_alpha = a[: i - 1] + (a[i] - 1, a[i - 1] + 1) + a[i + 1 :]
    return SchurSymbol(new_alpha, sym.level, -sym.sign, sym.qpow)


def is_normal(sym: SchurSymbol) -> bool:
    """Dominant and within the level window: no move can lower it further."""
    a = sym.alpha
    return all(a[i] >= a[i + 1] for i in range(len(a) - 1)) and a[0] - a[-1] <= sym.level


def normalize(sym: SchurSymbol) -> Optional[NormalForm]:
    """Closed-form normal form: None when the symbol vanishes, else the
    (sign, q-power, dominant alpha) of its unique reduced representative.

    The shifted vector mu = alpha + rho is carried to the unique strictly
    decreasing window representative nu with the same coordinate sum and
    residues modulo m = level + n.  Writing nu as a permutation of mu plus m
    times a sum-zero translation beta, the accumulated sign is the
    permutation parity and the q-power is (permuted mu | beta) + m|beta|^2/2.
    """
    n = sym.rank
    m = sym.level + n
    rho = rho_vector(n)
    mu = vadd(sym.alpha, rho)
    residues = [x % m for x in mu]
    if len(set(residues)) < n:
        return None
    ascending = sorted(residues)
    shift_total = sum(mu) - sum(residues)
    assert shift_total % m == 0
    blocks, extra = divmod(shift_total // m, n)
    bumped = set(ascending[:extra])
    nu = tuple(
        sorted((r + m * blocks + (m if r in bumped else 0) for r in residues), reverse=True)
    )
    assert sum(nu) == sum(mu)
    assert all(nu[i] > nu[i + 1] for i in range(n - 1)) and nu[0] - nu[-1] < m

    by_residue = {x % m: j for j, x in enumerate(mu)}
    perm = [0] * n
    beta = [0] * n
    for i, value in enumerate(nu):
        j = by_residue[value % m]
        perm[j] = i + 1
        beta[i] = (value - mu[j]) // m
    assert sum(beta) == 0
    tau_mu = vsub(nu, tuple(m * b for b in beta))
    qpow = dot(tau_mu, tuple(beta)) + m * norm2(tuple(beta)) // 2
    return (
        sym.sign * perm_sign(tuple(perm)),
        sym.qpow + qpow,
        vsub(nu, rho),
    )


def normalize_by_steps(sym: SchurSymbol, max_steps: int = 100000) -> Optional[NormalForm]:
    """Normalize by literally rewriting: bubble the shifted vector into
    decreasing order and fold it into the level window, detecting a move
    fixed point as annihilation.  Exists to certify :func:`normalize`."""
    n = sym.rank
    m = sym.level + n
    rho = rho_vector(n)
    cur = sym
    for _ in range(max_steps):
        mu = vadd(cur.alpha, rho)
        move = None
        for i in range(1, n):
            if mu[i - 1] == mu[i]:
                return None
            if mu[i - 1] < mu[i]:
                move = i
                break
        if move is None:
            gap = mu[0] - mu[-1]
            if gap == m:
                return None
            if gap > m:
                move = 0
            else:
                return (cur.sign, cur.qpow, cur.alpha)
        cur = straighten_step(cur, move)
    raise RuntimeError("straightening did not terminate; the window logic is wrong")


def pi_on_character(level: int, alpha: Vector) -> Optional[tuple[int, int, LevelWeight]]:
    """Image of one exponential under the level-shifted projection: None when
    it vanishes, else (sign, q-power, dominant affine weight)."""
    nf = normalize(SchurSymbol(tuple(alpha), level))
    if nf is None:
        return None
    sign, qpow, beta = nf
    return sign, qpow, LevelWeight(level, beta, 0)
