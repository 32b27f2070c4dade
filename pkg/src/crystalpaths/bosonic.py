"""Alternating affine Weyl sums for restricted path generating functions.

The level polynomial of a tensor product has a closed alternating form: sum
over coordinate permutations tau and sum-zero translations beta of
(-1)^tau q^(E(b) + (Lambda' + rho | beta) - |beta|^2 (l + n)/2) over the
paths b whose content is congruent, modulo the all-ones vector, to

    -Lambda - rho + tau^{-1}(Lambda' - (l + n) beta + rho).

The beta sum is truncated to a finite box certified a priori: outside it the
content fiber is provably empty because the translation summand spreads the
target weight further than any content vector of the tensor product can
reach.  Degenerate levels give closed evaluations: at level one with column
factors the sum collapses to the single restricted path's monomial, and the
formal level-zero sum vanishes unless the tensor product is empty, which is
witnessed by an explicit sign-reversing pairing of the summands.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import straighten, tableaux
from .energy import get_local_table, phi_matching_element
from .kostka import CrystalSpec, Grading, grade_path, weight_energy_table
from .laurent import LaurentPoly
from .paths import Path, enumerate_paths, is_level_restricted, weight_out
from .signature import raising_index
from .tableaux import RectShape
from .weights import (
    AffineWeylElement,
    LevelWeight,
    dot,
    equal_mod_ones,
    norm2,
    perm_apply,
    perm_inverse,
    perm_sign,
    rho_vector,
    spread,
    vadd,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class AlternatingSumResult:
    polynomial: LaurentPoly
    summand_count: int
    truncation_bound: int


def truncation_bound(
    n: int, ell: int, lam_finite, lam_prime_finite, shapes, widen: int = 0
) -> int:
    """Box radius outside which every content fiber is empty.

    A content vector of the tensor product has coordinate spread at most the
    number of boxes N, so (l+n) * spread(beta) can exceed N plus the spreads
    of the shifted restriction weights only on empty fibers."""
    m = ell + n
    rho = rho_vector(n)
    boxes = sum(s[0] * s[1] for s in shapes)
    reach = boxes + spread(vadd(lam_finite, rho)) + spread(vadd(lam_prime_finite, rho))
    return -(-reach // m) + widen


@functools.lru_cache(maxsize=None)
def lattice_box(n: int, bound: int) -> tuple[tuple[int, ...], ...]:
    """Sum-zero integer vectors with every coordinate in [-bound, bound]."""
    out = []
    for head in itertools.product(range(-bound, bound + 1), repeat=n - 1):
        last = -sum(head)
        if -bound <= last <= bound:
            out.append(head + (last,))
    return tuple(out)


def alternating_sum(
    n: int,
    shapes: Sequence[RectShape],
    ell: int,
    lam: LevelWeight,
    lam_prime: LevelWeight,
    grading: Grading,
    widen: int = 0,
    cache_dir: Optional[str] = None,
    jobs: int = 1,
) -> AlternatingSumResult:
    """Evaluate the alternating Weyl sum with the given energy grading."""
    m = ell + n
    rho = rho_vector(n)
    table = weight_energy_table((n, tuple(shapes)), grading, cache_dir, jobs)
    boxes = sum(s[0] * s[1] for s in shapes)
    bound = truncation_bound(n, ell, lam.finite, lam_prime.finite, shapes, widen)
    lam_rho = vadd(lam.finite, rho)
    lamp_rho = vadd(lam_prime.finite, rho)
    total = LaurentPoly.zero()
    count = 0
    for tau in itertools.permutations(range(1, n + 1)):
        sign = perm_sign(tau)
        tau_inv = perm_inverse(tau)
        for beta in lattice_box(n, bound):
            nu = vsub(lamp_rho, vscale(m, beta))
            mu = vsub(perm_apply(tau_inv, nu), lam_rho)
            shift = boxes - sum(mu)
            if shift % n:
                continue
            content = tuple(x + shift // n for x in mu)
            fiber = table.get(content)
            if fiber is None:
                continue
            exponent = dot(lamp_rho, beta) - m * norm2(beta) // 2
            total = total + LaurentPoly.q_power(exponent, sign) * fiber
            count += fiber(1)
    return AlternatingSumResult(total, count, bound)


def bosonic_K(
    spec: CrystalSpec,
    widen: int = 0,
    cache_dir: Optional[str] = None,
    jobs: int = 1,
) -> LaurentPoly:
    """Alternating-sum value of the level polynomial of the spec."""
    return bosonic_report(spec, widen, cache_dir, jobs).polynomial


def bosonic_report(
    spec: CrystalSpec,
    widen: int = 0,
    cache_dir: Optional[str] = None,
    jobs: int = 1,
) -> AlternatingSumResult:
    spec.validate()
    if spec.lam is None:
        raise ValueError("alternating sum needs a restriction weight Lambda")
    result = alternating_sum(
        spec.n,
        spec.shapes,
        spec.level,
        spec.lam,
        spec.resolved_lam_prime(),
        spec.grading(),
        widen,
        cache_dir,
        jobs,
    )
    if spec.is_vacuum() and spec.lam.same_classical_weight(spec.resolved_lam_prime()):
        explicit = vacuum_alternating_sum(spec, widen, cache_dir, jobs)
        assert explicit == result.polynomial, (
            "the coordinate exponent form of the vacuum sum disagrees with the general form"
        )
    return result


def vacuum_alternating_sum(
    spec: CrystalSpec,
    widen: int = 0,
    cache_dir: Optional[str] = None,
    jobs: int = 1,
) -> LaurentPoly:
    """Vacuum-weight sum with the exponent written in coordinates,
    -(sum_i (l+n) beta_i^2 / 2 + i beta_i); agreement with the general
    pairing form is asserted by :func:`bosonic_report`."""
    spec.validate()
    if not spec.is_vacuum():
        raise ValueError("coordinate exponent form only applies to the vacuum weight")
    n, ell = spec.n, spec.level
    m = ell + n
    rho = rho_vector(n)
    table = weight_energy_table((n, spec.shapes), ("plain", None), cache_dir, jobs)
    boxes = spec.total_boxes()
    zero = (0,) * n
    bound = truncation_bound(n, ell, zero, zero, spec.shapes, widen)
    total = LaurentPoly.zero()
    for tau in itertools.permutations(range(1, n + 1)):
        sign = perm_sign(tau)
        tau_inv = perm_inverse(tau)
        for beta in lattice_box(n, bound):
            nu = vsub(rho, vscale(m, beta))
            mu = vsub(perm_apply(tau_inv, nu), rho)
            shift = boxes - sum(mu)
            if shift % n:
                continue
            content = tuple(x + shift // n for x in mu)
            fiber = table.get(content)
            if fiber is None:
                continue
            # each summand m*b_i^2/2 may be half-integral; only the total is
            # integral, since a sum-zero vector has even square norm
            exponent = -(m * norm2(beta) // 2) - sum(
                (i + 1) * b for i, b in enumerate(beta)
            )
            total = total + LaurentPoly.q_power(exponent, sign) * fiber
    return total


# ---------------------------------------------------------------------------
# closed evaluations at level one and level zero


def level_one_identity(
    spec: CrystalSpec, cache_dir: Optional[str] = None, jobs: int = 1
) -> dict:
    """At level one with column factors the restricted path set has at most
    one element; the alternating sum must equal its single monomial."""
    spec.validate()
    if spec.level != 1:
        raise ValueError("level-one identity needs level 1, got %s" % spec.level)
    if any(s.cols != 1 for s in spec.shapes):
        raise ValueError("level-one identity needs column factors")
    if spec.lam is None:
        raise ValueError("level-one identity needs a restriction weight Lambda")
    lam_prime = spec.resolved_lam_prime()
    grading = spec.grading()
    restricted = []
    for p in enumerate_paths(spec.n, spec.shapes):
        if is_level_restricted(p, spec.lam) and equal_mod_ones(
            weight_out(p, spec.lam).finite, lam_prime.finite
        ):
            restricted.append(p)
    if len(restricted) > 1:
        raise AssertionError(
            "level-one restricted path set has %d elements" % len(restricted)
        )
    rhs = (
        LaurentPoly.q_power(grade_path(restricted[0], grading, cache_dir))
        if restricted
        else LaurentPoly.zero()
    )
    result = alternating_sum(
        spec.n, spec.shapes, 1, spec.lam, lam_prime, grading, 0, cache_dir, jobs
    )
    return {
        "path_exists": bool(restricted),
        "path": str(restricted[0]) if restricted else None,
        "lhs_polynomial": list(result.polynomial.pairs()),
        "rhs_polynomial": list(rhs.pairs()),
        "equal": result.polynomial == rhs,
        "single_monomial": result.polynomial.is_monomial() if restricted else not result.polynomial,
        "summand_count": result.summand_count,
        "truncation_bound": result.truncation_bound,
    }


def _level_zero_spec(n: int, shapes: Sequence[RectShape]):
    shapes = tuple(RectShape(*s) for s in shapes)
    for s in shapes:
        if not 1 <= s.rows <= n - 1:
            raise ValueError("factor height %d must be below the rank %d" % (s.rows, n))
        if s.cols != 1:
            raise ValueError("level-zero identity needs column factors")
    zero = LevelWeight(0, (0,) * n, 0)
    return shapes, zero


def level_zero_identity(
    n: int, shapes: Sequence[RectShape], cache_dir: Optional[str] = None, jobs: int = 1
) -> dict:
    """Formal level-zero alternating sum; 1 on the empty tensor product and
    0 otherwise."""
    shapes, zero = _level_zero_spec(n, shapes)
    result = alternating_sum(
        n, shapes, 0, zero, zero, ("plain", None), 0, cache_dir, jobs
    )
    expected = LaurentPoly.one() if not shapes else LaurentPoly.zero()
    return {
        "lhs_polynomial": list(result.polynomial.pairs()),
        "rhs_polynomial": list(expected.pairs()),
        "equal": result.polynomial == expected,
        "summand_count": result.summand_count,
        "truncation_bound": result.truncation_bound,
    }


@dataclass(frozen=True)
class Summand:
    """One term of the alternating sum: group element (beta, tau) and path."""

    beta: tuple[int, ...]
    tau: tuple[int, ...]
    path: Path

    def sign(self) -> int:
        return perm_sign(self.tau)


def _min_raisable_index(p: Path) -> int:
    """Least operator index applicable to the rightmost factor."""
    rightmost = p.factors[-1]
    for i in range(p.n):
        if tableaux.eps(rightmost, i) > 0:
            return i
    raise AssertionError("finite affine crystals admit some raising operator")


def level_zero_pairing(
    n: int, shapes: Sequence[RectShape], cache_dir: Optional[str] = None
) -> dict:
    """Certify the vanishing of the level-zero sum by an explicit involution.

    Every summand (t_beta tau, b) maps to (t_beta tau r_i, s_i e_i b) where i
    is the least index raising the rightmost factor of b.  The certificate
    checks that the image is again a summand, that the pairing is a
    fixed-point-free involution matching opposite signs and equal exponents,
    and that the choice index is constant on each pair."""
    shapes, zero = _level_zero_spec(n, shapes)
    if not shapes:
        raise ValueError("pairing needs a nonempty tensor product")
    m = n
    rho = rho_vector(n)
    boxes = sum(s.rows for s in shapes)
    bound = truncation_bound(n, 0, zero.finite, zero.finite, shapes, 0)

    by_content: dict[tuple, list[tuple[Path, int]]] = {}
    for p in enumerate_paths(n, shapes):
        by_content.setdefault(p.weight(), []).append(
            (p, grade_path(p, ("plain", None), cache_dir))
        )

    summands: dict[Summand, int] = {}
    for tau in itertools.permutations(range(1, n + 1)):
        tau_inv = perm_inverse(tau)
        for beta in lattice_box(n, bound):
            nu = vsub(rho, vscale(m, beta))
            mu = vsub(perm_apply(tau_inv, nu), rho)
            shift = boxes - sum(mu)
            if shift % n:
                continue
            content = tuple(x + shift // n for x in mu)
            for p, energy in by_content.get(content, ()):
                exponent = energy + dot(rho, beta) - m * norm2(beta) // 2
                summands[Summand(beta, tau, p)] = exponent

    pairs = []
    seen = set()
    for s, exponent in summands.items():
        if s in seen:
            continue
        i = _min_raisable_index(s.path)
        raised = s.path.e(i)
        assert raised is not None, "tensor statistics dominate the rightmost factor"
        image_path = raised.reflect(i)
        w = AffineWeylElement(s.beta, s.tau).compose_reflection(i)
        image = Summand(w.beta, w.tau, image_path)
        if image not in summands:
            raise AssertionError(
                "pairing image violates the weight condition: %s -> %s" % (s, image)
            )
        if summands[image] != exponent:
            raise AssertionError("pairing does not preserve the q-exponent")
        if image == s:
            raise AssertionError("pairing has a fixed point at %s" % (s,))
        if image.sign() != -s.sign():
            raise AssertionError("pairing does not reverse the sign")
        if _min_raisable_index(image.path) != i:
            raise AssertionError("choice index is not constant on the pair")
        w_back = AffineWeylElement(image.beta, image.tau).compose_reflection(i)
        back = Summand(w_back.beta, w_back.tau, image_path.e(i).reflect(i))
        if back != s:
            raise AssertionError("pairing is not an involution at %s" % (s,))
        seen.add(s)
        seen.add(image)
        pairs.append((s, image))

    total = LaurentPoly(
        [(exponent, s.sign()) for s, exponent in summands.items()]
    )
    assert total == LaurentPoly.zero(), "paired summands must cancel exactly"
    return {
        "summand_count": len(summands),
        "pairing_size": len(pairs),
        "truncation_bound": bound,
        "cancels": True,
    }


# ---------------------------------------------------------------------------
# straightening bridge and the extra commutation hypothesis


def bosonic_via_straightening(
    spec: CrystalSpec, cache_dir: Optional[str] = None, jobs: int = 1
) -> LaurentPoly:
    """Re-derive the alternating sum by normalizing one Schur symbol per
    content fiber instead of scanning the Weyl group grid."""
    spec.validate()
    if spec.lam is None:
        raise ValueError("straightening bridge needs a restriction weight Lambda")
    lam_prime = spec.resolved_lam_prime()
    table = weight_energy_table((spec.n, spec.shapes), spec.grading(), cache_dir, jobs)
    total = LaurentPoly.zero()
    for content, fiber in table.items():
        image = straighten.pi_on_character(spec.level, vadd(spec.lam.finite, content))
        if image is None:
            continue
        sign, qpow, produced = image
        if produced.same_classical_weight(lam_prime):
            total = total + LaurentPoly.q_power(qpow, sign) * fiber
    return total


def commutation_hypothesis_warnings(
    spec: CrystalSpec, cache_dir: Optional[str] = None
) -> list[str]:
    """Check, factor crystal by factor crystal, that a 0-raising acting on
    the left of b (x) b0 still acts on the left after the local isomorphism.
    Needed only for non-vacuum restriction weights; violations are reported,
    not assumed absent."""
    spec.validate()
    if spec.lam is None or spec.is_vacuum():
        return []
    b0_shape = spec.resolved_b0_shape()
    b0 = phi_matching_element(spec.n, b0_shape, spec.lam)
    warnings = []
    for shape in sorted(set(spec.shapes)):
        table = get_local_table(spec.n, shape, b0_shape, cache_dir)
        for b in tableaux.enumerate_tableaux(shape, spec.n):
            stats = [
                (tableaux.eps(b, 0), tableaux.phi(b, 0)),
                (tableaux.eps(b0, 0), tableaux.phi(b0, 0)),
            ]
            if raising_index(stats) != 0:
                continue
            image = table.apply(b, b0)
            image_stats = [
                (tableaux.eps(image[0], 0), tableaux.phi(image[0], 0)),
                (tableaux.eps(image[1], 0), tableaux.phi(image[1], 0)),
            ]
            if raising_index(image_stats) != 0:
                warnings.append(
                    "0-raising side is not preserved through the local isomorphism "
                    "at %s (x) %s" % (b, b0)
                )
    return warnings
