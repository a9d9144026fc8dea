"""Exactly representable probability laws on the rationals.

Two families are supported: finite discrete laws (atoms) and piecewise-uniform
laws (finitely many disjoint open intervals with uniform mass).  Both keep
every quantity -- CDF values, quantiles, tail masses -- as exact `Fraction`s,
so downstream identities can be checked with rational equality instead of
floating tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

RatLike = Union[int, str, Fraction]


class NoWitnessError(ValueError):
    """The law is too concentrated to admit a non-degeneracy witness."""


class LawKind(Enum):
    DISCRETE = "discrete"
    PIECEWISE_UNIFORM = "piecewise_uniform"


@dataclass(frozen=True)
class DistributionSpec:
    """A probability law, either discrete atoms or piecewise-uniform pieces.

    `atoms` is a sorted tuple of (value, mass) pairs with distinct values;
    `pieces` is a sorted tuple of (lo, hi, mass) triples over disjoint open
    intervals.  Exactly one of the two is populated, per `kind`.  Instances
    are canonical: equal laws compare equal with `==`.
    """

    kind: LawKind
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()
    pieces: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.kind is LawKind.DISCRETE:
            if self.pieces or not self.atoms:
                raise ValueError("discrete law must carry atoms only")
            total = Fraction(0)
            prev = None
            for value, mass in self.atoms:
                if mass <= 0:
                    raise ValueError(f"atom mass must be positive, got {mass}")
                if prev is not None and value <= prev:
                    raise ValueError("atoms must be sorted with distinct values")
                prev = value
                total += mass
            if total != 1:
                raise ValueError(f"atom masses must sum to 1, got {total}")
        else:
            if self.atoms or not self.pieces:
                raise ValueError("piecewise-uniform law must carry pieces only")
            total = Fraction(0)
            prev_hi = None
            for lo, hi, mass in self.pieces:
                if lo >= hi:
                    raise ValueError(f"piece must have lo < hi, got ({lo}, {hi})")
                if mass <= 0:
                    raise ValueError(f"piece mass must be positive, got {mass}")
                if prev_hi is not None and lo < prev_hi:
                    raise ValueError("pieces must be disjoint and sorted")
                prev_hi = hi
                total += mass
            if total != 1:
                raise ValueError(f"piece masses must sum to 1, got {total}")

    @property
    def support_min(self) -> Fraction:
        if self.kind is LawKind.DISCRETE:
            return self.atoms[0][0]
        return self.pieces[0][0]

    @property
    def support_max(self) -> Fraction:
        if self.kind is LawKind.DISCRETE:
            return self.atoms[-1][0]
        return self.pieces[-1][1]


def _rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def discrete(atoms: Union[Mapping[RatLike, RatLike], Iterable[tuple[RatLike, RatLike]]]) -> DistributionSpec:
    """Build a discrete law; duplicate values are merged by summing masses."""
    items = atoms.items() if isinstance(atoms, Mapping) else atoms
    merged: dict[Fraction, Fraction] = {}
    for value, mass in items:
        v = _rat(value)
        merged[v] = merged.get(v, Fraction(0)) + _rat(mass)
    pairs = tuple(sorted((v, m) for v, m in merged.items()))
    return DistributionSpec(kind=LawKind.DISCRETE, atoms=pairs)


def piecewise_uniform(pieces: Iterable[tuple[RatLike, RatLike, RatLike]]) -> DistributionSpec:
    """Build a piecewise-uniform law; touching pieces of equal density are merged."""
    raw = sorted((_rat(lo), _rat(hi), _rat(mass)) for lo, hi, mass in pieces)
    merged: list[tuple[Fraction, Fraction, Fraction]] = []
    for lo, hi, mass in raw:
        if merged:
            plo, phi, pmass = merged[-1]
            if lo == phi and pmass * (hi - lo) == mass * (phi - plo):
                merged[-1] = (plo, hi, pmass + mass)
                continue
        merged.append((lo, hi, mass))
    return DistributionSpec(kind=LawKind.PIECEWISE_UNIFORM, pieces=tuple(merged))


def uniform(lo: RatLike, hi: RatLike) -> DistributionSpec:
    """The uniform law on the open interval ]lo, hi[."""
    return piecewise_uniform([(lo, hi, 1)])


def cumulative_masses(dist: DistributionSpec) -> tuple[Fraction, ...]:
    """Running total of atom or piece masses, one entry per atom/piece."""
    cums = []
    total = Fraction(0)
    if dist.kind is LawKind.DISCRETE:
        for _, mass in dist.atoms:
            total += mass
            cums.append(total)
    else:
        for _, _, mass in dist.pieces:
            total += mass
            cums.append(total)
    return tuple(cums)


def cdf(dist: DistributionSpec, u: RatLike, strict: bool = False) -> Fraction:
    """Mass of the lower half-line at u: the open half-line when `strict`.

    strict=False gives the usual right-continuous CDF; strict=True gives the
    mass strictly below u, which differs exactly at atoms.
    """
    u = _rat(u)
    total = Fraction(0)
    if dist.kind is LawKind.DISCRETE:
        for value, mass in dist.atoms:
            if value < u or (not strict and value == u):
                total += mass
            elif value >= u:
                break
        return total
    for lo, hi, mass in dist.pieces:
        if u >= hi:
            total += mass
        elif u > lo:
            total += mass * (u - lo) / (hi - lo)
            break
        else:
            break
    return total


def quantile(dist: DistributionSpec, t: RatLike) -> Fraction:
    """Generalized quantile: the least u whose CDF reaches t, for 0 < t < 1.

    Satisfies the adjunction  quantile(d, t) <= u  iff  cdf(d, u) >= t.
    """
    t = _rat(t)
    if not 0 < t < 1:
        raise ValueError(f"quantile level must lie in ]0,1[, got {t}")
    cum = Fraction(0)
    if dist.kind is LawKind.DISCRETE:
        for value, mass in dist.atoms:
            cum += mass
            if cum >= t:
                return value
    else:
        for lo, hi, mass in dist.pieces:
            if cum + mass >= t:
                return lo + (t - cum) * (hi - lo) / mass
            cum += mass
    raise AssertionError("unreachable: total mass is 1")


def quantile_right_limit(dist: DistributionSpec, t: RatLike) -> Fraction:
    """Right limit of the quantile function: the least u with cdf(u) > t."""
    t = _rat(t)
    if not 0 <= t < 1:
        raise ValueError(f"level must lie in [0,1[, got {t}")
    cum = Fraction(0)
    if dist.kind is LawKind.DISCRETE:
        for value, mass in dist.atoms:
            cum += mass
            if cum > t:
                return value
    else:
        for lo, hi, mass in dist.pieces:
            if cum + mass > t:
                return lo + max(Fraction(0), t - cum) * (hi - lo) / mass
            cum += mass
    raise AssertionError("unreachable: total mass is 1")


@dataclass(frozen=True)
class NonDegeneracyWitness:
    """A pair x_minus < x_plus with mass > rho strictly beyond each side.

    p_lower is the mass strictly below x_minus, p_upper the mass strictly
    above x_plus; both exceed rho exactly.
    """

    rho: Fraction
    x_minus: Fraction
    x_plus: Fraction
    p_lower: Fraction
    p_upper: Fraction

    def __post_init__(self) -> None:
        if not 0 < self.rho < Fraction(1, 2):
            raise ValueError(f"rho must lie in ]0,1/2[, got {self.rho}")
        if self.x_minus >= self.x_plus:
            raise ValueError("witness requires x_minus < x_plus")
        if self.p_lower <= self.rho or self.p_upper <= self.rho:
            raise ValueError("witness tails must strictly exceed rho")


def witness_at(dist: DistributionSpec, rho: RatLike, x_minus: RatLike, x_plus: RatLike) -> NonDegeneracyWitness:
    """Validate an explicitly chosen witness pair against the law."""
    x_minus, x_plus = _rat(x_minus), _rat(x_plus)
    return NonDegeneracyWitness(
        rho=_rat(rho),
        x_minus=x_minus,
        x_plus=x_plus,
        p_lower=cdf(dist, x_minus, strict=True),
        p_upper=1 - cdf(dist, x_plus, strict=False),
    )


def find_witness(dist: DistributionSpec, rho: RatLike) -> NonDegeneracyWitness:
    """Construct the canonical witness for the law at level rho.

    Discrete laws: minimize each tail mass subject to staying strictly above
    rho, placing the cut at the widest admissible point; if the two cuts
    collide on atoms, move them into the adjacent zero-mass gaps (midpoints,
    or the two interior trisection points when both cuts share one gap).
    Piecewise-uniform laws: symmetric quantile cut at level (rho + 1/2)/2,
    which always exists since the CDF is continuous.

    Raises NoWitnessError when no pair works at this level, e.g. for a
    constant law or one with mass >= 1 - rho packed at an extreme atom.
    """
    rho = _rat(rho)
    if not 0 < rho < Fraction(1, 2):
        raise ValueError(f"rho must lie in ]0,1/2[, got {rho}")

    if dist.kind is LawKind.PIECEWISE_UNIFORM:
        tau = (rho + Fraction(1, 2)) / 2
        x_minus = quantile(dist, tau)
        x_plus = quantile(dist, 1 - tau)
        if x_minus >= x_plus:
            raise AssertionError("continuous quantile cuts cannot collide")
        return witness_at(dist, rho, x_minus, x_plus)

    values = [v for v, _ in dist.atoms]
    cums = cumulative_masses(dist)
    m = len(values)
    # First index (from the left) where the cumulative strictly exceeds rho,
    # and first index from the right where the upper tail does.
    i_star = next(i for i in range(m) if cums[i] > rho)
    j_star = next(j for j in reversed(range(m)) if 1 - (cums[j - 1] if j else Fraction(0)) > rho)
    if values[i_star] >= values[j_star]:
        raise NoWitnessError(
            f"law has no non-degeneracy witness at rho={rho}: "
            f"both tails force the cut to the same point"
        )
    raw_minus = values[i_star + 1]
    raw_plus = values[j_star - 1]
    if raw_minus < raw_plus:
        return witness_at(dist, rho, raw_minus, raw_plus)
    if i_star + 1 == j_star:
        # Both cuts land in the single gap between consecutive atoms.
        a, b = values[i_star], values[j_star]
        return witness_at(dist, rho, a + (b - a) / 3, a + 2 * (b - a) / 3)
    # Cuts sit on the same atom; use the midpoints of the flanking gaps.
    x_minus = (values[i_star] + values[i_star + 1]) / 2
    x_plus = (values[j_star - 1] + values[j_star]) / 2
    return witness_at(dist, rho, x_minus, x_plus)
