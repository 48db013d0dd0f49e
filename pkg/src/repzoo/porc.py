"""PORC functions: residue-class families of exact polynomials on prime powers.

A PORC function over base q assigns to each exponent d >= 1 the value
constituents[d mod N](q^d).  The consolidation routine turns a family of
PORC functions with bounded period and bounded value count into a single
finite polynomial set covering all values the family takes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polynomials import RationalPoly


class PorcDivisionError(ValueError):
    """Quotient of the given PORC functions is not PORC on some residue class."""

    def __init__(self, residue_class: int, remainder: RationalPoly):
        self.residue_class = residue_class
        self.remainder = remainder
        super().__init__(
            f"inexact constituent division in residue class {residue_class}"
        )


class PeriodBoundError(ValueError):
    """A family member's period exceeds the stated bound."""


class ValueCountError(ValueError):
    """The family takes more distinct values than allowed at some exponent."""

    def __init__(self, witness_d: int, count: int, bound: int):
        self.witness_d = witness_d
        self.count = count
        self.bound = bound
        super().__init__(
            f"family takes {count} > {bound} distinct values at d={witness_d}"
        )


@dataclass(frozen=True)
class PorcFunction:
    """q-PORC function: value at q^d is constituents[d mod period](q^d)."""

    base: int
    constituents: tuple[RationalPoly, ...]
    counting: bool = False  # assert integer values when True

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("prime_power_base must be >= 2")
        if not self.constituents:
            raise ValueError("need at least one constituent")
        object.__setattr__(self, "constituents", tuple(self.constituents))
        if self.counting:
            for d in range(1, 2 * self.period + 1):
                v = self.value(d)
                if v.denominator != 1:
                    raise ValueError(f"counting PORC has non-integer value at d={d}")

    @property
    def period(self) -> int:
        return len(self.constituents)

    def constituent_for(self, d: int) -> RationalPoly:
        return self.constituents[d % self.period]

    def value(self, d: int) -> Fraction:
        """Exact value at q^d."""
        if d < 1:
            raise ValueError("exponent d must be >= 1")
        return self.constituent_for(d)(self.base**d)

    def lifted(self, period: int) -> "PorcFunction":
        """Same function presented with a period that is a multiple of ours."""
        if period % self.period:
            raise ValueError("lift target must be a multiple of the period")
        reps = period // self.period
        return PorcFunction(self.base, self.constituents * reps, self.counting)

    def __mul__(self, other: "PorcFunction") -> "PorcFunction":
        if self.base != other.base:
            raise ValueError("PORC product needs a common base")
        lcm = math.lcm(self.period, other.period)
        a, b = self.lifted(lcm), other.lifted(lcm)
        return PorcFunction(
            self.base,
            tuple(p * q for p, q in zip(a.constituents, b.constituents)),
            self.counting and other.counting,
        )

    def agrees_with(self, other: "PorcFunction", horizon: int = 20) -> bool:
        """Value equality on all 1 <= d <= horizon."""
        return self.base == other.base and all(
            self.value(d) == other.value(d) for d in range(1, horizon + 1)
        )


def porc_quotient(f: PorcFunction, g: PorcFunction) -> PorcFunction:
    """Exact quotient f/g as a PORC function with period lcm(N_f, N_g)."""
    if f.base != g.base:
        raise ValueError("PORC quotient needs a common base")
    lcm = math.lcm(f.period, g.period)
    fl, gl = f.lifted(lcm), g.lifted(lcm)
    quots = []
    for m, (p, q) in enumerate(zip(fl.constituents, gl.constituents)):
        quot, rem = p.divmod(q) if not q.is_zero() else (RationalPoly.zero(), p)
        if q.is_zero():
            if p.is_zero():
                quots.append(RationalPoly.zero())
                continue
            raise PorcDivisionError(m, p)
        if not rem.is_zero():
            raise PorcDivisionError(m, rem)
        quots.append(quot)
    return PorcFunction(f.base, tuple(quots))


def _largest_coincidence(
    g1: RationalPoly, g2: RationalPoly, base: int, residue: int, period: int
) -> int:
    """Largest d = residue mod period with g1(q^d) = g2(q^d); 0 if none.

    Exact: roots of g1-g2 are bounded by the Cauchy bound, so only finitely
    many exponents can collide and they are all scanned.
    """
    diff = g1 - g2
    if diff.is_zero():
        raise ValueError("constituents are equal; no crossover exists")
    bound = 1 + max(abs(c) for c in diff.coeffs) / abs(diff.leading)
    last = 0
    d = residue if residue >= 1 else period
    while Fraction(base) ** d <= bound:
        if diff(base**d) == 0:
            last = d
        d += period
    return last


def porc_consolidate(
    family: Iterable[PorcFunction],
    period_bound: int,
    value_count_bound: int,
    horizon: int = 20,
) -> tuple[RationalPoly, ...]:
    """Finite polynomial set covering every family value at q^d, 1 <= d <= horizon.

    Per residue class mod the lcm of the periods, the distinct constituents are
    collected and a crossover exponent (beyond which they take pairwise distinct
    values) is computed exactly from root bounds; values below the global
    crossover are added as constant polynomials.  Coverage on d <= horizon is
    then guaranteed by construction, and the polynomial part covers all larger
    d as well.
    """
    members = list(family)
    if not members:
        return ()
    base = members[0].base
    for f in members:
        if f.base != base:
            raise ValueError("family members must share prime_power_base")
        if f.period > period_bound:
            raise PeriodBoundError(
                f"period {f.period} exceeds bound {period_bound}"
            )
    for d in range(1, horizon + 1):
        values = {f.value(d) for f in members}
        if len(values) > value_count_bound:
            raise ValueCountError(d, len(values), value_count_bound)

    lcm = math.lcm(*(f.period for f in members))
    lifted = [f.lifted(lcm) for f in members]

    chosen: list[RationalPoly] = []
    crossover = 1
    for m in range(lcm):
        # Lexicographically-least-first ordering makes the selection canonical.
        class_polys = sorted(
            {f.constituents[m] for f in lifted}, key=lambda p: p.coeffs
        )
        for p in class_polys:
            if p not in chosen:
                chosen.append(p)
        d_m = 1
        for i in range(len(class_polys)):
            for j in range(i + 1, len(class_polys)):
                hit = _largest_coincidence(
                    class_polys[i], class_polys[j], base, m, lcm
                )
                d_m = max(d_m, hit + 1)
        crossover = max(crossover, d_m)

    exceptional = sorted(
        {f.value(d) for f in members for d in range(1, crossover)}
    )
    out = list(chosen)
    for v in exceptional:
        cpoly = RationalPoly.constant(v)
        if cpoly not in out:
            out.append(cpoly)
    return tuple(out)


def covers(
    polys: Sequence[RationalPoly],
    family: Iterable[PorcFunction],
    horizon: int = 20,
) -> bool:
    """Brute-force coverage check: every family value on d <= horizon is hit."""
    members = list(family)
    for f in members:
        for d in range(1, horizon + 1):
            x = f.base**d
            v = f.value(d)
            if not any(g(x) == v for g in polys):
                return False
    return True
