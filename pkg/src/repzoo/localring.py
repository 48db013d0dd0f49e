"""Finite quotient rings o/p^r of local fields, in three flavors.

Unramified(p, f, r)   : Galois ring Z[x]/(p^r, h(x)), h monic irreducible mod p.
EqChar(p, f, r)       : F_q[t]/(t^r) with q = p^f.
Eisenstein(p, f, e, r): W(F_q)[pi]/(pi^e - p, pi^r), tame (p does not divide e).

Elements are canonical coordinate tuples of ints, so they hash and compare
cheaply; all arithmetic is exact.  Rings are immutable after construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

_TABLE_LIMIT = 1024  # build full add/mul tables when the ring is this small


class RingConstructionError(ValueError):
    """Invalid ring specification (bad prime, reducible modulus, wild ramification)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- polynomials over F_p (dense int tuples, ascending) ----------------------


def _fp_trim(a: list[int]) -> tuple[int, ...]:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] * inv % p
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * m[j]) % p
    return _fp_trim(a)


def _fp_powmod(a, n, m, p):
    result = (1,)
    base = _fp_mod(a, m, p)
    while n:
        if n & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        n >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = tuple(a), tuple(b)
    while b:
        r = list(a)
        dm = len(b) - 1
        inv = pow(b[-1], -1, p)
        for k in range(len(r) - 1, dm - 1, -1):
            c = r[k] * inv % p
            if c:
                for j in range(dm + 1):
                    r[k - dm + j] = (r[k - dm + j] - c * b[j]) % p
        a, b = b, _fp_trim(r)
    return a


def fp_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Irreducibility over F_p via the Frobenius criterion."""
    f = len(poly) - 1
    if f < 1 or poly[-1] % p == 0:
        return False
    if f == 1:
        return True
    x = (0, 1)
    # x^(p^f) == x mod poly
    xq = x
    for _ in range(f):
        xq = _fp_powmod(xq, p, poly, p)
    if _fp_trim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]):
        return False
    for ell in {d for d in range(2, f + 1) if f % d == 0 and is_prime(d)}:
        xq = x
        for _ in range(f // ell):
            xq = _fp_powmod(xq, p, poly, p)
        diff = _fp_trim(
            [(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]
        )
        g = _fp_gcd(poly, diff, p) if diff else poly
        if len(g) - 1 > 0:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree f over F_p."""
    if f == 1:
        return (0, 1)
    for code in range(p**f):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        poly = tuple(coeffs) + (1,)
        if fp_irreducible(poly, p):
            return poly
    raise RingConstructionError(f"no irreducible of degree {f} over F_{p}")


# -- ring specification -------------------------------------------------------

_KINDS = ("unramified", "eqchar", "eisenstein")


@dataclass(frozen=True)
class RingSpec:
    """Specification of a finite quotient ring o/p^r."""

    kind: str
    p: int
    f: int
    r: int
    e: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RingConstructionError(f"unknown ring kind {self.kind!r}")
        if not is_prime(self.p):
            raise RingConstructionError(f"{self.p} is not prime")
        if self.f < 1 or self.r < 1:
            raise RingConstructionError("need f >= 1 and r >= 1")
        if self.kind == "eisenstein":
            if self.e < 2:
                raise RingConstructionError("eisenstein ramification needs e >= 2")
            if self.e % self.p == 0:
                raise RingConstructionError(
                    f"wild ramification unsupported: {self.p} divides e={self.e}"
                )
        elif self.e != 1:
            raise RingConstructionError("e != 1 only makes sense for eisenstein")
        if self.modulus is not None:
            object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus[:-1]) + (1,))
            if len(self.modulus) - 1 != self.f:
                raise RingConstructionError("modulus degree must equal f")
            if not fp_irreducible(self.modulus, self.p):
                raise RingConstructionError("modulus polynomial is reducible mod p")

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def size(self) -> int:
        return self.q**self.r

    def resolved_modulus(self) -> tuple[int, ...]:
        return self.modulus if self.modulus is not None else default_modulus(self.p, self.f)

    def at_level(self, level: int) -> "RingSpec":
        return RingSpec(self.kind, self.p, self.f, level, self.e, self.modulus)

    def label(self) -> str:
        short = {"unramified": "unram", "eqchar": "eqchar", "eisenstein": "eis"}[self.kind]
        if self.kind == "eisenstein":
            return f"{short}:{self.p},{self.f},{self.e},{self.r}"
        return f"{short}:{self.p},{self.f},{self.r}"

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse CLI ring notation like unram:3,1,2 / eqchar:3,1,2 / eis:3,1,2,2."""
        try:
            short, rest = text.split(":")
            nums = [int(x) for x in rest.split(",")]
        except ValueError as exc:
            raise RingConstructionError(f"cannot parse ring spec {text!r}") from exc
        kinds = {"unram": "unramified", "eqchar": "eqchar", "eis": "eisenstein"}
        if short not in kinds:
            raise RingConstructionError(f"unknown ring kind {short!r}")
        if short == "eis":
            if len(nums) != 4:
                raise RingConstructionError("eisenstein spec needs p,f,e,r")
            p, f, e, r = nums
            return cls("eisenstein", p, f, r, e)
        if len(nums) != 3:
            raise RingConstructionError(f"{short} spec needs p,f,r")
        p, f, r = nums
        return cls(kinds[short], p, f, r)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "f": self.f,
            "e": self.e,
            "r": self.r,
            "modulus": list(self.resolved_modulus()),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RingSpec":
        return cls(
            data["kind"],
            data["p"],
            data["f"],
            data["r"],
            data.get("e", 1),
            tuple(data["modulus"]) if data.get("modulus") else None,
        )


# -- the ring itself -----------------------------------------------------------


class QuotientRing:
    """Enumerated finite local ring with exact coordinate arithmetic.

    Elements are referred to by ordinal index into `self.elements`
    (lexicographically sorted coordinate tuples).
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.p = spec.p
        self.f = spec.f
        self.r = spec.r
        self.q = spec.q
        self.size = spec.size
        self.modulus = spec.resolved_modulus()
        self._mod_lift = tuple(int(c) for c in self.modulus)

        if spec.kind == "eisenstein":
            alpha, beta = divmod(spec.r, spec.e)
            self._block_levels = tuple(
                alpha + 1 if i < beta else alpha for i in range(spec.e)
            )
            self._big_level = max(self._block_levels)
        else:
            self._block_levels = ()
            self._big_level = spec.r

        self._ranges = self._coordinate_ranges()
        self.elements: list[tuple[int, ...]] = [
            tuple(t) for t in itertools.product(*[range(m) for m in self._ranges])
        ]
        assert len(self.elements) == self.size, (len(self.elements), self.size)
        self.index = {t: i for i, t in enumerate(self.elements)}
        self.zero = self.index[tuple([0] * len(self._ranges))]
        self.one = self.index[self._one_tuple()]

        self._residue_cache: list[int] | None = None
        self._inv_cache: dict[int, int] = {}
        if self.size <= _TABLE_LIMIT:
            els = self.elements
            self._add_table = [
                [self.index[self._add_raw(a, b)] for b in els] for a in els
            ]
            self._mul_table = [
                [self.index[self._mul_raw(a, b)] for b in els] for a in els
            ]
        else:
            self._add_table = None
            self._mul_table = None
        self._neg_table = [
            self.index[tuple((-c) % m for c, m in zip(t, self._moduli_per_coord()))]
            for t in self.elements
        ]

    # -- coordinate layout ------------------------------------------------

    def _coordinate_ranges(self) -> tuple[int, ...]:
        k = self.spec.kind
        if k == "unramified":
            return (self.p**self.r,) * self.f
        if k == "eqchar":
            return (self.p,) * (self.r * self.f)
        return tuple(
            self.p**lvl for lvl in self._block_levels for _ in range(self.f)
        )

    def _moduli_per_coord(self) -> tuple[int, ...]:
        return self._ranges

    def _one_tuple(self) -> tuple[int, ...]:
        t = [0] * len(self._ranges)
        t[0] = 1
        return tuple(t)

    # -- raw tuple arithmetic ----------------------------------------------

    def _add_raw(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self._ranges))

    def _unram_mul(self, a, b, pr):
        """Multiply length-f vectors as polys mod (modulus, pr)."""
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % pr,)
        out = [0] * (2 * f - 1)
        for i in range(f):
            ai = a[i]
            if ai:
                for j in range(f):
                    out[i + j] = (out[i + j] + ai * b[j]) % pr
        h = self._mod_lift
        for k in range(2 * f - 2, f - 1, -1):
            c = out[k]
            if c:
                out[k] = 0
                for j in range(f):
                    out[k - f + j] = (out[k - f + j] - c * h[j]) % pr
        return tuple(out[:f])

    def _mul_raw(self, a, b):
        k = self.spec.kind
        if k == "unramified":
            return self._unram_mul(a, b, self.p**self.r)
        if k == "eqchar":
            f, r, p = self.f, self.r, self.p
            out = [0] * (r * f)
            for i in range(r):
                ca = a[i * f : (i + 1) * f]
                if not any(ca):
                    continue
                for j in range(r - i):
                    cb = b[j * f : (j + 1) * f]
                    if not any(cb):
                        continue
                    prod = self._unram_mul(ca, cb, p)
                    base = (i + j) * f
                    for t in range(f):
                        out[base + t] = (out[base + t] + prod[t]) % p
            return tuple(out)
        # eisenstein: convolve pi-blocks over the big unramified level, fold pi^e = p
        e, f, p = self.spec.e, self.f, self.p
        big = self.p**self._big_level
        blocks = [[0] * f for _ in range(2 * e - 1)]
        for i in range(e):
            ca = a[i * f : (i + 1) * f]
            if not any(ca):
                continue
            for j in range(e):
                cb = b[j * f : (j + 1) * f]
                if not any(cb):
                    continue
                prod = self._unram_mul(ca, cb, big)
                tgt = blocks[i + j]
                for t in range(f):
                    tgt[t] = (tgt[t] + prod[t]) % big
        for m in range(2 * e - 2, e - 1, -1):
            src = blocks[m]
            if any(src):
                tgt = blocks[m - e]
                for t in range(f):
                    tgt[t] = (tgt[t] + p * src[t]) % big
        out = []
        for i in range(e):
            lvl = self.p ** self._block_levels[i]
            out.extend(c % lvl for c in blocks[i])
        return tuple(out)

    # -- public index arithmetic ---------------------------------------------

    def add(self, i: int, j: int) -> int:
        if self._add_table is not None:
            return self._add_table[i][j]
        return self.index[self._add_raw(self.elements[i], self.elements[j])]

    def mul(self, i: int, j: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[i][j]
        return self.index[self._mul_raw(self.elements[i], self.elements[j])]

    def neg(self, i: int) -> int:
        return self._neg_table[i]

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self._neg_table[j])

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> ring."""
        acc = self.zero
        one = self.one
        n_mod = n % self.additive_order_of_one()
        for _ in range(n_mod):
            acc = self.add(acc, one)
        return acc

    # -- residue field & units --------------------------------------------------

    def residue_coords(self, i: int) -> tuple[int, ...]:
        """Image in F_q as a length-f vector over F_p."""
        t = self.elements[i]
        k = self.spec.kind
        if k == "unramified":
            return tuple(c % self.p for c in t)
        return tuple(c % self.p for c in t[: self.f])

    def is_unit(self, i: int) -> bool:
        return any(self.residue_coords(i))

    def units_count(self) -> int:
        return self.size - self.size // self.q

    def units(self) -> Iterator[int]:
        return (i for i in range(self.size) if self.is_unit(i))

    def maximal_ideal(self) -> list[int]:
        return [i for i in range(self.size) if not self.is_unit(i)]

    def inv(self, i: int) -> int:
        """Inverse of a unit: residue-field inverse plus Hensel lifting."""
        cached = self._inv_cache.get(i)
        if cached is not None:
            return cached
        if not self.is_unit(i):
            raise ZeroDivisionError("not a unit")
        res = self.residue_coords(i)
        p, f = self.p, self.f
        if f == 1:
            inv0 = (pow(res[0], -1, p),)
        else:
            inv0 = self._fq_inverse(res)
        x = self.index[self._embed_residue(inv0)]
        # Newton: x <- x(2 - a x), converges since the maximal ideal is nilpotent
        two = self.from_int(2)
        steps = max(1, math.ceil(math.log2(max(self.r, 2))) + 1)
        for _ in range(steps):
            x = self.mul(x, self.sub(two, self.mul(i, x)))
        assert self.mul(i, x) == self.one
        self._inv_cache[i] = x
        return x

    def _fq_inverse(self, res: tuple[int, ...]) -> tuple[int, ...]:
        # a^(q-2) in F_q = F_p[x]/modulus
        out = _fp_powmod(_fp_trim(list(res)), self.q - 2, self.modulus, self.p)
        return tuple(list(out) + [0] * (self.f - len(out)))

    def _embed_residue(self, res: tuple[int, ...]) -> tuple[int, ...]:
        t = [0] * len(self._ranges)
        for j in range(self.f):
            t[j] = res[j]
        return tuple(t)

    # -- structure maps -----------------------------------------------------------

    def additive_order_of_one(self) -> int:
        k = self.spec.kind
        if k == "unramified":
            return self.p**self.r
        if k == "eqchar":
            return self.p
        return self.p ** self._block_levels[0]

    def reduce_to(self, level: int) -> tuple["QuotientRing", list[int]]:
        """Quotient ring at a lower level plus the index map realizing it."""
        if not 1 <= level <= self.r:
            raise ValueError(f"level must be in 1..{self.r}")
        target = make_ring(self.spec.at_level(level))
        k = self.spec.kind
        mapping = []
        if k == "unramified":
            pl = self.p**level
            for t in self.elements:
                mapping.append(target.index[tuple(c % pl for c in t)])
        elif k == "eqchar":
            keep = level * self.f
            for t in self.elements:
                mapping.append(target.index[t[:keep]])
        else:
            tl = target._block_levels
            f = self.f
            for t in self.elements:
                out = []
                for i in range(self.spec.e):
                    m = self.p ** tl[i]
                    out.extend(c % m for c in t[i * f : (i + 1) * f])
                mapping.append(target.index[tuple(out)])
        return target, mapping


_RING_CACHE: dict[RingSpec, QuotientRing] = {}


def make_ring(spec: RingSpec) -> QuotientRing:
    """Construct (and memoize) the ring for a spec."""
    ring = _RING_CACHE.get(spec)
    if ring is None:
        ring = QuotientRing(spec)
        _RING_CACHE[spec] = ring
    return ring


# -- Eisenstein truncation isomorphism ------------------------------------------


@dataclass
class TruncationIso:
    """Result of the e >= r check: explicit map F_q[t]/t^r -> Eisenstein ring."""

    isomorphic: bool
    source_spec: RingSpec | None = None
    target_spec: RingSpec | None = None
    coordinate_matrix: tuple[tuple[int, ...], ...] | None = None

    def apply(self, source_ring: QuotientRing, target_ring: QuotientRing, i: int) -> int:
        """Image of source element i under the isomorphism (t maps to pi)."""
        if not self.isomorphic:
            raise ValueError("no isomorphism exists")
        src = source_ring.elements[i]
        n = len(self.coordinate_matrix)
        out = [0] * n
        for row in range(n):
            acc = 0
            mrow = self.coordinate_matrix[row]
            for col, c in enumerate(src):
                if c:
                    acc += mrow[col] * c
            out[row] = acc % source_ring.p
        return target_ring.index[tuple(out)]


def iso_check_truncated(spec: RingSpec) -> TruncationIso:
    """Decide o/pi^r ~ F_q[t]/t^r for an Eisenstein spec; true iff e >= r.

    When true, returns the concrete coordinate map sending t to pi and the
    residue-field basis to itself, verified as a ring isomorphism.
    """
    if spec.kind != "eisenstein":
        raise ValueError("iso_check_truncated expects an eisenstein spec")
    if spec.e < spec.r:
        # p = pi^e is nonzero in the quotient, but p = 0 in F_q[t]/t^r
        return TruncationIso(isomorphic=False)

    target = make_ring(spec)
    source_spec = RingSpec("eqchar", spec.p, spec.f, spec.r, modulus=spec.modulus)
    source = make_ring(source_spec)
    p, f, r = spec.p, spec.f, spec.r

    # Source coordinates are monomials x^a t^i; map x^a t^i -> x^a pi^i.
    # Since e >= r all target block levels are 0 or 1, so the map is F_p-linear
    # on coordinates: build its matrix column by column.
    n_src = r * f
    n_tgt = len(target._ranges)
    cols = []
    basis_images = []
    for i in range(r):
        for a in range(f):
            src_t = [0] * n_src
            src_t[i * f + a] = 1
            tgt_t = [0] * n_tgt
            tgt_t[i * f + a] = 1
            cols.append(tuple(tgt_t))
            basis_images.append((source.index[tuple(src_t)], target.index[tuple(tgt_t)]))
    matrix = tuple(
        tuple(cols[c][rw] for c in range(n_src)) for rw in range(n_tgt)
    )
    iso = TruncationIso(True, source_spec, spec, matrix)

    # verify: multiplicative on all basis pairs, unital, injective
    img = {s: t for s, t in basis_images}
    assert iso.apply(source, target, source.one) == target.one
    basis_src = [s for s, _ in basis_images]
    for s1 in basis_src:
        for s2 in basis_src:
            lhs = iso.apply(source, target, source.mul(s1, s2))
            rhs = target.mul(img[s1], img[s2])
            if lhs != rhs:
                raise AssertionError("truncation map failed multiplicativity check")
    seen = set()
    for s, t in basis_images:
        seen.add(t)
    # F_p-linear map with independent basis images is injective on a q^r-set
    if len(seen) != len(basis_images):
        raise AssertionError("truncation map is not injective on basis")
    return iso
