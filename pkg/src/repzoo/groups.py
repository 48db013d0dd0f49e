"""Finite matrix groups over quotient rings: enumeration, classes, kernels, quotients.

A matrix is a tuple of n*n ring-element ordinals, so group elements hash and
compare as flat int tuples.  Groups expose a small uniform protocol (order,
mul, inv, generators) that the character-theory code runs against; subgroups
and quotients implement the same protocol, which keeps Dixon-Schneider and
the Clifford pipeline oblivious to where a group came from.

Enumeration of GL lifts the residue-field group through the congruence
kernel fibers instead of filtering all q^(r n^2) matrices.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass
from functools import reduce

from .localring import QuotientRing, RingSpec, make_ring
from .polynomials import RationalPoly

DEFAULT_BUDGET = 10**7

_FAMILIES = ("GL", "SL", "U", "B", "T")


class BudgetExceededError(ValueError):
    def __init__(self, scheme, spec, predicted, budget):
        self.predicted = predicted
        super().__init__(
            f"|{scheme.family}{scheme.n}({spec.label()})| = {predicted} exceeds budget {budget}"
        )


class NotNormalError(ValueError):
    def __init__(self, conjugator: int, member: int):
        self.conjugator = conjugator
        self.member = member
        super().__init__(
            f"subgroup is not normal: witness conjugator ordinal {conjugator}"
        )


@dataclass(frozen=True)
class GroupScheme:
    """Matrix group scheme from the fixed menu, of size n."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown scheme family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def label(self) -> str:
        return f"{self.family}{self.n}"

    @classmethod
    def parse(cls, text: str) -> "GroupScheme":
        for fam in sorted(_FAMILIES, key=len, reverse=True):
            if text.upper().startswith(fam):
                return cls(fam, int(text[len(fam):]))
        raise ValueError(f"cannot parse scheme {text!r}")


def predicted_order(scheme: GroupScheme, spec: RingSpec) -> int:
    q, r, n = spec.q, spec.r, scheme.n
    gl1 = reduce(lambda acc, i: acc * (q**n - q**i), range(n), 1)
    units = q**r - q ** (r - 1)
    if scheme.family == "GL":
        return q ** ((r - 1) * n * n) * gl1
    if scheme.family == "SL":
        return q ** ((r - 1) * n * n) * gl1 // units
    if scheme.family == "U":
        return (q**r) ** (n * (n - 1) // 2)
    if scheme.family == "B":
        return units**n * (q**r) ** (n * (n - 1) // 2)
    return units**n  # T


def scheme_order_poly(scheme: GroupScheme, r: int) -> RationalPoly:
    """|G(o_r)| as an exact polynomial in q (kind-independent)."""
    x = RationalPoly.x()
    n = scheme.n
    gl1 = RationalPoly.one()
    for i in range(n):
        gl1 = gl1 * (x**n - x**i)
    units = x**r - x ** (r - 1)
    if scheme.family == "GL":
        return x ** ((r - 1) * n * n) * gl1
    if scheme.family == "SL":
        return (x ** ((r - 1) * n * n) * gl1).exact_div(units)
    if scheme.family == "U":
        return x ** (r * n * (n - 1) // 2)
    if scheme.family == "B":
        return units**n * x ** (r * n * (n - 1) // 2)
    return units**n


# -- group protocol -------------------------------------------------------------


class FiniteGroup:
    """Shared machinery over (order, identity, mul, inv)."""

    order: int
    identity: int

    def mul(self, i: int, j: int) -> int:
        raise NotImplementedError

    def inv(self, i: int) -> int:
        raise NotImplementedError

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            n += 1
        return n

    def generators(self) -> list[int]:
        """Greedy generating set: first ordinals that strictly grow the closure."""
        cached = getattr(self, "_generators", None)
        if cached is not None:
            return cached
        gens: list[int] = []
        closure = {self.identity}
        for i in range(self.order):
            if i in closure:
                continue
            gens.append(i)
            frontier = [i]
            while frontier:
                nxt = []
                for a in frontier:
                    if a in closure:
                        continue
                    closure.add(a)
                    for g in gens:
                        nxt.append(self.mul(a, g))
                        nxt.append(self.mul(g, a))
                frontier = nxt
            if len(closure) == self.order:
                break
        self._generators = gens
        return gens

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(
            self.mul(a, b) == self.mul(b, a)
            for a in gens
            for b in gens
        )

    def exponent(self) -> int:
        classes = conjugacy_classes(self)
        return math.lcm(*(self.element_order(r) for r in classes.representatives))


class FiniteMatrixGroup(FiniteGroup):
    """Fully enumerated matrix group over a quotient ring."""

    def __init__(self, scheme: GroupScheme, ring: QuotientRing, matrices):
        self.scheme = scheme
        self.ring = ring
        self.n = scheme.n
        self.elements = sorted(matrices)
        self.order = len(self.elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.identity = self.index[_identity_matrix(ring, scheme.n)]
        self._inv_cache: dict[int, int] = {}

    def matrix(self, i: int):
        return self.elements[i]

    def mul(self, i: int, j: int) -> int:
        return self.index[_mat_mul(self.ring, self.n, self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        v = self._inv_cache.get(i)
        if v is None:
            v = self.index[_mat_inv(self.ring, self.n, self.elements[i])]
            self._inv_cache[i] = v
        return v

    def fingerprint(self, include_classes: bool = True) -> dict:
        """Cache identity: scheme, ring spec, order, class-sizes hash."""
        data = {
            "scheme": self.scheme.label(),
            "ring": self.ring.spec.to_json(),
            "order": self.order,
        }
        if include_classes:
            sizes = conjugacy_classes(self).sizes
            data["class_sizes_sha256"] = hashlib.sha256(
                json.dumps(sizes).encode()
            ).hexdigest()
        return data


class SubgroupView(FiniteGroup):
    """Subgroup presented by sorted parent ordinals, with the parent's operations."""

    def __init__(self, parent: FiniteGroup, ordinals):
        self.parent = parent
        self.ordinals = tuple(sorted(ordinals))
        self.order = len(self.ordinals)
        self.local = {o: i for i, o in enumerate(self.ordinals)}
        self.identity = self.local[parent.identity]

    def mul(self, i: int, j: int) -> int:
        return self.local[self.parent.mul(self.ordinals[i], self.ordinals[j])]

    def inv(self, i: int) -> int:
        return self.local[self.parent.inv(self.ordinals[i])]


class QuotientGroup(FiniteGroup):
    """Group on cosets of a normal subgroup, reps by least ordinal."""

    def __init__(self, parent: FiniteGroup, kernel_ordinals):
        kernel = sorted(kernel_ordinals)
        label = [-1] * parent.order
        reps: list[int] = []
        for x in range(parent.order):
            if label[x] >= 0:
                continue
            cid = len(reps)
            reps.append(x)
            for k in kernel:
                label[parent.mul(x, k)] = cid
        self.parent = parent
        self.kernel = tuple(kernel)
        self.label = label
        self.reps = reps
        self.order = len(reps)
        self.identity = label[parent.identity]
        assert self.order * len(kernel) == parent.order

    def mul(self, i: int, j: int) -> int:
        return self.label[self.parent.mul(self.reps[i], self.reps[j])]

    def inv(self, i: int) -> int:
        return self.label[self.parent.inv(self.reps[i])]


# -- matrix arithmetic helpers ---------------------------------------------------


def _identity_matrix(ring: QuotientRing, n: int):
    return tuple(ring.one if i == j else ring.zero for i in range(n) for j in range(n))


def _mat_mul(ring: QuotientRing, n: int, a, b):
    if n == 2:
        m, s = ring.mul, ring.add
        return (
            s(m(a[0], b[0]), m(a[1], b[2])),
            s(m(a[0], b[1]), m(a[1], b[3])),
            s(m(a[2], b[0]), m(a[3], b[2])),
            s(m(a[2], b[1]), m(a[3], b[3])),
        )
    m, s = ring.mul, ring.add
    out = []
    for i in range(n):
        for j in range(n):
            acc = ring.zero
            for k in range(n):
                acc = s(acc, m(a[i * n + k], b[k * n + j]))
            out.append(acc)
    return tuple(out)


def _mat_det(ring: QuotientRing, n: int, a) -> int:
    if n == 1:
        return a[0]
    if n == 2:
        return ring.sub(ring.mul(a[0], a[3]), ring.mul(a[1], a[2]))
    det = ring.zero
    for j in range(n):
        if a[j] == ring.zero:
            continue
        minor = tuple(
            a[r * n + c] for r in range(1, n) for c in range(n) if c != j
        )
        term = ring.mul(a[j], _mat_det(ring, n - 1, minor))
        det = ring.add(det, term) if j % 2 == 0 else ring.sub(det, term)
    return det


def _mat_inv(ring: QuotientRing, n: int, a):
    det = _mat_det(ring, n, a)
    dinv = ring.inv(det)
    if n == 1:
        return (dinv,)
    adj = []
    for i in range(n):
        for j in range(n):
            minor = tuple(
                a[r * n + c]
                for r in range(n)
                if r != j
                for c in range(n)
                if c != i
            )
            cof = _mat_det(ring, n - 1, minor)
            if (i + j) % 2:
                cof = ring.neg(cof)
            adj.append(ring.mul(cof, dinv))
    return tuple(adj)


# -- enumeration -----------------------------------------------------------------


def _enumerate_gl(ring: QuotientRing, n: int):
    residue, red_map = ring.reduce_to(1)
    # invertible matrices over the residue field
    res_gl = [
        m
        for m in itertools.product(range(residue.size), repeat=n * n)
        if residue.is_unit(_mat_det(residue, n, m))
    ]
    if ring.r == 1:
        return res_gl
    # lift through the congruence kernel: coordinate section + ideal tails entrywise
    section = {}
    for ri in range(residue.size):
        coords = residue.elements[ri]
        lift = tuple(coords) + (0,) * (len(ring._ranges) - len(coords))
        section[ri] = ring.index[lift]
    ideal = ring.maximal_ideal()
    add = ring.add
    out = []
    for m in res_gl:
        base = tuple(section[x] for x in m)
        for tail in itertools.product(ideal, repeat=n * n):
            out.append(tuple(add(b, t) for b, t in zip(base, tail)))
    return out


def _enumerate_upper(ring: QuotientRing, n: int, diagonal: str):
    """diagonal: 'one' (unitriangular), 'unit' (Borel)."""
    strict = n * (n - 1) // 2
    diag_choices = (
        [(ring.one,) * n]
        if diagonal == "one"
        else list(itertools.product(list(ring.units()), repeat=n))
    )
    out = []
    for diag in diag_choices:
        for uppers in itertools.product(range(ring.size), repeat=strict):
            m = [[ring.zero] * n for _ in range(n)]
            for i in range(n):
                m[i][i] = diag[i]
            k = 0
            for i in range(n):
                for j in range(i + 1, n):
                    m[i][j] = uppers[k]
                    k += 1
            out.append(tuple(x for row in m for x in row))
    return out


_GROUP_CACHE: dict[tuple, FiniteMatrixGroup] = {}


def build_group(
    scheme: GroupScheme, spec: RingSpec, budget: int = DEFAULT_BUDGET
) -> FiniteMatrixGroup:
    """Enumerate the group, with constant-time membership via canonical hashing."""
    cached = _GROUP_CACHE.get((scheme, spec))
    if cached is not None:
        return cached
    predicted = predicted_order(scheme, spec)
    if predicted > budget:
        raise BudgetExceededError(scheme, spec, predicted, budget)
    ring = make_ring(spec)
    n = scheme.n
    fam = scheme.family
    if fam == "GL":
        mats = _enumerate_gl(ring, n)
    elif fam == "SL":
        mats = [
            m for m in _enumerate_gl(ring, n) if _mat_det(ring, n, m) == ring.one
        ]
    elif fam == "U":
        mats = _enumerate_upper(ring, n, "one")
    elif fam == "B":
        mats = _enumerate_upper(ring, n, "unit")
    else:  # T
        mats = [
            tuple(
                diag[i] if i == j else ring.zero
                for i in range(n)
                for j in range(n)
            )
            for diag in itertools.product(list(ring.units()), repeat=n)
        ]
    group = FiniteMatrixGroup(scheme, ring, mats)
    assert group.order == predicted, (group.order, predicted)
    _GROUP_CACHE[(scheme, spec)] = group
    return group


# -- conjugacy classes -------------------------------------------------------------


@dataclass
class ConjugacyClassData:
    """Conjugation orbits with deterministic ordering by least element ordinal."""

    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    inverse_class: tuple[int, ...]

    @property
    def n_classes(self) -> int:
        return len(self.representatives)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClassData:
    cached = getattr(group, "_classes", None)
    if cached is not None:
        return cached
    gens = group.generators()
    gen_invs = [group.inv(g) for g in gens]
    class_of = [-1] * group.order
    reps: list[int] = []
    sizes: list[int] = []
    for seed in range(group.order):
        if class_of[seed] >= 0:
            continue
        cid = len(reps)
        reps.append(seed)
        orbit = [seed]
        class_of[seed] = cid
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, gen_invs):
                    y = group.mul(gi, group.mul(x, g))
                    if class_of[y] < 0:
                        class_of[y] = cid
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        sizes.append(len(orbit))
    inverse_class = tuple(class_of[group.inv(r)] for r in reps)
    data = ConjugacyClassData(tuple(class_of), tuple(reps), tuple(sizes), inverse_class)
    assert sum(sizes) == group.order
    group._classes = data
    return data


def center(group: FiniteGroup) -> list[int]:
    gens = group.generators()
    return [
        x
        for x in range(group.order)
        if all(group.mul(x, g) == group.mul(g, x) for g in gens)
    ]


def congruence_kernel(group: FiniteMatrixGroup, i: int) -> SubgroupView:
    """K^i = ker(G(o_r) -> G(o_i)), as an enumerated subgroup."""
    ring = group.ring
    if not 1 <= i <= ring.r:
        raise ValueError(f"congruence level must be in 1..{ring.r}")
    target, red = ring.reduce_to(i)
    n = group.n
    id_img = tuple(red[x] for x in _identity_matrix(ring, n))
    members = [
        k
        for k, m in enumerate(group.elements)
        if tuple(red[x] for x in m) == id_img
    ]
    view = SubgroupView(group, members)
    if group.scheme.family == "GL":
        q, r = ring.q, ring.r
        assert view.order == q ** ((r - i) * n * n)
    return view


def quotient_group(group: FiniteGroup, normal) -> QuotientGroup:
    """Coset group; raises NotNormalError with a witness conjugator if not normal."""
    ordinals = normal.ordinals if isinstance(normal, SubgroupView) else tuple(sorted(normal))
    members = set(ordinals)
    for g in group.generators():
        gi = group.inv(g)
        for x in ordinals:
            if group.mul(gi, group.mul(x, g)) not in members:
                raise NotNormalError(g, x)
    return QuotientGroup(group, ordinals)
