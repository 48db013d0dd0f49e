"""Character degrees through a normal abelian subgroup: orbits, stabilizers, induction.

Given N normal abelian in G, Irr(G) decomposes over G-orbits of the dual of N;
above an orbit with representative psi and stabilizer S, every irreducible is
induced from Irr(S | psi) and its dimension is [G:S] times the dimension of a
member of Irr(S | psi).  Irr(S | psi) itself is computed honestly (no cocycle
triviality assumed): all its members kill ker psi, so they live in the quotient
S/ker(psi), where the image of N is central and cyclic; they are exactly the
rows of that quotient's character table whose central character on N/ker(psi)
is faithful.

A mod-ell character table determines each row only up to a Galois twist, so a
single faithful character cannot be matched against a single row.  Orbits are
therefore grouped into Galois-power classes (psi ~ psi^u, u coprime to exp N):
within a class, stabilizers and dimension data agree, the faithful rows
aggregate Irr(S | psi^u) over all phi(M) kernel-preserving twists, and dividing
the row multiset by phi(M) recovers the per-orbit dimension data exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .characters import DegreeMultiset, character_degrees, character_table_modp
from .groups import (
    FiniteGroup,
    FiniteMatrixGroup,
    QuotientGroup,
    SubgroupView,
    center,
    congruence_kernel,
    conjugacy_classes,
    quotient_group,
)
from .intlinalg import smith_normal_form, unimodular_inverse


class NotAbelianNormalError(ValueError):
    pass


# -- dual group of a finite abelian group -------------------------------------------


class DualGroup:
    """Characters of an abelian subgroup as exponent vectors over a computed basis.

    The basis realizes N as a direct product of cyclic groups (Smith normal form
    of the relation lattice of a greedy polycyclic generating sequence); the
    decomposition is verified by exhaustive re-enumeration on construction.
    """

    def __init__(self, n_view: SubgroupView):
        if not n_view.is_abelian():
            raise NotAbelianNormalError("dual_group requires an abelian group")
        self.group = n_view
        self.order = n_view.order
        self.basis, self.orders = self._abelian_basis(n_view)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        self.dlog = self._build_dlog()
        self._weights = tuple(self.exponent // n for n in self.orders)

    @staticmethod
    def _abelian_basis(n_view: SubgroupView):
        if n_view.order == 1:
            return (), ()
        # greedy polycyclic generators with relative orders
        gens: list[int] = []
        rel_orders: list[int] = []
        closure = {n_view.identity}
        for x in range(n_view.order):
            if x in closure:
                continue
            power, rel = x, 1
            while power not in closure:
                power = n_view.mul(power, x)
                rel += 1
            new = set()
            acc = n_view.identity
            for _ in range(rel):
                new.update(n_view.mul(h, acc) for h in closure)
                acc = n_view.mul(acc, x)
            gens.append(x)
            rel_orders.append(rel)
            closure = new
            if len(closure) == n_view.order:
                break
        m = len(gens)
        # dlog in the polycyclic normal form (mixed radix over relative orders)
        dlog_pc: dict[int, tuple[int, ...]] = {}
        for exps in itertools.product(*[range(r) for r in rel_orders]):
            elem = n_view.identity
            for g, e in zip(gens, exps):
                for _ in range(e):
                    elem = n_view.mul(elem, g)
            dlog_pc.setdefault(elem, exps)
        assert len(dlog_pc) == n_view.order
        # relation lattice columns: r_i e_i - dlog(g_i^{r_i})
        cols = []
        for i, (g, r) in enumerate(zip(gens, rel_orders)):
            power = n_view.identity
            for _ in range(r):
                power = n_view.mul(power, g)
            rel_vec = list(dlog_pc[power])
            col = [-rel_vec[j] for j in range(m)]
            col[i] += r
            cols.append(col)
        relmat = [[cols[c][rw] for c in range(m)] for rw in range(m)]
        u, d, _v = smith_normal_form(relmat)
        uinv = unimodular_inverse(u)
        basis, orders = [], []
        for j in range(m):
            dj = d[j][j]
            if dj == 1:
                continue
            h = n_view.identity
            for i in range(m):
                h = n_view.mul(h, _power(n_view, gens[i], uinv[i][j]))
            basis.append(h)
            orders.append(dj)
        return tuple(basis), tuple(orders)

    def _build_dlog(self) -> dict[int, tuple[int, ...]]:
        dlog: dict[int, tuple[int, ...]] = {}
        for exps in itertools.product(*[range(n) for n in self.orders]):
            elem = self.group.identity
            for b, e in zip(self.basis, exps):
                elem = self.group.mul(elem, _power(self.group, b, e))
            assert elem not in dlog, "basis is not a direct decomposition"
            dlog[elem] = exps
        assert len(dlog) == self.order
        return dlog

    # -- characters -----------------------------------------------------------

    def characters(self):
        """All |N| characters as exponent tuples, lexicographic order."""
        return itertools.product(*[range(n) for n in self.orders])

    def phase_num(self, chi: tuple[int, ...], local_elem: int) -> int:
        """Character value as an exponent of exp(2 pi i / exponent)."""
        e = self.dlog[local_elem]
        return sum(a * c * w for a, c, w in zip(chi, e, self._weights)) % self.exponent

    def char_order(self, chi: tuple[int, ...]) -> int:
        return math.lcm(
            *(n // math.gcd(a, n) for a, n in zip(chi, self.orders))
        ) if self.orders else 1

    def power(self, chi: tuple[int, ...], u: int) -> tuple[int, ...]:
        return tuple(a * u % n for a, n in zip(chi, self.orders))

    def product(self, chi1, chi2) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(chi1, chi2, self.orders))

    def kernel(self, chi: tuple[int, ...]) -> list[int]:
        """Parent ordinals of ker(chi)."""
        return [
            self.group.ordinals[i]
            for i in range(self.order)
            if self.phase_num(chi, i) == 0
        ]


def _power(group: FiniteGroup, x: int, e: int) -> int:
    if e < 0:
        x, e = group.inv(x), -e
    acc = group.identity
    base = x
    while e:
        if e & 1:
            acc = group.mul(acc, base)
        base = group.mul(base, base)
        e >>= 1
    return acc


def dual_group(n_view: SubgroupView) -> DualGroup:
    """Spec entry point: the full character group of an abelian N."""
    return DualGroup(n_view)


# -- orbits and stabilizers -----------------------------------------------------------


@dataclass
class OrbitRecord:
    representative: tuple[int, ...]
    orbit: tuple[tuple[int, ...], ...]
    orbit_size: int
    stabilizer: tuple[int, ...]  # parent ordinals

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer)


class _DualAction:
    """Conjugation action of G on the dual, bucketed by action on the basis."""

    def __init__(self, group: FiniteGroup, n_view: SubgroupView, dual: DualGroup):
        self.group = group
        self.dual = dual
        self.n_view = n_view
        parent_basis = [n_view.ordinals[b] for b in dual.basis]
        buckets: dict[tuple, list[int]] = {}
        local = n_view.local
        dlog = dual.dlog
        mul = group.mul
        for g in range(group.order):
            gi = group.inv(g)
            key = tuple(
                dlog[local[mul(gi, mul(pb, g))]] for pb in parent_basis
            )
            buckets.setdefault(key, []).append(g)
        self.buckets = buckets

    def apply(self, key, chi):
        """(g.chi)(n) = chi(g^{-1} n g) in exponent coordinates."""
        dual = self.dual
        E = dual.exponent
        out = []
        for j, nj in enumerate(dual.orders):
            p = sum(a * c * w for a, c, w in zip(chi, key[j], dual._weights)) % E
            step = E // nj
            assert p % step == 0, "dual action left the character lattice"
            out.append((p // step) % nj)
        return tuple(out)

    def orbit_of(self, chi):
        return {self.apply(key, chi) for key in self.buckets}

    def stabilizer_of(self, chi) -> tuple[int, ...]:
        fixing = [k for k in self.buckets if self.apply(k, chi) == chi]
        out: list[int] = []
        for k in fixing:
            out.extend(self.buckets[k])
        return tuple(sorted(out))


def orbits_and_stabilizers(
    group: FiniteGroup, n_view: SubgroupView, dual: DualGroup
) -> list[OrbitRecord]:
    """G-orbits on the dual of N with exact stabilizers; orbit-stabilizer asserted."""
    action = _DualAction(group, n_view, dual)
    seen: set[tuple[int, ...]] = set()
    records = []
    stab_cache: dict[frozenset, tuple[int, ...]] = {}
    for chi in dual.characters():
        if chi in seen:
            continue
        orbit = sorted(action.orbit_of(chi))
        seen.update(orbit)
        rep = orbit[0]
        fixing = frozenset(k for k in action.buckets if action.apply(k, rep) == rep)
        stab = stab_cache.get(fixing)
        if stab is None:
            out: list[int] = []
            for k in fixing:
                out.extend(action.buckets[k])
            stab = tuple(sorted(out))
            stab_cache[fixing] = stab
            # N is abelian, so it fixes every character of itself
            assert set(n_view.ordinals) <= set(stab)
        rec = OrbitRecord(rep, tuple(orbit), len(orbit), stab)
        assert rec.orbit_size * rec.stabilizer_order == group.order
        records.append(rec)
    records.sort(key=lambda r: r.representative)
    return records


# -- the Clifford pipeline ---------------------------------------------------------------


@dataclass
class OrbitDims:
    """Per-orbit slice of the report: dims are of Irr(Stab | psi), pre-induction."""

    representative: tuple[int, ...]
    orbit_size: int
    stabilizer_order: int
    dims: tuple[tuple[int, int], ...]  # (degree, multiplicity) in Irr(Stab | psi)
    isotypic: bool
    extension_matches: bool | None

    @property
    def irr_count(self) -> int:
        return sum(m for _, m in self.dims)


@dataclass
class CliffordReport:
    degrees: DegreeMultiset
    orbits: tuple[OrbitDims, ...]
    isotypic_count: int

    def to_json(self) -> dict:
        return {
            "orbits": [
                {
                    "rep": list(o.representative),
                    "orbit_size": o.orbit_size,
                    "stabilizer_order": o.stabilizer_order,
                    "dims": [list(p) for p in o.dims],
                    "isotypic": o.isotypic,
                    "extension_matches": o.extension_matches,
                }
                for o in self.orbits
            ],
            "degrees": self.degrees.to_json(),
            "isotypic_count": self.isotypic_count,
        }


def _is_prime_power(n: int) -> bool:
    if n == 1:
        return True
    p = min(f for f in range(2, n + 1) if n % f == 0)
    while n % p == 0:
        n //= p
    return n == 1


def _faithful_dims(
    s_bar: FiniteGroup, n_bar_labels: list[int], M: int
) -> tuple[tuple[tuple[int, int], ...], bool | None]:
    """Dims of Irr(S|psi) for one faithful psi on the central cyclic image of N.

    Returns (dims multiset, extension observable) where the observable compares
    the count against #Irr(Stab/N), the count a cocycle-free extension would give.
    """
    phi_m = sum(1 for u in range(1, M + 1) if math.gcd(u, M) == 1)
    n_bar_set = set(n_bar_labels)
    assert len(n_bar_set) == M

    if s_bar.is_abelian():
        count = s_bar.order // M
        dims = ((1, count),)
        return dims, True

    classes = conjugacy_classes(s_bar)
    # the image of N must be central: singleton classes
    for nb in n_bar_labels:
        if classes.sizes[classes.class_of[nb]] != 1:
            raise AssertionError("image of N is not central in Stab/ker(psi)")
    # generator of the cyclic image
    gen = next(
        nb for nb in n_bar_labels if s_bar.element_order(nb) == M
    )
    gen_class = classes.class_of[gen]
    table = character_table_modp(s_bar, classes)
    ell = table.ell

    prime_divisors = {f for f in range(2, M + 1) if M % f == 0 and all(f % d for d in range(2, f))}

    def has_order_m(v: int) -> bool:
        if pow(v, M, ell) != 1:
            raise AssertionError("central character value of wrong order")
        return all(pow(v, M // p, ell) != 1 for p in prime_divisors)

    faithful = [
        t for t in range(len(table.degrees)) if has_order_m(table.omega[t][gen_class])
    ]
    # Frobenius bookkeeping: sum of d^2 over rows above all faithful characters
    ssq = sum(table.degrees[t] ** 2 for t in faithful)
    assert ssq == phi_m * (s_bar.order // M), (ssq, phi_m, s_bar.order, M)

    counts: dict[int, int] = {}
    for t in faithful:
        d = table.degrees[t]
        counts[d] = counts.get(d, 0) + 1
    dims = []
    for d in sorted(counts):
        assert counts[d] % phi_m == 0, "faithful rows not balanced across twists"
        dims.append((d, counts[d] // phi_m))
    dims = tuple(dims)

    # extension observable: does the count match what a cocycle-free
    # extension of psi to the stabilizer would force?
    nq = QuotientGroup(s_bar, n_bar_labels)
    predicted = conjugacy_classes(nq).n_classes
    matches = sum(m for _, m in dims) == predicted
    return dims, matches


class _Pipeline:
    """Shared state for clifford_dimirr / irr_above on a fixed (G, N)."""

    def __init__(self, group: FiniteGroup, n_view: SubgroupView):
        if not n_view.is_abelian():
            raise NotAbelianNormalError("N must be abelian")
        if not _is_prime_power(n_view.order):
            raise NotAbelianNormalError("N must be a p-group")
        members = set(n_view.ordinals)
        for g in group.generators():
            gi = group.inv(g)
            for x in n_view.ordinals:
                if group.mul(gi, group.mul(x, g)) not in members:
                    raise NotAbelianNormalError("N is not normal in G")
        self.group = group
        self.n_view = n_view
        self.dual = DualGroup(n_view)
        self.records = orbits_and_stabilizers(group, n_view, self.dual)
        self.orbit_id = {r.representative: i for i, r in enumerate(self.records)}
        self.chi_to_orbit = {}
        for i, r in enumerate(self.records):
            for chi in r.orbit:
                self.chi_to_orbit[chi] = i
        self._class_of_orbit, self._classes = self._galois_classes()
        self._dims_cache: dict[int, tuple] = {}

    def _galois_classes(self):
        E = self.dual.exponent
        units = [u for u in range(1, E + 1) if math.gcd(u, E) == 1]
        parent = list(range(len(self.records)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, rec in enumerate(self.records):
            for u in units:
                j = self.chi_to_orbit[self.dual.power(rec.representative, u)]
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        classes: dict[int, list[int]] = {}
        for i in range(len(self.records)):
            classes.setdefault(find(i), []).append(i)
        return {i: find(i) for i in range(len(self.records))}, classes

    def dims_for_class(self, class_id: int):
        cached = self._dims_cache.get(class_id)
        if cached is not None:
            return cached
        rep_rec = self.records[class_id]
        psi = rep_rec.representative
        M = self.dual.char_order(psi)
        if M == 1:
            # trivial character: Irr(G | 1) = Irr(G/N)
            if self.n_view.order == 1:
                dm = character_degrees(self.group)
            else:
                dm = character_degrees(quotient_group(self.group, self.n_view.ordinals))
            result = (dm.entries, True)
        else:
            s_view = SubgroupView(self.group, rep_rec.stabilizer)
            kernel_parent = self.dual.kernel(psi)
            kernel_local = [s_view.local[k] for k in kernel_parent]
            s_bar = QuotientGroup(s_view, kernel_local)
            n_bar = sorted(
                {s_bar.label[s_view.local[n]] for n in self.n_view.ordinals}
            )
            result = _faithful_dims(s_bar, n_bar, M)
        self._dims_cache[class_id] = result
        return result

    def orbit_dims(self, orbit_index: int) -> OrbitDims:
        rec = self.records[orbit_index]
        dims, ext = self.dims_for_class(self._class_of_orbit[orbit_index])
        return OrbitDims(
            rec.representative,
            rec.orbit_size,
            rec.stabilizer_order,
            dims,
            rec.orbit_size == 1,
            ext,
        )


def _as_view(group: FiniteGroup, n) -> SubgroupView:
    if isinstance(n, SubgroupView):
        return n
    return SubgroupView(group, n)


def irr_above(group: FiniteGroup, n, psi: tuple[int, ...]) -> list[int]:
    """Dims of Irr(G | psi): each member of Irr(Stab | psi) induced up by [G:Stab]."""
    pipe = _Pipeline(group, _as_view(group, n))
    idx = pipe.chi_to_orbit[tuple(psi)]
    od = pipe.orbit_dims(idx)
    out = []
    for d, m in od.dims:
        out.extend([d * od.orbit_size] * m)
    return sorted(out)


def clifford_dimirr(group: FiniteGroup, n) -> CliffordReport:
    """Assemble dimirr(G) orbit by orbit from the normal abelian p-subgroup N."""
    pipe = _Pipeline(group, _as_view(group, n))
    orbit_slices = [pipe.orbit_dims(i) for i in range(len(pipe.records))]
    pairs = []
    iso_count = 0
    total_irr = 0
    for od in orbit_slices:
        total_irr += od.irr_count
        if od.isotypic:
            iso_count += od.irr_count
        for d, m in od.dims:
            pairs.append((d * od.orbit_size, m))
    degrees = DegreeMultiset.from_pairs(pairs)
    degrees.validate(group.order)
    assert degrees.total_count == total_irr
    return CliffordReport(degrees, tuple(orbit_slices), iso_count)


def default_normal_subgroup(group: FiniteMatrixGroup) -> SubgroupView:
    """The pipeline's N: abelian congruence kernel at level ceil(r/2), or the
    center for unipotent-type groups at level 1, or trivial."""
    ring = group.ring
    if ring.r >= 2:
        return congruence_kernel(group, math.ceil(ring.r / 2))
    order = group.order
    p = ring.p
    n = order
    while n > 1 and n % p == 0:
        n //= p
    if n == 1 and order > 1:
        return SubgroupView(group, center(group))
    return SubgroupView(group, [group.identity])
