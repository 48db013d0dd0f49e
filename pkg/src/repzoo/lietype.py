"""Type-A root data, twisted Weyl groups, and generic degree polynomials.

The finite-group order of GL_n / SL_n over F_q (split or unitary-twisted) is
assembled from the standard factorization

    |G^F| = |center^F| * q^N * prod_J (q^|J| - 1) * sum_{w in W^F} q^l(w),

with J running over the twist's orbits on simple roots.  Twisted torus orders
are lattice determinants |det(q * w tau - 1)|, and the generic degree f_w is
the exact quotient of the q'-part of the order by the torus order.  The
candidate set collects (1/|W|) sum a_w f_w over the integer box |a_w| <=
floor(|W|^(3/2)), deduplicated and pruned to polynomials positive for large q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .intlinalg import mat_mul, mat_vec, smith_normal_form, unimodular_inverse
from .groups import GroupScheme
from .polynomials import RationalPoly

_TWISTS = ("split", "unitary")


class UnsupportedTwistError(ValueError):
    pass


class CandidateBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class RootDatum:
    """Type-A root datum for GL(n) (rank n) or SL(n) (rank n-1)."""

    family: str
    n: int
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]

    @property
    def n_positive(self) -> int:
        return self.n * (self.n - 1) // 2

    def cartan_pairing(self, i: int, j: int) -> int:
        return sum(a * b for a, b in zip(self.simple_roots[i], self.simple_coroots[j]))


def root_datum(family: str, n: int) -> RootDatum:
    if family == "GL":
        roots = []
        coroots = []
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            roots.append(tuple(v))
            coroots.append(tuple(v))
        return RootDatum("GL", n, n, tuple(roots), tuple(coroots))
    if family == "SL":
        # X = Z^n / Z(1,..,1) with basis the images of e_1..e_{n-1}
        roots = []
        coroots = []
        for i in range(n - 1):
            lift = [0] * n
            lift[i], lift[i + 1] = 1, -1
            roots.append(_project_sl(lift, n))
            # coroot e_i - e_{i+1} acts as a functional on the quotient
            func = [0] * (n - 1)
            if i < n - 1:
                func[i] = 1
            if i + 1 < n - 1:
                func[i + 1] = -1
            coroots.append(tuple(func))
        return RootDatum("SL", n, n - 1, tuple(roots), tuple(coroots))
    raise ValueError(f"root datum only for GL/SL, got {family!r}")


def _project_sl(vec: list[int], n: int) -> tuple[int, ...]:
    """Coordinates of vec mod (1,..,1) in the basis of images of e_1..e_{n-1}."""
    return tuple(vec[i] - vec[n - 1] for i in range(n - 1))


def _perm_matrix_gl(perm: tuple[int, ...]) -> list[list[int]]:
    n = len(perm)
    m = [[0] * n for _ in range(n)]
    for j in range(n):
        m[perm[j]][j] = 1
    return m


def _tau_matrix_gl(n: int) -> list[list[int]]:
    """Unitary twist on X(T) = Z^n: e_j -> -e_{n+1-j}."""
    m = [[0] * n for _ in range(n)]
    for j in range(n):
        m[n - 1 - j][j] = -1
    return m


def _push_to_sl(mat_gl: list[list[int]], n: int) -> list[list[int]]:
    """Induced matrix on Z^n/(1,..,1) in the e_1..e_{n-1} image basis."""
    cols = []
    for j in range(n - 1):
        lift = [0] * n
        lift[j] = 1
        img = mat_vec(mat_gl, lift)
        cols.append(_project_sl(img, n))
    return [[cols[c][r] for c in range(n - 1)] for r in range(n - 1)]


@dataclass
class TwistedWeylGroup:
    """Weyl group of a type-A datum with an optional graph twist."""

    datum: RootDatum
    twist: str
    perms: tuple[tuple[int, ...], ...]          # all of W as permutations of 1..n
    matrices: tuple[tuple[tuple[int, ...], ...], ...]  # action on X
    lengths: tuple[int, ...]
    tau: tuple[tuple[int, ...], ...]            # lattice automorphism
    fixed: tuple[int, ...]                      # indices of W^F = {w : w tau = tau w}
    root_orbits: tuple[tuple[int, ...], ...]    # tau-orbits of simple roots

    @property
    def order(self) -> int:
        return len(self.perms)

    def length_sum_poly(self, fixed_only: bool = True) -> RationalPoly:
        idx = self.fixed if fixed_only else range(self.order)
        coeffs: dict[int, int] = {}
        for i in idx:
            coeffs[self.lengths[i]] = coeffs.get(self.lengths[i], 0) + 1
        top = max(coeffs)
        return RationalPoly([coeffs.get(k, 0) for k in range(top + 1)])


def _inversions(perm: tuple[int, ...]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def weyl_group(datum: RootDatum, twist: str = "split") -> TwistedWeylGroup:
    """Full Weyl group S_n with exact lengths and the twist's tau-action."""
    if twist not in _TWISTS:
        raise UnsupportedTwistError(f"twist must be one of {_TWISTS}, got {twist!r}")
    n = datum.n
    perms = tuple(itertools.permutations(range(n)))
    if datum.family == "GL":
        mats = tuple(
            tuple(tuple(row) for row in _perm_matrix_gl(p)) for p in perms
        )
        tau_m = (
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            if twist == "split"
            else _tau_matrix_gl(n)
        )
    else:
        mats = tuple(
            tuple(tuple(row) for row in _push_to_sl(_perm_matrix_gl(p), n))
            for p in perms
        )
        tau_m = (
            [[1 if i == j else 0 for j in range(n - 1)] for i in range(n - 1)]
            if twist == "split"
            else _push_to_sl(_tau_matrix_gl(n), n)
        )
    tau = tuple(tuple(row) for row in tau_m)
    lengths = tuple(_inversions(p) for p in perms)
    fixed = tuple(
        i
        for i, m in enumerate(mats)
        if mat_mul([list(r) for r in m], tau_m) == mat_mul(tau_m, [list(r) for r in m])
    )
    orbits = _simple_root_orbits(datum, tau_m)
    return TwistedWeylGroup(datum, twist, perms, mats, lengths, tau, fixed, orbits)


def _simple_root_orbits(datum: RootDatum, tau_m) -> tuple[tuple[int, ...], ...]:
    """tau permutes simple roots; return its orbits (split: all singletons)."""
    k = len(datum.simple_roots)
    images = []
    for i in range(k):
        img = tuple(mat_vec(tau_m, list(datum.simple_roots[i])))
        # tau sends alpha_i to a simple root
        j = next(
            (t for t in range(k) if datum.simple_roots[t] == img), None
        )
        if j is None:
            raise AssertionError("twist does not permute the simple roots")
        images.append(j)
    seen, orbits = set(), []
    for i in range(k):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        j = images[i]
        while j not in seen:
            orb.append(j)
            seen.add(j)
            j = images[j]
        orbits.append(tuple(orb))
    return tuple(orbits)


# -- polynomial ingredients -------------------------------------------------------


def _det_q_matrix(mat, scale_q: bool) -> RationalPoly:
    """det over RationalPoly entries of (q*mat - I); cofactor expansion."""
    n = len(mat)
    x = RationalPoly.x()
    entries = [
        [
            (x * mat[i][j] if scale_q else RationalPoly.constant(mat[i][j]))
            - (1 if i == j else 0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _poly_det(entries)


def _poly_det(entries: list[list[RationalPoly]]) -> RationalPoly:
    n = len(entries)
    if n == 0:
        return RationalPoly.one()
    if n == 1:
        return entries[0][0]
    det = RationalPoly.zero()
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [
            [entries[r][c] for c in range(n) if c != j] for r in range(1, n)
        ]
        term = entries[0][j] * _poly_det(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def _positive_normalize(p: RationalPoly) -> RationalPoly:
    if p.leading < 0:
        return -p
    return p


def _center_tau_matrix(datum: RootDatum, tau) -> list[list[int]]:
    """tau acting on X / (saturated root sublattice) = X(Z^o)."""
    rank = datum.rank
    roots = datum.simple_roots
    if not roots:
        return [list(r) for r in tau]
    m = [[roots[c][r] for c in range(len(roots))] for r in range(rank)]
    u, d, _v = smith_normal_form(m)
    s = sum(1 for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0)
    if rank == s:
        return []
    uinv = unimodular_inverse(u)
    # quotient coordinates: last rank-s coords of U x;  tau_bar = (U tau U^{-1}) block
    ut = mat_mul(mat_mul(u, [list(r) for r in tau]), uinv)
    for i in range(s, rank):
        for j in range(s):
            assert ut[i][j] == 0, "twist does not preserve the root sublattice"
    return [[ut[i][j] for j in range(s, rank)] for i in range(s, rank)]


def center_order_poly(datum: RootDatum, twist: str = "split") -> RationalPoly:
    """|(Z^o)^F| as a polynomial in q."""
    w = weyl_group(datum, twist)
    tbar = _center_tau_matrix(datum, w.tau)
    if not tbar:
        return RationalPoly.one()
    return _positive_normalize(_det_q_matrix(tbar, scale_q=True))


def order_polynomial_parts(
    datum: RootDatum, twist: str = "split"
) -> tuple[RationalPoly, int]:
    """(p'-part polynomial, N) with |G^F| = p'-part * q^N."""
    w = weyl_group(datum, twist)
    zc = center_order_poly(datum, twist)
    x = RationalPoly.x()
    orbit_factor = RationalPoly.one()
    for orb in w.root_orbits:
        orbit_factor = orbit_factor * (x ** len(orb) - 1)
    return zc * orbit_factor * w.length_sum_poly(fixed_only=True), datum.n_positive


def order_polynomial(datum: RootDatum, twist: str = "split") -> RationalPoly:
    """|G^F| as an exact polynomial in q."""
    part, n_pos = order_polynomial_parts(datum, twist)
    return part * RationalPoly.monomial(n_pos)


def torus_order(datum: RootDatum, twist: str, w_index: int) -> RationalPoly:
    """|T_0[w]| = |det(q * (w tau) - 1)| on the character lattice."""
    w = weyl_group(datum, twist)
    m = mat_mul([list(r) for r in w.matrices[w_index]], [list(r) for r in w.tau])
    if not m:
        return RationalPoly.one()
    return _positive_normalize(_det_q_matrix(m, scale_q=True))


def dl_degree(datum: RootDatum, twist: str, w_index: int) -> RationalPoly:
    """Generic degree f_w: the q'-part of [G^F : T_0[w]], positive normalization."""
    part, _ = order_polynomial_parts(datum, twist)
    t = torus_order(datum, twist, w_index)
    return _positive_normalize(part.exact_div(t))


# -- candidate set ----------------------------------------------------------------


@dataclass
class CandidateSet:
    """Polynomials (1/|W|) sum_w a_w f_w with |a_w| <= floor(|W|^{3/2})."""

    polynomials: tuple[RationalPoly, ...]
    bound: int
    weyl_order: int
    provenance: dict[RationalPoly, tuple[int, ...]] = field(default_factory=dict)

    def values_at(self, q: int) -> set[Fraction]:
        return {p(q) for p in self.polynomials}

    def to_json(self) -> dict:
        return {
            "polys": [p.to_json() for p in sorted(self.polynomials, key=lambda p: p.coeffs)],
            "bound": self.bound,
            "weyl_order": self.weyl_order,
        }


def candidate_set(
    datum: RootDatum,
    twist: str = "split",
    max_degree_filter: int | None = None,
    enumeration_budget: int = 2 * 10**6,
    positivity_probe: int = 2**20,
) -> CandidateSet:
    """Enumerate the coefficient box, grouped by equal f_w so the box stays small.

    Grouping by the distinct generic degrees is exact: a_w enters only through
    sum a_w f_w, so per distinct polynomial f only the aggregate coefficient in
    [-mult*B, mult*B] matters.  Provenance records one representative a_w vector.
    """
    w = weyl_group(datum, twist)
    bound = math.isqrt(w.order**3)
    fs: dict[RationalPoly, list[int]] = {}
    for wi in range(w.order):
        f = dl_degree(datum, twist, wi)
        fs.setdefault(f, []).append(wi)
    distinct = sorted(fs.items(), key=lambda kv: kv[0].coeffs)
    ranges = []
    total = 1
    for f, ws in distinct:
        lo, hi = -len(ws) * bound, len(ws) * bound
        ranges.append(range(lo, hi + 1))
        total *= hi - lo + 1
    if total > enumeration_budget:
        raise CandidateBudgetError(
            f"coefficient box has {total} points; pass max_degree_filter or raise the budget"
        )
    inv_w = Fraction(1, w.order)
    polys: dict[RationalPoly, tuple[int, ...]] = {}
    for aggs in itertools.product(*ranges):
        combo = RationalPoly.zero()
        for (f, _ws), a in zip(distinct, aggs):
            if a:
                combo = combo + f * a
        combo = combo * inv_w
        if combo.is_zero():
            continue
        if max_degree_filter is not None and combo.degree > max_degree_filter:
            continue
        if combo(positivity_probe) <= 0:
            continue
        if combo not in polys:
            # spread the aggregate over the class members within |a_w| <= bound
            vec = [0] * w.order
            for (f, ws), a in zip(distinct, aggs):
                rem = a
                for wi in ws:
                    take = max(-bound, min(bound, rem))
                    vec[wi] = take
                    rem -= take
                assert rem == 0
            polys[combo] = tuple(vec)
    return CandidateSet(tuple(sorted(polys, key=lambda p: p.coeffs)), bound, w.order, polys)


@dataclass
class ContainmentReport:
    scheme: str
    twist: str
    results: tuple[tuple[int, bool, tuple[int, ...]], ...]  # (q, contained, missing degrees)
    witnesses: dict[int, dict[int, tuple[int, ...]]]

    @property
    def all_contained(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "twist": self.twist,
            "results": [
                {"q": q, "contained": ok, "missing": list(miss)}
                for q, ok, miss in self.results
            ],
        }


def verify_containment(
    scheme: GroupScheme, twist: str, q_list, budget: int = 10**7
) -> ContainmentReport:
    """Check dimirr(G(F_q)) against candidate evaluations at each listed q."""
    from .characters import character_degrees
    from .groups import build_group
    from .localring import RingSpec

    if twist != "split":
        raise UnsupportedTwistError(
            "containment verification runs on split forms (the scheme menu has no unitary schemes)"
        )
    datum = root_datum(scheme.family, scheme.n)
    cands = candidate_set(datum, twist)
    results = []
    witnesses: dict[int, dict[int, tuple[int, ...]]] = {}
    for q in q_list:
        p, f = _prime_power_split(q)
        group = build_group(scheme, RingSpec("unramified", p, f, 1), budget)
        degrees = character_degrees(group).degrees_set()
        values = {}
        for poly in cands.polynomials:
            values.setdefault(poly(q), poly)
        missing = tuple(sorted(d for d in degrees if Fraction(d) not in values))
        ok = not missing
        witnesses[q] = {
            d: cands.provenance[values[Fraction(d)]]
            for d in degrees
            if Fraction(d) in values
        }
        results.append((q, ok, missing))
    return ContainmentReport(scheme.label(), twist, tuple(results), witnesses)


def _prime_power_split(q: int) -> tuple[int, int]:
    p = min(f for f in range(2, q + 1) if q % f == 0)
    f = 0
    n = q
    while n > 1:
        if n % p:
            raise ValueError(f"{q} is not a prime power")
        n //= p
        f += 1
    return p, f
