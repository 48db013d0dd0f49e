"""Exact irreducible character degrees via class algebras mod a large prime.

The degree multiset of Irr(G) is computed from the class-multiplication-
coefficient matrices: their simultaneous eigenvectors over Z/ell (ell prime,
ell = 1 mod exp(G), ell > 2 sqrt(|G|)) recover the algebra homomorphisms
omega_t, from which degrees follow by the column orthogonality relation and
lift uniquely below ell/2.  Everything is integer arithmetic; the structural
identities (sum of squares, class count, divisibility) are asserted on every
output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import ConjugacyClassData, FiniteGroup, conjugacy_classes


class ModulusSearchError(RuntimeError):
    """No usable prime ell below the configured bound."""


class NonAbelianError(ValueError):
    """abelian_degrees called on a non-abelian group."""


@dataclass(frozen=True)
class DegreeMultiset:
    """Sorted (degree, multiplicity) pairs for Irr(G)."""

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def from_degrees(cls, degrees) -> "DegreeMultiset":
        counts: dict[int, int] = {}
        for d in degrees:
            counts[d] = counts.get(d, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_pairs(cls, pairs) -> "DegreeMultiset":
        counts: dict[int, int] = {}
        for d, m in pairs:
            if m:
                counts[d] = counts.get(d, 0) + m
        return cls(tuple(sorted(counts.items())))

    @property
    def total_count(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def sum_of_squares(self) -> int:
        return sum(m * d * d for d, m in self.entries)

    def degrees_set(self) -> set[int]:
        return {d for d, _ in self.entries}

    def validate(self, order: int, n_classes: int | None = None) -> None:
        """Regular-representation identity, count identity, degree divisibility."""
        assert self.sum_of_squares == order, (self.sum_of_squares, order)
        if n_classes is not None:
            assert self.total_count == n_classes, (self.total_count, n_classes)
        for d, _ in self.entries:
            assert order % d == 0, f"degree {d} does not divide |G|={order}"

    def to_json(self) -> list[list[int]]:
        return [[d, m] for d, m in self.entries]

    @classmethod
    def from_json(cls, data) -> "DegreeMultiset":
        return cls(tuple((int(d), int(m)) for d, m in data))


# -- Z/ell linear algebra ----------------------------------------------------------


def _rref(rows: list[list[int]], ell: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce in place over Z/ell; returns (rows, pivot column list)."""
    rows = [r[:] for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % ell), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, ell)
        rows[rank] = [x * inv % ell for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % ell:
                c = rows[r][col]
                rows[r] = [(x - c * y) % ell for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _nullspace(mat: list[list[int]], ell: int) -> list[list[int]]:
    """Basis of the right nullspace of mat over Z/ell."""
    n = len(mat[0])
    rows, pivots = _rref(mat, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % ell
        basis.append(v)
    return basis


def _charpoly(a: list[list[int]], ell: int) -> list[int]:
    """Characteristic polynomial det(xI - a) over Z/ell (Hessenberg reduction)."""
    n = len(a)
    h = [[x % ell for x in row] for row in a]
    # reduce to upper Hessenberg by similarity transforms
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if h[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            h[col + 1], h[piv] = h[piv], h[col + 1]
            for row in h:
                row[col + 1], row[piv] = row[piv], row[col + 1]
        inv = pow(h[col + 1][col], -1, ell)
        for r in range(col + 2, n):
            if h[r][col]:
                c = h[r][col] * inv % ell
                h[r] = [(x - c * y) % ell for x, y in zip(h[r], h[col + 1])]
                for row in h:
                    row[col + 1] = (row[col + 1] + c * row[r]) % ell
    # p_m(x) = char poly of leading m x m block (Cohen, Alg. 2.2.9)
    polys = [[1]]
    for m in range(1, n + 1):
        # (x - h[m-1][m-1]) * p_{m-1}
        prev = polys[m - 1]
        cur = [0] + prev[:]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - h[m - 1][m - 1] * c) % ell
        cur = [c % ell for c in cur]
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * h[i][i - 1] % ell
            coef = h[i - 1][m - 1] * prod % ell
            if coef:
                pim1 = polys[i - 1]
                for j, c in enumerate(pim1):
                    cur[j] = (cur[j] - coef * c) % ell
        polys.append(cur)
    return polys[n]


def _poly_eval(p: list[int], x: int, ell: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % ell
    return acc


def _poly_roots(p: list[int], ell: int) -> list[int]:
    """Distinct roots in Z/ell, by gcd with x^ell - x then scan."""
    g = _modpoly_gcd(p, _xq_minus_x(p, ell), ell)
    target = len(g) - 1
    roots = []
    if target == 0:
        return roots
    for x in range(ell):
        if _poly_eval(g, x, ell) == 0:
            roots.append(x)
            if len(roots) == target:
                break
    return roots


def _xq_minus_x(mod: list[int], ell: int) -> list[int]:
    """x^ell - x reduced mod the polynomial `mod` over Z/ell."""
    base = [0, 1]
    result = [1]
    n = ell
    while n:
        if n & 1:
            result = _modpoly_mod(_modpoly_mul(result, base, ell), mod, ell)
        base = _modpoly_mod(_modpoly_mul(base, base, ell), mod, ell)
        n >>= 1
    out = result[:]
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % ell
    while out and out[-1] == 0:
        out.pop()
    return out


def _modpoly_mul(a, b, ell):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % ell
    return out


def _modpoly_mod(a, m, ell):
    a = [x % ell for x in a]
    dm = len(m) - 1
    inv = pow(m[-1], -1, ell)
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] * inv % ell
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * m[j]) % ell
    while a and a[-1] == 0:
        a.pop()
    return a


def _modpoly_gcd(a, b, ell):
    a = [x % ell for x in a]
    b = [x % ell for x in b]
    while b and any(b):
        a, b = b, _modpoly_mod(a, b, ell)
    while a and a[-1] == 0:
        a.pop()
    if a:
        inv = pow(a[-1], -1, ell)
        a = [x * inv % ell for x in a]
    return a


def _sqrt_mod(a: int, ell: int) -> int:
    """Tonelli-Shanks square root mod an odd prime (deterministic scan for a non-residue)."""
    a %= ell
    if a == 0:
        return 0
    assert pow(a, (ell - 1) // 2, ell) == 1, "not a quadratic residue"
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, ell) if pow(z, (ell - 1) // 2, ell) == ell - 1)
    m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        m, c = i, b * b % ell
        t, r = t * c % ell, r * b % ell
    return r


def _is_prime(n: int) -> bool:
    from .localring import is_prime

    return is_prime(n)


# -- the mod-ell table ---------------------------------------------------------------


@dataclass
class CharacterTableModP:
    """Internal Dixon data: omega rows (class-algebra homs) and lifted degrees."""

    ell: int
    degrees: tuple[int, ...]
    omega: tuple[tuple[int, ...], ...]  # omega[t][j] in Z/ell
    classes: ConjugacyClassData

    def char_value(self, t: int, j: int) -> int:
        """chi_t(g_j) mod ell."""
        inv_size = pow(self.classes.sizes[j], -1, self.ell)
        return self.degrees[t] * self.omega[t][j] * inv_size % self.ell


def choose_ell(order: int, exponent: int, bound: int = 10**7) -> int:
    """Smallest prime ell = 1 mod exp(G) with ell^2 > 4|G|."""
    ell = exponent + 1
    while ell <= bound:
        if ell * ell > 4 * order and _is_prime(ell):
            return ell
        ell += exponent
    raise ModulusSearchError(f"no prime = 1 mod {exponent} above 2 sqrt({order}) below {bound}")


def _class_matrix(group: FiniteGroup, classes: ConjugacyClassData, j: int) -> list[list[int]]:
    """M_j[s][t] = #{x in C_j : x^{-1} rep_t in C_s}; columns are omega eigenvectors."""
    k = classes.n_classes
    members_j = [x for x in range(group.order) if classes.class_of[x] == j]
    inv_members = [group.inv(x) for x in members_j]
    mat = [[0] * k for _ in range(k)]
    class_of = classes.class_of
    mul = group.mul
    for t, rep in enumerate(classes.representatives):
        col_counts = [0] * k
        for xi in inv_members:
            col_counts[class_of[mul(xi, rep)]] += 1
        for s in range(k):
            mat[s][t] = col_counts[s]
    return mat


def character_table_modp(
    group: FiniteGroup, classes: ConjugacyClassData | None = None
) -> CharacterTableModP:
    """Full Dixon-Schneider eigen-separation for the class algebra of G."""
    cached = getattr(group, "_modp_table", None)
    if cached is not None:
        return cached
    if classes is None:
        classes = conjugacy_classes(group)
    k = classes.n_classes
    order = group.order
    exponent = math.lcm(*(group.element_order(r) for r in classes.representatives))
    ell = choose_ell(order, exponent)

    id_class = classes.class_of[group.identity]
    # subspaces of (Z/ell)^k, split until all are lines
    subspaces: list[list[list[int]]] = [[[1 if i == j else 0 for i in range(k)] for j in range(k)]]

    for j in range(k):
        if all(len(v) == 1 for v in subspaces):
            break
        if j == id_class:
            continue
        mj = _class_matrix(group, classes, j)
        new_spaces = []
        for basis in subspaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            # keep the basis in rref so coordinates read off the pivot columns
            bt_rows, pivots = _rref(basis, ell)
            d = len(bt_rows)
            assert d == len(basis)
            a = [[0] * d for _ in range(d)]
            for ci, v in enumerate(bt_rows):
                w = [sum(mj[rr][cc] * v[cc] for cc in range(k)) % ell for rr in range(k)]
                coords = [w[pc] % ell for pc in pivots]
                residual = w[:]
                for r, c in enumerate(coords):
                    if c:
                        residual = [(x - c * y) % ell for x, y in zip(residual, bt_rows[r])]
                assert not any(x % ell for x in residual), "class operator left the subspace"
                for r in range(d):
                    a[r][ci] = coords[r]
            cp = _charpoly(a, ell)
            roots = _poly_roots(cp, ell)
            for lam in roots:
                shifted = [[(a[r][c] - (lam if r == c else 0)) % ell for c in range(d)] for r in range(d)]
                null = _nullspace(shifted, ell)
                vecs = []
                for nv in null:
                    vec = [0] * k
                    for ci, coef in enumerate(nv):
                        if coef:
                            for idx in range(k):
                                vec[idx] = (vec[idx] + coef * bt_rows[ci][idx]) % ell
                    vecs.append(vec)
                # keep each eigenspace in rref form so coordinate-solving stays trivial
                vecs, _ = _rref(vecs, ell)
                new_spaces.append(vecs)
        subspaces = new_spaces

    assert all(len(v) == 1 for v in subspaces), "eigenspace separation incomplete"
    assert len(subspaces) == k

    omega_rows = []
    for basis in subspaces:
        v = basis[0]
        scale = pow(v[id_class], -1, ell)
        omega_rows.append(tuple(x * scale % ell for x in v))

    degrees = []
    inv_class = classes.inverse_class
    sizes = classes.sizes
    for row in omega_rows:
        total = 0
        for j in range(k):
            total = (total + row[j] * row[inv_class[j]] * pow(sizes[j], -1, ell)) % ell
        d_sq = order * pow(total, -1, ell) % ell
        d = _sqrt_mod(d_sq, ell)
        d = min(d, ell - d)
        assert 0 < d and d * d % ell == d_sq
        degrees.append(d)

    # deterministic row order: by degree, then omega row
    order_idx = sorted(range(k), key=lambda t: (degrees[t], omega_rows[t]))
    table = CharacterTableModP(
        ell,
        tuple(degrees[t] for t in order_idx),
        tuple(omega_rows[t] for t in order_idx),
        classes,
    )
    result = DegreeMultiset.from_degrees(table.degrees)
    result.validate(order, k)
    group._modp_table = table
    return table


def character_degrees(
    group: FiniteGroup, classes: ConjugacyClassData | None = None
) -> DegreeMultiset:
    """Exact multiset {dim rho : rho in Irr(G)} with multiplicities."""
    if classes is None:
        classes = conjugacy_classes(group)
    if group.is_abelian():
        out = DegreeMultiset(((1, group.order),))
        out.validate(group.order, classes.n_classes)
        return out
    table = character_table_modp(group, classes)
    out = DegreeMultiset.from_degrees(table.degrees)
    out.validate(group.order, classes.n_classes)
    return out


def abelian_degrees(group: FiniteGroup) -> DegreeMultiset:
    """Fast path: [(1, |G|)] for abelian G."""
    if not group.is_abelian():
        raise NonAbelianError("abelian_degrees requires an abelian group")
    return DegreeMultiset(((1, group.order),))
