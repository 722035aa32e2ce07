"""Graded quotient rings Z[x_ray]/(Stanley-Reisner + linear relations).

Per-degree integer monomial bases are found by exact sparse elimination
with unit pivots only; reduction to normal form, multiplication,
integration against the point class, and Betti/h-vector bookkeeping all
live here.  Monomials are exponent tuples over the ray indices, ordered
lexicographically with smaller ray indices first, and the elimination
walks columns left to right, so bases and coefficient vectors are
bit-stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from math import comb

from .fan import Fan, require_smooth_complete
from .lattice import IntVector, determinant

Monomial = tuple[int, ...]
Poly = dict[Monomial, int]


class RingConsistencyError(RuntimeError):
    """An internal invariant of a ring computation failed.

    Signals wrong input data (torsion, inconsistent point classes, a base
    presentation that is not what it claims) rather than a recoverable
    condition.
    """


def minimal_nonfaces(f: Fan) -> list[frozenset[int]]:
    """Inclusion-minimal ray sets contained in no maximal cone."""
    nonfaces = []
    for size in range(1, f.ray_count + 1):
        for subset in itertools.combinations(range(f.ray_count), size):
            s = frozenset(subset)
            if any(s <= cone for cone in f.max_cones):
                continue
            if any(nf < s for nf in nonfaces):
                continue
            nonfaces.append(s)
    return nonfaces


def linear_relations(f: Fan) -> list[IntVector]:
    """One relation per lattice coordinate: entry at ray rho is rho's coordinate."""
    return [tuple(ray[i] for ray in f.rays) for i in range(f.dim)]


def _faces(max_cones) -> set[frozenset[int]]:
    faces = {frozenset()}
    for cone in max_cones:
        cone = tuple(sorted(cone))
        for size in range(1, len(cone) + 1):
            for subset in itertools.combinations(cone, size):
                faces.add(frozenset(subset))
    return faces


def _face_monomials(ray_count: int, faces, degree: int) -> list[Monomial]:
    """All degree-d monomials whose support is a face.

    Ordered with x_0-heavy monomials first, so elimination pivots prefer
    low ray indices and basis monomials gravitate to high ones.
    """
    if degree == 0:
        return [(0,) * ray_count]
    out = []

    def grow(start: int, left: int, exps: list[int], support: frozenset):
        if left == 0:
            out.append(tuple(exps))
            return
        for i in range(start, ray_count):
            new_support = support | {i}
            if new_support not in faces:
                continue
            for k in range(1, left + 1):
                exps[i] = k
                grow(i + 1, left - k, exps, new_support)
            exps[i] = 0

    grow(0, degree, [0] * ray_count, frozenset())
    return sorted(out, reverse=True)


def graded_eliminate(rows, ncols: int, allowed=None):
    """Exact integer elimination with unit pivots.

    ``rows`` is a list of ``(vec, payload)`` where ``vec`` is a sparse
    ``{column: int}`` dict and ``payload`` an arbitrary sparse dict combined
    linearly alongside it.  Pivot columns are chosen left to right among
    ``allowed`` (all columns when None); a column whose residual gcd is not
    a unit is deferred, and scanning repeats until a pass makes no
    progress.  When the complement of ``allowed`` is a genuine basis of the
    quotient, every allowed column has residual gcd 1 and the elimination
    provably completes, certifying the basis.  Returns ``pivots``: a list
    of ``(column, vec, payload)`` with entry +1 at the pivot column and 0
    at every other pivot column.

    Raises RingConsistencyError if nonzero rows remain at the end: the
    complement of the pivot columns is then not a monomial basis (torsion,
    a wrong prescribed basis, or genuinely bad input).
    """

    def axpy(target, source, factor):
        for k, v in source.items():
            new = target.get(k, 0) + factor * v
            if new:
                target[k] = new
            else:
                target.pop(k, None)

    active = [
        (dict(vec), dict(payload) if payload else {})
        for vec, payload in rows
        if vec
    ]
    candidates = sorted(allowed) if allowed is not None else range(ncols)
    pivots = []
    pivot_cols = set()
    progress = True
    while progress and active:
        progress = False
        for col in candidates:
            if col in pivot_cols:
                continue
            hits = [r for r in active if col in r[0]]
            if not hits:
                continue
            # Combine rows pairwise until one alone is nonzero at this column.
            lead = hits[0]
            for other in hits[1:]:
                while col in other[0]:
                    a, b = lead[0][col], other[0][col]
                    if abs(a) > abs(b):
                        lead, other = other, lead
                        a, b = b, a
                    q = b // a
                    axpy(other[0], lead[0], -q)
                    axpy(other[1], lead[1], -q)
                    if col in other[0]:
                        lead, other = other, lead
            g = lead[0][col]
            if g not in (1, -1):
                continue  # deferred until a later pass; may join the basis
            if g == -1:
                for k in list(lead[0]):
                    lead[0][k] = -lead[0][k]
                for k in list(lead[1]):
                    lead[1][k] = -lead[1][k]
            for r in active:
                if r is not lead and col in r[0]:
                    q = r[0][col]
                    axpy(r[0], lead[0], -q)
                    axpy(r[1], lead[1], -q)
            for _, vec, payload in pivots:
                if col in vec:
                    q = vec[col]
                    axpy(vec, lead[0], -q)
                    axpy(payload, lead[1], -q)
            active = [r for r in active if r is not lead and r[0]]
            pivots.append((col, lead[0], lead[1]))
            pivot_cols.add(col)
            progress = True
    active = [r for r in active if r[0]]
    if active:
        raise RingConsistencyError(
            "graded piece has no unit-pivot monomial basis on the chosen "
            "columns (unexpected torsion or a wrong prescribed basis)"
        )
    pivots.sort(key=lambda p: p[0])
    return pivots


def fixed_point_basis_plan(ray_count, dim, max_cones, vectors, h_expected):
    """Squarefree basis monomials from a generic-direction sweep of the fan.

    For each maximal cone take the rays whose coordinate of a generic
    integer direction (in the cone's ray basis, signs via Cramer
    determinants) is negative; the resulting sets are the restriction
    sets of a shelling, so the squarefree monomials they span are the
    classical per-degree basis of the quotient ring.  The direction is
    the first (1, t, t^2, ...) giving no zero coordinates, no repeated
    ray sets, and degree counts matching the expected h-vector, so the
    choice is deterministic.  The plan depends only on the fan geometry;
    elimination later certifies it against whatever linear relations the
    ring carries.
    """
    if dim == 0:
        return {0: {(0,) * ray_count}}
    for t in range(1, 1000):
        direction = tuple(t ** k for k in range(dim))
        plan: dict[int, set] = {}
        seen = set()
        counts = [0] * (dim + 1)
        ok = True
        for cone in max_cones:
            cone_sorted = sorted(cone)
            rows = [vectors[i] for i in cone_sorted]
            base_det = determinant(tuple(rows))
            if base_det == 0:
                raise RingConsistencyError(
                    f"cone {cone_sorted} has linearly dependent rays"
                )
            tau = set()
            for i, rho in enumerate(cone_sorted):
                replaced = tuple(
                    direction if k == i else row
                    for k, row in enumerate(rows)
                )
                coord = determinant(replaced) * base_det
                if coord == 0:
                    ok = False
                    break
                if coord < 0:
                    tau.add(rho)
            if not ok:
                break
            key = frozenset(tau)
            if key in seen:
                ok = False
                break
            seen.add(key)
            counts[len(tau)] += 1
            mono = tuple(1 if i in tau else 0 for i in range(ray_count))
            plan.setdefault(len(tau), set()).add(mono)
        if ok and counts == list(h_expected):
            return plan
    raise RingConsistencyError(
        "no generic direction yields a fixed-point basis plan"
    )


@dataclass(frozen=True)
class _Degree:
    monomials: tuple[Monomial, ...]
    index: dict
    pivots: tuple
    basis_positions: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_positions)


class GradedQuotientRing:
    """Z[x_rho]/(Stanley-Reisner ideal + integer linear relations).

    ``degree_cap`` bounds the monomial degree of the graded pieces that are
    materialized; for rings of smooth complete fans the cap is the lattice
    rank and everything above it vanishes, for face rings (no linear
    relations) pieces are nonzero in every degree and the cap is a
    truncation requested by the caller.  Instances are immutable after
    construction and safe to share between threads.
    """

    def __init__(self, ray_count, dim, nonfaces, relations, max_cones,
                 degree_cap, basis_plan=None, name=""):
        self.ray_count = ray_count
        self.dim = dim
        self.nonfaces = tuple(frozenset(nf) for nf in nonfaces)
        self.relations = tuple(tuple(r) for r in relations)
        self.max_cones = tuple(frozenset(c) for c in max_cones)
        self.degree_cap = degree_cap
        self.basis_plan = basis_plan
        self.name = name
        self.faces = _faces(self.max_cones)
        self._degrees: list[_Degree] = []
        self._point = None
        for d in range(degree_cap + 1):
            self._degrees.append(self._build_degree(d))

    def _build_degree(self, d: int) -> _Degree:
        monomials = tuple(_face_monomials(self.ray_count, self.faces, d))
        index = {m: i for i, m in enumerate(monomials)}
        rows = []
        if d >= 1 and self.relations:
            lower = self._degrees[d - 1].monomials
            for mono in lower:
                for rel in self.relations:
                    vec = {}
                    for rho, coeff in enumerate(rel):
                        if coeff == 0:
                            continue
                        bumped = mono[:rho] + (mono[rho] + 1,) + mono[rho + 1:]
                        pos = index.get(bumped)
                        if pos is not None:
                            vec[pos] = vec.get(pos, 0) + coeff
                    if vec:
                        rows.append((vec, None))
        allowed = None
        if self.basis_plan is not None:
            planned = self.basis_plan.get(d, set())
            positions = set()
            for mono in planned:
                pos = index.get(mono)
                if pos is None:
                    raise RingConsistencyError(
                        f"planned basis monomial {mono} is not a face monomial"
                    )
                positions.add(pos)
            allowed = set(range(len(monomials))) - positions
        pivots = graded_eliminate(rows, len(monomials), allowed)
        if allowed is not None and len(pivots) != len(allowed):
            raise RingConsistencyError(
                f"degree {d}: prescribed basis leaves {len(allowed)} columns "
                f"to eliminate but only {len(pivots)} got unit pivots"
            )
        pivot_cols = {col for col, _, _ in pivots}
        basis = tuple(i for i in range(len(monomials)) if i not in pivot_cols)
        return _Degree(monomials, index, tuple(pivots), basis)

    # -- structure ---------------------------------------------------------

    @property
    def top_degree(self) -> int:
        """Top cohomological degree 2*dim."""
        return 2 * self.dim

    def betti(self) -> list[int]:
        """Basis ranks per even degree; index k is cohomological degree 2k."""
        return [self._degrees[d].rank for d in range(self.degree_cap + 1)]

    def basis_monomials(self, d: int) -> list[Monomial]:
        deg = self._degrees[d]
        return [deg.monomials[i] for i in deg.basis_positions]

    def is_face(self, support) -> bool:
        return frozenset(support) in self.faces

    # -- reduction ---------------------------------------------------------

    def _reduce_degree(self, d: int, vec: dict) -> tuple[int, ...]:
        deg = self._degrees[d]
        work = dict(vec)
        for col, row, _ in deg.pivots:
            c = work.get(col)
            if c:
                for k, v in row.items():
                    new = work.get(k, 0) - c * v
                    if new:
                        work[k] = new
                    else:
                        work.pop(k, None)
        return tuple(work.get(i, 0) for i in deg.basis_positions)

    def reduce_poly(self, poly: Poly) -> "CohomologyClass":
        """Normal form of an integer polynomial in the ray generators.

        Monomials above the degree cap are dropped: for rings of complete
        fans they vanish, for truncated face rings that is the truncation.
        """
        buckets: dict[int, dict] = {}
        for mono, coeff in poly.items():
            if coeff == 0:
                continue
            if len(mono) != self.ray_count:
                raise ValueError("monomial length does not match ray count")
            d = sum(mono)
            if d > self.degree_cap:
                continue
            support = frozenset(i for i, e in enumerate(mono) if e > 0)
            if support not in self.faces:
                continue
            pos = self._degrees[d].index[mono]
            bucket = buckets.setdefault(d, {})
            bucket[pos] = bucket.get(pos, 0) + coeff
        parts = []
        for d in range(self.degree_cap + 1):
            parts.append(self._reduce_degree(d, buckets.get(d, {})))
        return CohomologyClass(self, tuple(parts))

    def zero(self) -> "CohomologyClass":
        return self.reduce_poly({})

    def unit(self) -> "CohomologyClass":
        return self.reduce_poly({(0,) * self.ray_count: 1})

    def generator(self, rho: int) -> "CohomologyClass":
        """The degree-2 class of the divisor attached to ray rho."""
        mono = tuple(1 if i == rho else 0 for i in range(self.ray_count))
        return self.reduce_poly({mono: 1})

    def multiply(self, a: "CohomologyClass", b: "CohomologyClass") -> "CohomologyClass":
        if a.ring is not self or b.ring is not self:
            raise ValueError("classes live in different rings")
        buckets: dict[int, dict] = {}
        for d1, part1 in enumerate(a.parts):
            basis1 = self._degrees[d1]
            for i1, c1 in enumerate(part1):
                if c1 == 0:
                    continue
                m1 = basis1.monomials[basis1.basis_positions[i1]]
                for d2, part2 in enumerate(b.parts):
                    d = d1 + d2
                    if d > self.degree_cap:
                        continue
                    basis2 = self._degrees[d2]
                    for i2, c2 in enumerate(part2):
                        if c2 == 0:
                            continue
                        m2 = basis2.monomials[basis2.basis_positions[i2]]
                        prod = tuple(x + y for x, y in zip(m1, m2))
                        support = frozenset(
                            i for i, e in enumerate(prod) if e > 0
                        )
                        if support not in self.faces:
                            continue
                        pos = self._degrees[d].index[prod]
                        bucket = buckets.setdefault(d, {})
                        bucket[pos] = bucket.get(pos, 0) + c1 * c2
        parts = []
        for d in range(self.degree_cap + 1):
            parts.append(self._reduce_degree(d, buckets.get(d, {})))
        return CohomologyClass(self, tuple(parts))

    # -- integration -------------------------------------------------------

    def _point_data(self):
        if self._point is None:
            n = self.dim
            reduced = None
            for cone in self.max_cones:
                mono = tuple(
                    1 if i in cone else 0 for i in range(self.ray_count)
                )
                vec = {self._degrees[n].index[mono]: 1}
                this = self._reduce_degree(n, vec)
                if reduced is None:
                    reduced = this
                elif this != reduced:
                    raise RingConsistencyError(
                        "maximal cones yield different point classes"
                    )
            if reduced is None or len(reduced) != 1 or reduced[0] not in (1, -1):
                raise RingConsistencyError(
                    f"top degree is not generated by the point class: {reduced}"
                )
            self._point = reduced[0]
        return self._point

    def point_class(self) -> "CohomologyClass":
        """The class of a point: product of the rays of any maximal cone."""
        sign = self._point_data()
        parts = [
            (sign,) if d == self.dim else (0,) * self._degrees[d].rank
            for d in range(self.degree_cap + 1)
        ]
        return CohomologyClass(self, tuple(parts))

    def integrate(self, cls: "CohomologyClass") -> int:
        """Pair a homogeneous top-degree class with the fundamental class."""
        if cls.ring is not self:
            raise ValueError("class lives in a different ring")
        for d, part in enumerate(cls.parts):
            if d != self.dim and any(part):
                raise ValueError(
                    "integrate expects a class concentrated in the top degree; "
                    "take component(dim) of a total class first"
                )
        sign = self._point_data()
        return cls.parts[self.dim][0] * sign if cls.parts[self.dim] else 0


@dataclass(frozen=True)
class CohomologyClass:
    """Per-degree integer coefficients over the ring's chosen monomial basis."""

    ring: GradedQuotientRing
    parts: tuple[tuple[int, ...], ...]

    def component(self, k: int) -> "CohomologyClass":
        """The homogeneous piece in cohomological degree 2k."""
        parts = tuple(
            part if d == k else (0,) * len(part)
            for d, part in enumerate(self.parts)
        )
        return CohomologyClass(self.ring, parts)

    def coefficients(self, k: int) -> tuple[int, ...]:
        return self.parts[k]

    def is_zero(self) -> bool:
        return all(not any(part) for part in self.parts)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.ring is not other.ring:
            raise ValueError("classes live in different rings")
        return CohomologyClass(
            self.ring,
            tuple(
                tuple(x + y for x, y in zip(p, q))
                for p, q in zip(self.parts, other.parts)
            ),
        )

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-1) * other

    def __rmul__(self, scalar: int) -> "CohomologyClass":
        return CohomologyClass(
            self.ring,
            tuple(tuple(scalar * x for x in p) for p in self.parts),
        )

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self.ring.multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CohomologyClass)
            and self.ring is other.ring
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((id(self.ring), self.parts))


@cache
def build_ring(f: Fan) -> GradedQuotientRing:
    """The integral cohomology ring of the toric variety of a smooth complete fan.

    Rejects non-smooth or non-complete fans.  The rank invariants (Betti sum
    equals the number of maximal cones, degree-2 rank equals rays minus
    dimension, Poincare symmetry, Betti equals h-vector) are checked at
    build time and violations raise RingConsistencyError.
    """
    require_smooth_complete(f, "build_ring")
    hv = h_vector(f)
    ring = GradedQuotientRing(
        ray_count=f.ray_count,
        dim=f.dim,
        nonfaces=minimal_nonfaces(f),
        relations=linear_relations(f),
        max_cones=f.max_cones,
        degree_cap=f.dim,
        basis_plan=fixed_point_basis_plan(
            f.ray_count, f.dim, f.max_cones, f.rays, hv
        ),
    )
    ranks = ring.betti()
    if ranks != hv:
        raise RingConsistencyError(f"Betti ranks {ranks} differ from h-vector {hv}")
    if sum(ranks) != len(f.max_cones):
        raise RingConsistencyError("total rank differs from maximal-cone count")
    if f.dim >= 1 and ranks[1] != f.ray_count - f.dim:
        raise RingConsistencyError("degree-2 rank differs from Picard rank")
    if ranks != ranks[::-1]:
        raise RingConsistencyError(f"Betti ranks {ranks} are not symmetric")
    return ring


def h_vector(f: Fan) -> list[int]:
    """h-vector of the maximal-cone complex, from face counts alone."""
    faces = _faces(f.max_cones)
    n = f.dim
    counts = [0] * (n + 1)  # counts[s] = number of faces with s vertices
    for face in faces:
        counts[len(face)] += 1
    return [
        sum(
            (-1) ** (k - i) * comb(n - i, k - i) * counts[i]
            for i in range(k + 1)
        )
        for k in range(n + 1)
    ]


def betti(ring: GradedQuotientRing) -> list[int]:
    return ring.betti()


def reduce(ring: GradedQuotientRing, poly: Poly) -> CohomologyClass:
    return ring.reduce_poly(poly)


def multiply(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return a.ring.multiply(a, b)


def point_class(ring: GradedQuotientRing) -> CohomologyClass:
    return ring.point_class()


def integrate(ring: GradedQuotientRing, cls: CohomologyClass) -> int:
    return ring.integrate(cls)
