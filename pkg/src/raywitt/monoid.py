"""Lattice monoids, their ideals, and finite truncations.

A monoid lives in Z^n and is described either by integer inequality
covectors (all lattice points of a rational cone) or by a finite
generator list.  Downstream computations only ever touch a truncation:
the members of bounded weight, minus an optional monoid ideal, plus 0.
All objects are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import DimensionMismatchError, RaywittError, UndecidableError

Vector = tuple[int, ...]


def _as_vector(v, rank: int) -> Vector:
    t = tuple(int(x) for x in v)
    if len(t) != rank:
        raise DimensionMismatchError(f"expected a vector of rank {rank}, got {v!r}")
    return t


def _dot(w, v) -> int:
    return sum(a * b for a, b in zip(w, v))


def content_of(v) -> int:
    """gcd of the coordinates; the largest e with v = e * (lattice point)."""
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise RaywittError("content is undefined for the zero element")
    return g


@dataclass(frozen=True, order=True)
class Ray:
    """Maximal cyclic submonoid, identified by its primitive vector."""

    primitive: Vector

    def multiple(self, e: int) -> Vector:
        return tuple(e * x for x in self.primitive)

    def __repr__(self):
        return f"Ray{self.primitive}"


# -- Fourier-Motzkin elimination -------------------------------------------
#
# Systems are lists of (coeffs, rhs) meaning coeffs . x >= rhs, with exact
# rational arithmetic.  Used to certify that a weight covector bounds the
# truncation region and to get coordinate ranges for enumeration.


def _fm_eliminate(system, k):
    pos, neg, rest = [], [], []
    for coeffs, rhs in system:
        c = coeffs[k]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            rest.append((coeffs, rhs))
    for pc, pr in pos:
        a = pc[k]
        for nc, nr in neg:
            b = -nc[k]
            coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
            rest.append((coeffs, b * pr + a * nr))
    return rest


def _fm_coordinate_range(system, nvars, i):
    """Exact bounds on x_i over the solution set, or None if unbounded."""
    reduced = system
    for k in range(nvars):
        if k != i:
            reduced = _fm_eliminate(reduced, k)
    lo, hi = None, None
    for coeffs, rhs in reduced:
        c = coeffs[i]
        if c > 0:
            bound = Fraction(rhs, c)
            lo = bound if lo is None else max(lo, bound)
        elif c < 0:
            bound = Fraction(rhs, c)
            hi = bound if hi is None else min(hi, bound)
        elif rhs > 0:
            return Fraction(0), Fraction(-1)  # infeasible: empty range
    return lo, hi


@dataclass(frozen=True)
class AffineMonoid:
    """Normal submonoid of Z^n with no nonzero invertible elements.

    Exactly one of the two descriptions is authoritative.  Inequality
    monoids are all lattice points of the cone {v : W v >= 0} and are
    normal by construction.  Generator monoids are the non-negative
    integer spans of the listed vectors; membership is decided by a
    bounded search, and normality is only spot-checked on a finite
    window (``normality_window``, applied up to rank 3), which is a
    partial guarantee.
    """

    rank: int
    inequalities: tuple[Vector, ...] = ()
    generators: tuple[Vector, ...] | None = None
    authoritative: str = "inequalities"
    normality_window: int = 16

    def __post_init__(self):
        if self.rank < 1:
            raise RaywittError("ambient rank must be positive")
        object.__setattr__(
            self, "inequalities", tuple(_as_vector(w, self.rank) for w in self.inequalities)
        )
        if self.generators is not None:
            gens = tuple(_as_vector(g, self.rank) for g in self.generators)
            if any(all(x == 0 for x in g) for g in gens):
                raise RaywittError("generators must be nonzero")
            object.__setattr__(self, "generators", gens)
        if self.authoritative not in ("inequalities", "generators"):
            raise RaywittError(f"unknown representation tag {self.authoritative!r}")
        if self.authoritative == "generators":
            if not self.generators:
                raise RaywittError("generator representation requires generators")
            self._check_generators()
        else:
            if not self.inequalities:
                raise RaywittError("inequality representation requires inequalities")
            self._check_pointed()

    def _check_pointed(self):
        # A line through +-v lies in the cone iff W v = 0, so the cone is
        # unit-free iff the inequality matrix has full column rank.
        mat = [list(w) for w in self.inequalities]
        if linalg.rank(mat) < self.rank:
            raise RaywittError("inequality cone contains invertible directions")

    def _check_generators(self):
        # A nonzero unit forces some generator to be a unit, so checking
        # each generator's negation suffices.
        for g in self.generators:
            if self.contains(tuple(-x for x in g)):
                raise RaywittError(f"generator {g} is invertible in the monoid")
        self._check_normality_window()

    def _check_normality_window(self):
        w = self.normality_window
        if w <= 0 or self.rank > 3:
            return
        from itertools import product

        for v in product(range(-w, w + 1), repeat=self.rank):
            if all(x == 0 for x in v) or self.contains(v):
                continue
            d = 2
            while all(abs(d * x) <= w for x in v):
                if self.contains(tuple(d * x for x in v)):
                    raise RaywittError(
                        f"monoid is not normal on the test window: {tuple(v)} is "
                        f"missing but {d} * {tuple(v)} is a member"
                    )
                d += 1

    # -- membership ---------------------------------------------------------

    def contains(self, v) -> bool:
        """Whether v is a member; generator monoids use a bounded search."""
        v = _as_vector(v, self.rank)
        if self.authoritative == "inequalities":
            return all(_dot(w, v) >= 0 for w in self.inequalities)
        return self._generator_membership(v)

    def _generator_membership(self, v: Vector) -> bool:
        gens = self.generators
        assert gens is not None
        if any(min(g) < 0 for g in gens):
            raise UndecidableError(
                "membership is undecidable under bounds: generators must be "
                "componentwise non-negative for the bounded search"
            )
        if all(x == 0 for x in v):
            return True
        if min(v) < 0:
            return False
        vmax = max(v)
        bounds = []
        for g in gens:
            minpos = min((x for x in g if x > 0), default=None)
            if minpos is None:
                raise UndecidableError(
                    "membership is undecidable under bounds: a generator has no "
                    "positive coordinate"
                )
            bounds.append(vmax // minpos)

        def search(rest: Vector, idx: int) -> bool:
            if all(x == 0 for x in rest):
                return True
            if idx == len(gens):
                return False
            g = gens[idx]
            c = 0
            current = rest
            while c <= bounds[idx] and min(current) >= 0:
                if search(current, idx + 1):
                    return True
                current = tuple(x - y for x, y in zip(current, g))
                c += 1
            return False

        return search(v, 0)

    # -- elementwise invariants ----------------------------------------------

    def content(self, gamma) -> int:
        gamma = _as_vector(gamma, self.rank)
        if not self.contains(gamma):
            raise RaywittError(f"{gamma} is not a member of the monoid")
        return content_of(gamma)

    def is_primitive(self, gamma) -> bool:
        return self.content(gamma) == 1

    def ray_of(self, gamma) -> Ray:
        """The ray through gamma; its primitive is gamma / content."""
        gamma = _as_vector(gamma, self.rank)
        c = self.content(gamma)
        return Ray(tuple(x // c for x in gamma))

    def to_json(self) -> dict:
        doc: dict = {"rank": self.rank}
        if self.inequalities:
            doc["inequalities"] = [list(w) for w in self.inequalities]
        if self.generators is not None:
            doc["generators"] = [list(g) for g in self.generators]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "AffineMonoid":
        # If both descriptions are present, the inequalities win.
        tag = "inequalities" if doc.get("inequalities") else "generators"
        return cls(
            rank=int(doc["rank"]),
            inequalities=tuple(tuple(w) for w in doc.get("inequalities") or ()),
            generators=(
                tuple(tuple(g) for g in doc["generators"]) if doc.get("generators") else None
            ),
            authoritative=tag,
        )


def nonneg_orthant(rank: int) -> AffineMonoid:
    """The monoid N^rank as an inequality monoid."""
    rows = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
    return AffineMonoid(rank=rank, inequalities=rows)


@dataclass(frozen=True)
class MonoidIdeal:
    """Upward-closed subset eta + Gamma, given by finitely many generators."""

    monoid: AffineMonoid
    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(_as_vector(g, self.monoid.rank) for g in self.generators)
        if not gens:
            raise RaywittError("an ideal needs at least one generator")
        for g in gens:
            if all(x == 0 for x in g):
                raise RaywittError("ideal generators must be nonzero")
            if not self.monoid.contains(g):
                raise RaywittError(f"ideal generator {g} is not a member")
        object.__setattr__(self, "generators", gens)

    def contains(self, gamma) -> bool:
        gamma = _as_vector(gamma, self.monoid.rank)
        return any(
            self.monoid.contains(tuple(x - y for x, y in zip(gamma, g)))
            for g in self.generators
        )


@dataclass(frozen=True)
class TruncatedMonoid:
    """Finite slice {gamma : w . gamma <= D} of a monoid, minus an ideal.

    The nonzero members form a divisor-closed set: whenever d * gamma is
    a member so is gamma.  Elements are materialized at construction and
    ordered by (weight, lexicographic) so every downstream basis is
    reproducible.
    """

    monoid: AffineMonoid
    weight: Vector
    degree_bound: int
    ideal: MonoidIdeal | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight", _as_vector(self.weight, self.monoid.rank))
        if self.degree_bound < 0:
            raise RaywittError("degree bound must be non-negative")
        if self.ideal is not None and self.ideal.monoid != self.monoid:
            raise RaywittError("ideal belongs to a different monoid")
        self.elements  # force enumeration, validating the weight

    @cached_property
    def elements(self) -> tuple[Vector, ...]:
        """All nonzero members, sorted by (weight, lexicographic)."""
        if self.monoid.authoritative == "generators":
            found = self._enumerate_generated()
        else:
            found = self._enumerate_cone()
        for gamma in found:
            if _dot(self.weight, gamma) <= 0:
                raise RaywittError(
                    f"weight {self.weight} is not strictly positive on member {gamma}"
                )
        if self.ideal is not None:
            found = [g for g in found if not self.ideal.contains(g)]
        found.sort(key=lambda g: (_dot(self.weight, g), g))
        return tuple(found)

    def _enumerate_generated(self):
        gens = self.monoid.generators
        assert gens is not None
        for g in gens:
            if _dot(self.weight, g) <= 0:
                raise RaywittError(
                    f"weight {self.weight} is not strictly positive on generator {g}"
                )
        frontier = [tuple(0 for _ in range(self.monoid.rank))]
        seen = set(frontier)
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    u = tuple(x + y for x, y in zip(v, g))
                    if u not in seen and _dot(self.weight, u) <= self.degree_bound:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        seen.discard(tuple(0 for _ in range(self.monoid.rank)))
        return list(seen)

    def _enumerate_cone(self):
        from itertools import product

        n = self.monoid.rank
        system = [(w, 0) for w in self.monoid.inequalities]
        system.append((tuple(-x for x in self.weight), -self.degree_bound))
        ranges = []
        for i in range(n):
            lo, hi = _fm_coordinate_range(system, n, i)
            if lo is None or hi is None:
                raise RaywittError(
                    f"weight {self.weight} does not bound the truncation region: "
                    f"coordinate {i} is unbounded"
                )
            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        out = []
        for v in product(*ranges):
            if all(x == 0 for x in v):
                continue
            if _dot(self.weight, v) > self.degree_bound:
                continue
            if all(_dot(w, v) >= 0 for w in self.monoid.inequalities):
                out.append(tuple(v))
        return out

    @cached_property
    def element_set(self) -> frozenset[Vector]:
        return frozenset(self.elements)

    def is_member(self, gamma) -> bool:
        return _as_vector(gamma, self.monoid.rank) in self.element_set

    def weight_of(self, gamma) -> int:
        return _dot(self.weight, _as_vector(gamma, self.monoid.rank))

    @cached_property
    def rays(self) -> tuple[Ray, ...]:
        """Rays meeting the element set, in element order of their primitives."""
        out = []
        for gamma in self.elements:
            if content_of(gamma) == 1:
                out.append(Ray(gamma))
        return tuple(out)

    def ray_truncation_set(self, ray: Ray) -> tuple[int, ...]:
        """The divisor-closed set {e >= 1 : e * v is a member} along a ray."""
        if ray not in self.rays:
            raise RaywittError(f"{ray} is not a ray of this truncation")
        wv = _dot(self.weight, ray.primitive)
        out = []
        e = 1
        while e * wv <= self.degree_bound:
            if ray.multiple(e) in self.element_set:
                out.append(e)
            e += 1
        return tuple(out)

    def ray_and_exponent(self, gamma) -> tuple[Ray, int]:
        """Write a member as e * v with v primitive."""
        gamma = _as_vector(gamma, self.monoid.rank)
        c = content_of(gamma)
        return Ray(tuple(x // c for x in gamma)), c

    def to_json(self) -> dict:
        doc = self.monoid.to_json()
        doc["weight"] = list(self.weight)
        doc["degree_bound"] = self.degree_bound
        if self.ideal is not None:
            doc["ideal"] = [list(g) for g in self.ideal.generators]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "TruncatedMonoid":
        monoid = AffineMonoid.from_json(doc)
        ideal = None
        if doc.get("ideal"):
            ideal = MonoidIdeal(monoid, tuple(tuple(g) for g in doc["ideal"]))
        return cls(
            monoid=monoid,
            weight=tuple(doc["weight"]),
            degree_bound=int(doc["degree_bound"]),
            ideal=ideal,
        )


def natural_line(degree_bound: int, killed_at: int | None = None) -> TruncatedMonoid:
    """Truncation of N: members 1..degree_bound, everything >= killed_at removed."""
    m = nonneg_orthant(1)
    ideal = MonoidIdeal(m, ((killed_at,),)) if killed_at is not None else None
    return TruncatedMonoid(m, weight=(1,), degree_bound=degree_bound, ideal=ideal)


def trivial_truncation(rank: int = 1) -> TruncatedMonoid:
    """Truncation with no nonzero members; grades purely degree-0 algebras."""
    return TruncatedMonoid(nonneg_orthant(rank), weight=(1,) * rank, degree_bound=0)
