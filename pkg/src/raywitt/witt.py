"""Big Witt vectors graded by a truncated monoid.

A vector is a finitely supported function from the nonzero members to a
coefficient ring.  The ghost map collects the weighted power sums

    gh(a)(eta) = sum over eta = e * gamma of content(gamma) * a_gamma^e,

and the ring structure is the unique one making it a ring map.  Since
each member lies on a single ray, the arithmetic is computed ray by ray
through the cached universal polynomials (raywitt.wittpoly), which keeps
it correct over rings with torsion where the ghost map is not injective.
"""

from __future__ import annotations

from . import wittpoly
from .errors import ExactnessError, RaywittError
from .monoid import Ray, TruncatedMonoid, content_of
from .rings import Ring, ring_from_json, ring_to_json


class _Vector:
    """Shared plumbing: a support dict over the nonzero members."""

    __slots__ = ("truncation", "ring", "_coeffs")

    def __init__(self, truncation: TruncatedMonoid, ring: Ring, coeffs=None):
        clean = {}
        if coeffs:
            for gamma, value in coeffs.items():
                gamma = tuple(int(x) for x in gamma)
                if not truncation.is_member(gamma):
                    raise RaywittError(f"{gamma} is not a member of the truncation")
                if not ring.is_zero(value):
                    clean[gamma] = value
        self.truncation = truncation
        self.ring = ring
        self._coeffs = clean

    def coefficient(self, gamma):
        gamma = tuple(int(x) for x in gamma)
        return self._coeffs.get(gamma, self.ring.zero())

    @property
    def support(self):
        return tuple(g for g in self.truncation.elements if g in self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def _same_world(self, other):
        if self.truncation != other.truncation or self.ring != other.ring:
            raise RaywittError("operands live over different truncations or rings")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.truncation != other.truncation or self.ring != other.ring:
            return False
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.ring.eq(self.coefficient(g), other.coefficient(g)) for g in keys)

    __hash__ = None  # type: ignore[assignment]

    def _coeff_items(self):
        return [(g, self._coeffs[g]) for g in self.support]

    def to_json(self):
        return {
            "monoid": self.truncation.to_json(),
            "ring": ring_to_json(self.ring),
            "coeffs": [
                {"gamma": list(g), "value": self.ring.to_str(v)}
                for g, v in self._coeff_items()
            ],
        }

    def __repr__(self):
        body = ", ".join(f"{g}: {self.ring.to_str(v)}" for g, v in self._coeff_items())
        return f"{type(self).__name__}({{{body}}})"


class WittVector(_Vector):
    def __add__(self, other):
        self._same_world(other)
        return add(self, other)

    def __mul__(self, other):
        self._same_world(other)
        return mul(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return self + (-other)

    def map_ring(self, fn, ring: Ring) -> "WittVector":
        """Apply a coefficient-ring homomorphism pointwise."""
        return WittVector(self.truncation, ring, {g: fn(v) for g, v in self._coeffs.items()})

    def restrict(self, coarser: TruncatedMonoid) -> "WittVector":
        """Push forward along a quotient: drop coordinates that died."""
        if not coarser.element_set <= self.truncation.element_set:
            raise RaywittError("target truncation is not a quotient of the source")
        kept = {g: v for g, v in self._coeffs.items() if coarser.is_member(g)}
        return WittVector(coarser, self.ring, kept)

    @classmethod
    def from_json(cls, doc: dict) -> "WittVector":
        truncation = TruncatedMonoid.from_json(doc["monoid"])
        ring = ring_from_json(doc["ring"])
        coeffs = {
            tuple(entry["gamma"]): ring.parse(entry["value"]) for entry in doc["coeffs"]
        }
        return cls(truncation, ring, coeffs)


class GhostVector(_Vector):
    """Componentwise vector in the product ring indexed by the members."""

    def __add__(self, other):
        self._same_world(other)
        out = dict(self._coeffs)
        for g, v in other._coeffs.items():
            out[g] = self.ring.add(out.get(g, self.ring.zero()), v)
        return GhostVector(self.truncation, self.ring, out)

    def __mul__(self, other):
        self._same_world(other)
        out = {}
        for g, v in self._coeffs.items():
            w = other._coeffs.get(g)
            if w is not None:
                out[g] = self.ring.mul(v, w)
        return GhostVector(self.truncation, self.ring, out)

    def __neg__(self):
        return GhostVector(
            self.truncation, self.ring, {g: self.ring.neg(v) for g, v in self._coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    @classmethod
    def from_json(cls, doc: dict) -> "GhostVector":
        truncation = TruncatedMonoid.from_json(doc["monoid"])
        ring = ring_from_json(doc["ring"])
        coeffs = {
            tuple(entry["gamma"]): ring.parse(entry["value"]) for entry in doc["coeffs"]
        }
        return cls(truncation, ring, coeffs)


# -- constructors ------------------------------------------------------------


def zero(truncation: TruncatedMonoid, ring: Ring) -> WittVector:
    return WittVector(truncation, ring, {})


def teichmuller(truncation: TruncatedMonoid, ring: Ring, r, gamma) -> WittVector:
    """The vector r[gamma]: value r at gamma, zero elsewhere."""
    gamma = tuple(int(x) for x in gamma)
    if all(x == 0 for x in gamma):
        raise RaywittError("Teichmuller lifts are indexed by nonzero members")
    if not truncation.is_member(gamma):
        raise RaywittError(f"{gamma} is not a member of the truncation")
    return WittVector(truncation, ring, {gamma: r})


def delta_prim(truncation: TruncatedMonoid, ring: Ring) -> WittVector:
    """One on every primitive member: the multiplicative identity."""
    one = ring.one()
    return WittVector(truncation, ring, {r.primitive: one for r in truncation.rays})


def ray_idempotent(truncation: TruncatedMonoid, ring: Ring, ray: Ray) -> WittVector:
    return teichmuller(truncation, ring, ring.one(), ray.primitive)


# -- ghost map ---------------------------------------------------------------


def ghost(a: WittVector) -> GhostVector:
    """Weighted power sums of a, one component per member."""
    ring = a.ring
    out = {}
    for eta in a.truncation.elements:
        c = content_of(eta)
        total = ring.zero()
        for e in wittpoly.divisors(c):
            gamma = tuple(x // e for x in eta)
            val = a._coeffs.get(gamma)
            if val is not None:
                total = ring.add(total, ring.mul(ring.from_int(c // e), ring.pow(val, e)))
        if not ring.is_zero(total):
            out[eta] = total
    return GhostVector(a.truncation, ring, out)


def ghost_component(a: WittVector, eta):
    """One ghost component without materializing the rest."""
    eta = tuple(int(x) for x in eta)
    if all(x == 0 for x in eta):
        raise RaywittError("ghost components are indexed by nonzero members")
    if not a.truncation.is_member(eta):
        raise RaywittError(f"{eta} is not a member of the truncation")
    ring = a.ring
    c = content_of(eta)
    total = ring.zero()
    for e in wittpoly.divisors(c):
        gamma = tuple(x // e for x in eta)
        val = a._coeffs.get(gamma)
        if val is not None:
            total = ring.add(total, ring.mul(ring.from_int(c // e), ring.pow(val, e)))
    return total


def from_ghost(g: GhostVector) -> WittVector:
    """Invert the ghost map by a triangular solve along each ray.

    Every division must be exact in the coefficient ring; if not, the
    offending component is reported.
    """
    ring = g.ring
    coeffs = {}
    for ray in g.truncation.rays:
        S = g.truncation.ray_truncation_set(ray)
        solved: dict[int, object] = {}
        for e in S:
            acc = g._coeffs.get(ray.multiple(e), ring.zero())
            for d in wittpoly.divisors(e):
                if d == e or d not in solved:
                    continue
                acc = ring.sub(acc, ring.mul(ring.from_int(d), ring.pow(solved[d], e // d)))
            try:
                solved[e] = ring.divexact(acc, ring.from_int(e))
            except ExactnessError as exc:
                raise ExactnessError(
                    f"ghost inversion fails at component {ray.multiple(e)}: {exc}"
                ) from exc
        for e, v in solved.items():
            if not ring.is_zero(v):
                coeffs[ray.multiple(e)] = v
    return WittVector(g.truncation, ring, coeffs)


# -- ring operations via universal polynomials --------------------------------


def _by_ray(a: WittVector) -> dict[Ray, dict[int, object]]:
    out: dict[Ray, dict[int, object]] = {}
    for gamma, value in a._coeffs.items():
        ray, e = a.truncation.ray_and_exponent(gamma)
        out.setdefault(ray, {})[e] = value
    return out


def _assemble(truncation, ring, per_ray) -> WittVector:
    coeffs = {}
    for ray, comp in per_ray.items():
        for e, v in comp.items():
            if not ring.is_zero(v):
                coeffs[ray.multiple(e)] = v
    return WittVector(truncation, ring, coeffs)


def add(a: WittVector, b: WittVector) -> WittVector:
    a._same_world(b)
    ring = a.ring
    left, right = _by_ray(a), _by_ray(b)
    out: dict[Ray, dict[int, object]] = {}
    for ray in set(left) | set(right):
        ca, cb = left.get(ray, {}), right.get(ray, {})
        if not cb:
            out[ray] = dict(ca)
            continue
        if not ca:
            out[ray] = dict(cb)
            continue
        S = a.truncation.ray_truncation_set(ray)
        polys = wittpoly.sum_polynomials(S)
        out[ray] = {e: wittpoly.evaluate(polys[e], ring, ca, cb) for e in S}
    return _assemble(a.truncation, ring, out)


def negate(a: WittVector) -> WittVector:
    ring = a.ring
    out: dict[Ray, dict[int, object]] = {}
    for ray, comp in _by_ray(a).items():
        S = a.truncation.ray_truncation_set(ray)
        polys = wittpoly.sum_polynomials(S)
        solved: dict[int, object] = {}
        for e in S:
            # solve s_e(a, x) = 0 for x_e; s_e = a_e + x_e + mixed lower terms
            partial = wittpoly.evaluate(polys[e], ring, comp, solved)
            solved[e] = ring.neg(partial)
        out[ray] = solved
    return _assemble(a.truncation, ring, out)


def mul(a: WittVector, b: WittVector) -> WittVector:
    a._same_world(b)
    ring = a.ring
    left, right = _by_ray(a), _by_ray(b)
    out: dict[Ray, dict[int, object]] = {}
    for ray in set(left) & set(right):
        ca, cb = left[ray], right[ray]
        S = a.truncation.ray_truncation_set(ray)
        polys = wittpoly.product_polynomials(S)
        out[ray] = {e: wittpoly.evaluate(polys[e], ring, ca, cb) for e in S}
    return _assemble(a.truncation, ring, out)


# -- operators ----------------------------------------------------------------


def verschiebung(m: int, a: WittVector) -> WittVector:
    """V_m: move the e-th coordinate on each ray to the (m*e)-th.

    Coordinates pushed past the truncation are dropped.
    """
    if m < 1:
        raise RaywittError("Verschiebung index must be positive")
    coeffs = {}
    for gamma, value in a._coeffs.items():
        target = tuple(m * x for x in gamma)
        if a.truncation.is_member(target):
            coeffs[target] = value
    return WittVector(a.truncation, a.ring, coeffs)


def frobenius(m: int, a: WittVector) -> WittVector:
    """F_m, determined by gh(F_m a)(e v) = gh(a)(m e v) on every ray."""
    if m < 1:
        raise RaywittError("Frobenius index must be positive")
    ring = a.ring
    out: dict[Ray, dict[int, object]] = {}
    for ray, comp in _by_ray(a).items():
        S = a.truncation.ray_truncation_set(ray)
        polys = wittpoly.frobenius_polynomials(S, m)
        out[ray] = {e: wittpoly.evaluate(poly, ring, comp) for e, poly in polys.items()}
    return _assemble(a.truncation, ring, out)


def witt_one_minus(truncation: TruncatedMonoid, ring: Ring, r, m: int, ray: Ray) -> WittVector:
    """V_m(r[v]) along the given ray; on a single ray this is the vector
    of the power series 1 - r t^m (truncated away if m v has left)."""
    if m < 1:
        raise RaywittError("index must be positive")
    target = ray.multiple(m)
    if not truncation.is_member(target):
        return zero(truncation, ring)
    return WittVector(truncation, ring, {target: r})


# -- ray decomposition ---------------------------------------------------------


def ray_decompose(a: WittVector) -> dict[Ray, dict[int, object]]:
    """Split into classical truncated Witt vectors, one per ray."""
    out = {ray: {} for ray in a.truncation.rays}
    for ray, comp in _by_ray(a).items():
        out[ray] = dict(comp)
    return out


def ray_assemble(
    truncation: TruncatedMonoid, ring: Ring, components: dict[Ray, dict[int, object]]
) -> WittVector:
    """Inverse of ray_decompose."""
    coeffs = {}
    for ray, comp in components.items():
        if ray not in truncation.rays:
            raise RaywittError(f"{ray} is not a ray of the truncation")
        allowed = set(truncation.ray_truncation_set(ray))
        for e, v in comp.items():
            if e not in allowed:
                raise RaywittError(f"coordinate {e} leaves the truncation on {ray}")
            coeffs[ray.multiple(e)] = v
    return WittVector(truncation, ring, coeffs)


def module_scalar(omega: WittVector, eta):
    """Scalar by which omega acts on a graded piece of nonzero degree.

    Graded modules restrict along the ghost map, so the action on degree
    eta is multiplication by gh(omega)(eta); degree 0 carries no action.
    """
    eta = tuple(int(x) for x in eta)
    if all(x == 0 for x in eta):
        raise RaywittError("the graded action is only defined in nonzero degrees")
    return ghost_component(omega, eta)


def teichmuller_scalar(ring: Ring, r, gamma, eta):
    """Ghost scalar of r[gamma] at an arbitrary lattice degree eta.

    Equals content(gamma) * r^e when eta = e * gamma for a positive
    integer e, and 0 otherwise; unlike a general vector's ghost this
    closed form needs no truncation data.
    """
    gamma = tuple(int(x) for x in gamma)
    eta = tuple(int(x) for x in eta)
    if all(x == 0 for x in eta):
        raise RaywittError("the graded action is only defined in nonzero degrees")
    e = None
    for g, h in zip(gamma, eta):
        if g == 0:
            if h != 0:
                return ring.zero()
        else:
            if h % g != 0:
                return ring.zero()
            q = h // g
            if e is None:
                e = q
            elif e != q:
                return ring.zero()
    if e is None or e < 1:
        return ring.zero()
    return ring.mul(ring.from_int(content_of(gamma)), ring.pow(r, e))
