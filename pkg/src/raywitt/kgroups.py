"""Formal ray-indexed decompositions of K-groups of polynomial-like rings.

Expressions are finite formal sums of opaque atoms K_(q-r), NK_(q-r) and
N^i K_q, plus ray families: a set of rays (all rays of a lattice Z^n, or
the rays through the strictly positive orthant of m chosen coordinates)
each carrying the same inner sum of shifted NK atoms.  Nothing is ever
evaluated; the calculus only expands, substitutes, canonicalizes and
counts.  The degree-shift operator L acts by NK_(q-r) -> NK_(q-r-1), and
(1+L)^k expands through binomial coefficients.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InternalInvariantError, RaywittError

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_MINUS = "−"
_OPLUS = "⊕"
_RHO = "ρ"
_SUBSET = "⊂"
_NPOS = "ℕ₊"


def _sup(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)


@dataclass(frozen=True)
class Atom:
    """K_(q-shift), NK_(q-shift), or the unexpanded N^power K_q."""

    kind: str  # "K" | "NK" | "NpowK"
    shift: int = 0
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("K", "NK", "NpowK"):
            raise RaywittError(f"unknown atom kind {self.kind!r}")
        if self.shift < 0 or self.power < 1:
            raise RaywittError("atom shift must be >= 0 and power >= 1")

    def sort_key(self):
        return ({"K": 0, "NK": 1, "NpowK": 2}[self.kind], self.power, self.shift)

    def render(self, q: str = "q") -> str:
        sub = q if self.shift == 0 else f"{{{q}{_MINUS}{self.shift}}}"
        if self.kind == "K":
            return f"K_{sub}"
        if self.kind == "NK":
            return f"NK_{sub}"
        return f"N{_sup(self.power)}K_{sub}"


@dataclass(frozen=True)
class RaySet:
    """A set of rays: the lattice Z^dim, or the open orthant of dim coords.

    Orthant sets may be embedded in a larger ambient lattice along a
    coordinate subset; distinct subsets give disjoint ray sets.
    """

    kind: str  # "orthant" | "lattice"
    dim: int
    ambient: int | None = None
    coords: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("orthant", "lattice"):
            raise RaywittError(f"unknown ray set kind {self.kind!r}")
        if self.dim < 1:
            raise RaywittError("ray sets need positive dimension")
        if self.coords is not None and len(self.coords) != self.dim:
            raise RaywittError("coordinate subset size must match the dimension")

    def sort_key(self):
        return (
            {"orthant": 0, "lattice": 1}[self.kind],
            self.dim,
            self.ambient or 0,
            self.coords or (),
        )

    def render(self) -> str:
        if self.kind == "lattice":
            body = f"Z{_sup(self.dim)}" if self.dim > 1 else "Z"
        else:
            body = f"{_NPOS}{_sup(self.dim)}" if self.dim > 1 else _NPOS
        return body


class FormalGroupExpr:
    """Canonical formal sum of atoms and ray families.

    atoms: Atom -> multiplicity; families: (RaySet, inner) -> multiplicity
    where inner is a sorted tuple of (shift, multiplicity) NK terms.
    Single-ray families (orthant of dimension 1) collapse to their inner
    atoms, and rank-1 lattice families collapse to two copies.
    """

    def __init__(self, atoms=None, families=None):
        merged: dict[Atom, int] = {}
        fam: dict[tuple, int] = {}

        def add_atom(atom: Atom, mult: int):
            if mult < 0:
                raise RaywittError("multiplicities are non-negative")
            if atom.kind == "NpowK" and atom.power == 1:
                atom = Atom("NK", atom.shift)
            if mult:
                merged[atom] = merged.get(atom, 0) + mult

        def add_family(rayset: RaySet, inner, mult: int):
            inner = tuple(sorted((int(s), int(m)) for s, m in inner if m))
            if not inner or not mult:
                return
            if rayset.kind == "orthant" and rayset.dim == 1:
                for s, m in inner:
                    add_atom(Atom("NK", s), m * mult)
                return
            if rayset.kind == "lattice" and rayset.dim == 1:
                for s, m in inner:
                    add_atom(Atom("NK", s), 2 * m * mult)
                return
            key = (rayset, inner)
            fam[key] = fam.get(key, 0) + mult

        for atom, mult in (atoms or {}).items():
            add_atom(atom, mult)
        for (rayset, inner), mult in (families or {}).items():
            add_family(rayset, inner, mult)
        self.atoms = dict(sorted(merged.items(), key=lambda kv: kv[0].sort_key()))
        self.families = dict(
            sorted(fam.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))
        )

    def __eq__(self, other):
        if not isinstance(other, FormalGroupExpr):
            return NotImplemented
        return self.atoms == other.atoms and self.families == other.families

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "FormalGroupExpr") -> "FormalGroupExpr":
        atoms = dict(self.atoms)
        for a, m in other.atoms.items():
            atoms[a] = atoms.get(a, 0) + m
        families = dict(self.families)
        for k, m in other.families.items():
            families[k] = families.get(k, 0) + m
        return FormalGroupExpr(atoms, families)

    def scaled(self, c: int) -> "FormalGroupExpr":
        if c < 0:
            raise RaywittError("multiplicities are non-negative")
        return FormalGroupExpr(
            {a: c * m for a, m in self.atoms.items()},
            {k: c * m for k, m in self.families.items()},
        )

    def render(self, q: str = "q") -> str:
        parts = []
        for atom, mult in self.atoms.items():
            head = f"{mult}·" if mult != 1 else ""
            parts.append(head + atom.render(q))
        for (rayset, inner), mult in self.families.items():
            inner_str = " ⊕ ".join(
                (f"{m}·" if m != 1 else "") + Atom("NK", s).render(q)
                for s, m in inner
            )
            head = f"{mult}·" if mult != 1 else ""
            parts.append(
                f"{head}{_OPLUS}_{{{_RHO}{_SUBSET}{rayset.render()}}}({inner_str})"
            )
        return f" {_OPLUS} ".join(parts) if parts else "0"

    def to_json(self, q: str = "q") -> dict:
        atoms = [
            {"kind": a.kind, "shift": a.shift, "power": a.power, "multiplicity": m}
            for a, m in self.atoms.items()
        ]
        families = [
            {
                "rays": {
                    "kind": rs.kind,
                    "dim": rs.dim,
                    "ambient": rs.ambient,
                    "coords": list(rs.coords) if rs.coords else None,
                },
                "inner": [{"shift": s, "multiplicity": m} for s, m in inner],
                "multiplicity": mult,
            }
            for (rs, inner), mult in self.families.items()
        ]
        return {"q": q, "atoms": atoms, "families": families, "text": self.render(q)}


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def one_plus_shift_power(k: int) -> tuple[tuple[int, int], ...]:
    """(1+L)^k applied to NK_q, as (shift, multiplicity) pairs."""
    return tuple((r, binomial(k, r)) for r in range(k + 1))


# -- the decomposition formulas -------------------------------------------------


def fundamental_theorem(n: int) -> FormalGroupExpr:
    """K of an n-variable polynomial ring: K_q plus binomial copies of N^i K_q."""
    if n < 0:
        raise RaywittError("n must be non-negative")
    atoms = {Atom("K"): 1}
    for i in range(1, n + 1):
        atoms[Atom("NpowK", power=i)] = binomial(n, i)
    return FormalGroupExpr(atoms)


def davis_laurent(n: int) -> FormalGroupExpr:
    """K of the n-variable Laurent ring: binomial shifts of K_q plus one
    family over the rays of Z^n with inner (1+L)^(n-1) NK_q."""
    if n < 1:
        raise RaywittError("n must be at least 1")
    atoms = {Atom("K", shift=r): binomial(n, r) for r in range(n + 1)}
    families = {(RaySet("lattice", n), one_plus_shift_power(n - 1)): 1}
    return FormalGroupExpr(atoms, families)


def nk_power(n: int) -> FormalGroupExpr:
    """N^n K_q as a family over the open-orthant rays with (1+L)^(n-1) NK_q."""
    if n < 1:
        raise RaywittError("n must be at least 1")
    families = {(RaySet("orthant", n), one_plus_shift_power(n - 1)): 1}
    return FormalGroupExpr({}, families)


def polynomial_decomposition(n: int) -> FormalGroupExpr:
    """Ray-indexed form of K of an n-variable polynomial ring."""
    if n < 1:
        raise RaywittError("n must be at least 1")
    out = FormalGroupExpr({Atom("K"): 1})
    for r in range(1, n + 1):
        out = out + nk_power(r).scaled(binomial(n, r))
    return out


def substitute_nk_powers(expr: FormalGroupExpr) -> FormalGroupExpr:
    """Replace each unexpanded N^i K_q atom by its ray-family expansion."""
    out = FormalGroupExpr(
        {a: m for a, m in expr.atoms.items() if a.kind != "NpowK"}, expr.families
    )
    for atom, mult in expr.atoms.items():
        if atom.kind == "NpowK":
            if atom.shift != 0:
                raise RaywittError("shifted N-power atoms are not substituted")
            out = out + nk_power(atom.power).scaled(mult)
    return out


# -- explicit ray enumeration -----------------------------------------------------


def orthant_rays(m: int, height: int) -> list[tuple[int, ...]]:
    """Primitive vectors with all coordinates in 1..height and gcd 1."""
    if height < 1:
        raise RaywittError("height must be at least 1")
    out = []
    for v in itertools.product(range(1, height + 1), repeat=m):
        if math.gcd(*v) == 1:
            out.append(v)
    return sorted(out)


def lattice_rays(n: int, height: int) -> list[tuple[int, ...]]:
    """Primitive vectors of Z^n with coordinates in [-height, height].

    Each primitive vector spans its own ray; opposite vectors give two
    distinct rays.
    """
    if height < 1:
        raise RaywittError("height must be at least 1")
    out = []
    for v in itertools.product(range(-height, height + 1), repeat=n):
        if all(x == 0 for x in v):
            continue
        if math.gcd(*(abs(x) for x in v)) == 1:
            out.append(v)
    return sorted(out)


def rays_of(rayset: RaySet, height: int) -> list[tuple[int, ...]]:
    if rayset.kind == "lattice":
        return lattice_rays(rayset.dim, height)
    rays = orthant_rays(rayset.dim, height)
    if rayset.coords is None:
        return rays
    ambient = rayset.ambient or max(rayset.coords) + 1
    out = []
    for v in rays:
        w = [0] * ambient
        for c, x in zip(rayset.coords, v):
            w[c] = x
        out.append(tuple(w))
    return out


def instantiate_rays(expr: FormalGroupExpr, height: int, q: str = "q") -> dict:
    """Expand each ray family into its finitely many rays below a height."""
    if height < 1:
        raise RaywittError("height must be at least 1")
    doc = expr.to_json(q)
    for family in doc["families"]:
        rs = family["rays"]
        rayset = RaySet(
            rs["kind"],
            rs["dim"],
            rs["ambient"],
            tuple(rs["coords"]) if rs["coords"] else None,
        )
        rays = rays_of(rayset, height)
        family["height"] = height
        family["ray_list"] = [list(v) for v in rays]
        family["ray_count"] = len(rays)
    return doc


# -- signed permutations and orbit counts ------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Permutation of n coordinates combined with per-coordinate signs.

    Acts on vectors by (g v)(perm[i]) = signs[perm[i]] * v[i].
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise RaywittError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise RaywittError("signs must be +-1")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    def apply(self, v):
        out = [0] * self.n
        for i, x in enumerate(v):
            out[self.perm[i]] = self.signs[self.perm[i]] * x
        return tuple(out)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self * other).apply == self.apply(other.apply(.))."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        signs = tuple(
            self.signs[i] * other.signs[_inverse(self.perm)[i]] for i in range(self.n)
        )
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        inv = tuple(_inverse(self.perm))
        signs = tuple(self.signs[self.perm[j]] for j in range(self.n))
        return SignedPermutation(inv, signs)

    def act_on_signed_subset(self, subset, signs):
        """Image of (coordinate subset, sign pattern) under the action."""
        out = {}
        for c, s in zip(subset, signs):
            out[self.perm[c]] = self.signs[self.perm[c]] * s
        keys = tuple(sorted(out))
        return keys, tuple(out[k] for k in keys)


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def signed_permutations(n: int):
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


def wreath_orbit(n: int, r: int) -> dict:
    """Orbit and stabilizer sizes of the rank-r positive ray block under
    signed permutations of n coordinates.

    Returns the closed-form counts; for n <= 6 they are re-verified by
    explicit orbit enumeration.
    """
    if not 0 <= r <= n:
        raise RaywittError("need 0 <= r <= n")
    orbit = 2**r * binomial(n, r)
    stabilizer = math.factorial(r) * 2 ** (n - r) * math.factorial(n - r)
    if n <= 6:
        base = (tuple(range(r)), (1,) * r)
        seen = set()
        stab = 0
        for g in signed_permutations(n):
            image = g.act_on_signed_subset(*base)
            seen.add(image)
            if image == base:
                stab += 1
        if len(seen) != orbit or stab != stabilizer:
            raise InternalInvariantError(
                f"orbit enumeration disagrees with the closed form at (n={n}, r={r})"
            )
    return {"orbit_size": orbit, "stabilizer_order": stabilizer}


def symmetric_orbit(n: int, r: int) -> dict:
    """Same counts under coordinate permutations only (no signs)."""
    if not 0 <= r <= n:
        raise RaywittError("need 0 <= r <= n")
    orbit = binomial(n, r)
    stabilizer = math.factorial(r) * math.factorial(n - r)
    if n <= 6:
        base = frozenset(range(r))
        seen = set()
        stab = 0
        for perm in itertools.permutations(range(n)):
            image = frozenset(perm[c] for c in base)
            seen.add(image)
            if image == base:
                stab += 1
        if len(seen) != orbit or stab != stabilizer:
            raise InternalInvariantError(
                f"orbit enumeration disagrees with the closed form at (n={n}, r={r})"
            )
    return {"orbit_size": orbit, "stabilizer_order": stabilizer}
