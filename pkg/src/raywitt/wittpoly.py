"""Universal integral polynomial laws for truncated big Witt arithmetic.

For a divisor-closed finite set S of positive integers, the sum, product
and Frobenius of Witt coordinate vectors are given by polynomials with
integer coefficients in the coordinates a_d, b_d (d in S).  They are
pinned down by the requirement that the weighted power sums

    gh_e = sum over d | e of  d * a_d^(e/d)

are additive/multiplicative, derived here once per S by a triangular
solve over Q, checked to be integral, and cached.  Because the
coefficients are integers, evaluating them in any commutative ring gives
the correct operations even when the ring has torsion.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .errors import InternalInvariantError, RaywittError

# A monomial is a sorted tuple of ((side, d), exponent) pairs, side 0 for
# the a-variables and 1 for the b-variables; a polynomial is a monomial ->
# coefficient dict.

_ZERO: dict = {}


def _mono_mul(m1, m2):
    out = dict(m1)
    for var, e in m2:
        out[var] = out.get(var, 0) + e
    return tuple(sorted(out.items()))


def poly_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_scale(p, c):
    if not c:
        return {}
    return {mono: coeff * c for mono, coeff in p.items()}


def poly_mul(p, q):
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = _mono_mul(m1, m2)
            s = out.get(mono, 0) + c1 * c2
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def poly_pow(p, e):
    out = {(): 1}
    base = p
    while e:
        if e & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base)
        e >>= 1
    return out


def _variable(side, d):
    return {(((side, d), 1),): 1}


def divisors(e: int) -> list[int]:
    return [d for d in range(1, e + 1) if e % d == 0]


def _check_truncation_set(S):
    S = tuple(sorted(set(int(e) for e in S)))
    if not S or S[0] < 1:
        raise RaywittError("a truncation set consists of positive integers")
    members = set(S)
    for e in S:
        for d in divisors(e):
            if d not in members:
                raise RaywittError(f"truncation set {S} is not divisor-closed: {d} | {e}")
    return S


def ghost_polynomial(side: int, e: int) -> dict:
    """gh_e as a polynomial in one side's coordinates."""
    out: dict = {}
    for d in divisors(e):
        out = poly_add(out, poly_scale(poly_pow(_variable(side, d), e // d), d))
    return out


def _integralize(p, what):
    out = {}
    for mono, c in p.items():
        c = Fraction(c)
        if c.denominator != 1:
            raise InternalInvariantError(f"non-integral coefficient {c} in {what}")
        if c.numerator:
            out[mono] = c.numerator
    return out


def _derive_binary(S, combine):
    """Triangular solve for polynomials P_e with gh_e(P) = combine(gh_e)."""
    polys: dict[int, dict] = {}
    for e in S:
        rhs = combine(ghost_polynomial(0, e), ghost_polynomial(1, e))
        for d in divisors(e):
            if d == e:
                continue
            rhs = poly_add(rhs, poly_scale(poly_pow(polys[d], e // d), -d))
        polys[e] = _integralize(poly_scale(rhs, Fraction(1, e)), f"coordinate {e}")
    return polys


_cache: dict = {}
_cache_lock = threading.Lock()


def _cached(key, builder):
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    value = builder()
    with _cache_lock:
        return _cache.setdefault(key, value)


def sum_polynomials(S) -> dict[int, dict]:
    """Coordinates of a + b on the truncation set S."""
    S = _check_truncation_set(S)
    return _cached(("sum", S), lambda: _derive_binary(S, poly_add))


def product_polynomials(S) -> dict[int, dict]:
    """Coordinates of a * b on the truncation set S."""
    S = _check_truncation_set(S)
    return _cached(("product", S), lambda: _derive_binary(S, poly_mul))


def frobenius_polynomials(S, m: int) -> dict[int, dict]:
    """Coordinates of F_m(a), indexed by {e : m*e in S}, in the a-variables."""
    if m < 1:
        raise RaywittError("Frobenius index must be positive")
    S = _check_truncation_set(S)

    def build():
        members = set(S)
        target = sorted(e for e in range(1, max(S, default=0) + 1) if m * e in members)
        polys: dict[int, dict] = {}
        for e in target:
            rhs = ghost_polynomial(0, m * e)
            for d in divisors(e):
                if d == e:
                    continue
                rhs = poly_add(rhs, poly_scale(poly_pow(polys[d], e // d), -d))
            polys[e] = _integralize(poly_scale(rhs, Fraction(1, e)), f"Frobenius coordinate {e}")
        return polys

    return _cached(("frobenius", S, m), build)


def evaluate(poly, ring, a_coords, b_coords=None):
    """Evaluate an integer polynomial with coordinates drawn from a ring.

    Missing coordinates are zero, so whole monomials touching them drop.
    """
    total = ring.zero()
    for mono, c in poly.items():
        term = ring.from_int(c)
        dead = False
        for (side, d), e in mono:
            coords = a_coords if side == 0 else b_coords
            val = None if coords is None else coords.get(d)
            if val is None:
                dead = True
                break
            term = ring.mul(term, ring.pow(val, e))
        if not dead:
            total = ring.add(total, term)
    return total
