"""Exact coefficient rings: Z, Q, Z/p, and sparse polynomial rings.

A ring object is a stateless bundle of operations; elements are plain
Python values (int, Fraction, or an exponent->coefficient dict for
polynomials).  Division is exact-or-error everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExactnessError, RaywittError


class Ring:
    name = "ring"

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero())

    def divexact(self, a, b):
        raise NotImplementedError

    def pow(self, a, e: int):
        if e < 0:
            raise RaywittError("negative powers are not supported")
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"

    def zero(self):
        return 0

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def divexact(self, a, b):
        if b == 0:
            raise ExactnessError("division by zero in Z")
        q, r = divmod(a, b)
        if r:
            raise ExactnessError(f"{a} is not divisible by {b} in Z")
        return q

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        return int(s)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")


class RationalField(Ring):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def divexact(self, a, b):
        if b == 0:
            raise ExactnessError("division by zero in Q")
        return Fraction(a) / b

    def to_str(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, s):
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


class PrimeField(Ring):
    """Z/p for a prime p; elements are canonical residues in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise RaywittError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def divexact(self, a, b):
        if b % self.p == 0:
            raise ExactnessError(f"division by zero in {self.name}")
        return (a * pow(b, -1, self.p)) % self.p

    def to_str(self, a):
        return str(a % self.p)

    def parse(self, s):
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


ZZ = IntegerRing()
QQ = RationalField()


class PolynomialRing(Ring):
    """Sparse multivariate polynomials over a base ring.

    Elements are dicts mapping exponent tuples to nonzero base
    coefficients; the empty dict is zero.
    """

    def __init__(self, base: Ring, names: tuple[str, ...]):
        if isinstance(base, PolynomialRing):
            raise RaywittError("nested polynomial rings are not supported")
        if not names:
            raise RaywittError("a polynomial ring needs at least one variable")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", nm):
                raise RaywittError(f"bad variable name {nm!r}")
        self.base = base
        self.names = tuple(names)
        self.name = f"{base.name}[{','.join(names)}]"

    @property
    def nvars(self):
        return len(self.names)

    def variable(self, i: int):
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return {exp: self.base.one()}

    def zero(self):
        return {}

    def from_int(self, n):
        c = self.base.from_int(n)
        return {} if self.base.is_zero(c) else {(0,) * self.nvars: c}

    def constant(self, c):
        return {} if self.base.is_zero(c) else {(0,) * self.nvars: c}

    def add(self, a, b):
        out = dict(a)
        for exp, c in b.items():
            s = self.base.add(out.get(exp, self.base.zero()), c)
            if self.base.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return out

    def neg(self, a):
        return {exp: self.base.neg(c) for exp, c in a.items()}

    def mul(self, a, b):
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                s = self.base.add(out.get(exp, self.base.zero()), self.base.mul(c1, c2))
                if self.base.is_zero(s):
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return out

    def eq(self, a, b):
        if set(a) != set(b):
            return False
        return all(self.base.eq(a[e], b[e]) for e in a)

    def divexact(self, a, b):
        """Exact division, driven by the lexicographically leading term."""
        if not b:
            raise ExactnessError(f"division by zero in {self.name}")
        rem = dict(a)
        out: dict = {}
        lead = max(b)
        while rem:
            top = max(rem)
            exp = tuple(x - y for x, y in zip(top, lead))
            if any(x < 0 for x in exp):
                raise ExactnessError(f"inexact polynomial division in {self.name}")
            coeff = self.base.divexact(rem[top], b[lead])
            out[exp] = coeff
            rem = self.add(rem, self.neg(self.mul({exp: coeff}, b)))
        return out

    def _term_str(self, exp, c) -> str:
        factors = []
        for nm, e in zip(self.names, exp):
            if e == 1:
                factors.append(nm)
            elif e > 1:
                factors.append(f"{nm}^{e}")
        cstr = self.base.to_str(c)
        if not factors:
            return cstr
        if cstr == "1":
            return "*".join(factors)
        if cstr == "-1":
            return "-" + "*".join(factors)
        return "*".join([cstr] + factors)

    def to_str(self, a):
        if not a:
            return "0"
        terms = [self._term_str(exp, a[exp]) for exp in sorted(a, reverse=True)]
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def parse(self, s):
        s = s.strip()
        if s in ("", "0"):
            return {}
        s = s.replace("-", "+-")
        out = self.zero()
        for chunk in s.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            out = self.add(out, self._parse_term(chunk))
        return out

    def _parse_term(self, chunk: str):
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        coeff = self.base.one()
        exp = [0] * self.nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
            if m:
                nm, e = m.group(1), int(m.group(2) or 1)
                if nm not in self.names:
                    raise RaywittError(f"unknown variable {nm!r} in {chunk!r}")
                exp[self.names.index(nm)] += e
            else:
                coeff = self.base.mul(coeff, self.base.parse(factor))
        if sign < 0:
            coeff = self.base.neg(coeff)
        return {tuple(exp): coeff} if not self.base.is_zero(coeff) else {}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.base == self.base
            and other.names == self.names
        )

    def __hash__(self):
        return hash(("PolynomialRing", self.base.name, self.names))


def convert(value, src: Ring, dst: Ring):
    """Move a value along the evident homomorphism, or fail loudly."""
    if src == dst:
        return value
    if isinstance(src, IntegerRing):
        if isinstance(dst, (RationalField, PrimeField)):
            return dst.from_int(value)
        if isinstance(dst, PolynomialRing):
            return dst.constant(convert(value, src, dst.base))
    if isinstance(src, RationalField):
        if isinstance(dst, RationalField):
            return value
        if isinstance(dst, PolynomialRing) and isinstance(dst.base, RationalField):
            return dst.constant(value)
    if isinstance(src, PolynomialRing) and isinstance(dst, PolynomialRing):
        if src.names == dst.names:
            return {exp: convert(c, src.base, dst.base) for exp, c in value.items()}
    raise RaywittError(f"no conversion from {src.name} to {dst.name}")


def ring_to_json(ring: Ring) -> dict:
    if isinstance(ring, IntegerRing):
        return {"kind": "Z"}
    if isinstance(ring, RationalField):
        return {"kind": "Q"}
    if isinstance(ring, PrimeField):
        return {"kind": "Fp", "p": ring.p}
    if isinstance(ring, PolynomialRing):
        return {"kind": "poly", "base": ring_to_json(ring.base), "vars": list(ring.names)}
    raise RaywittError(f"ring {ring.name} has no JSON form")


def ring_from_json(doc: dict) -> Ring:
    kind = doc.get("kind")
    if kind == "Z":
        return ZZ
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(doc["p"]))
    if kind == "poly":
        return PolynomialRing(ring_from_json(doc["base"]), tuple(doc["vars"]))
    raise RaywittError(f"unknown ring kind {kind!r}")
