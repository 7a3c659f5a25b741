"""Finite-dimensional graded algebras given by structure constants.

An algebra has a distinguished basis, a grading of each basis element by
a member of a truncated monoid (or the zero degree), and a full
multiplication table over an exact field.  Products whose degree leaves
the truncation are zero; that is consistent because the missing degrees
form a monoid ideal.  The degree-0 part is itself an algebra (the ring
the homology modules live over).
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import ExactnessError, RaywittError
from .monoid import TruncatedMonoid, trivial_truncation
from .rings import PrimeField, QQ, RationalField, Ring


def _field_tag(ring: Ring):
    if isinstance(ring, RationalField):
        return linalg.QQ
    if isinstance(ring, PrimeField):
        return linalg.mod_field(ring.p)
    raise RaywittError("graded algebras require field coefficients (Q or Z/p)")


class GradedAlgebra:
    def __init__(
        self,
        grading: TruncatedMonoid,
        labels,
        degrees,
        table,
        field: Ring = QQ,
        check: bool = True,
    ):
        self.grading = grading
        self.labels = tuple(labels)
        self.degrees = tuple(tuple(d) for d in degrees)
        self.field = field
        self.field_tag = _field_tag(field)
        self.dim = len(self.labels)
        self.unit_index = 0
        self._table = {
            (i, j): {k: v for k, v in entry.items() if not field.is_zero(v)}
            for (i, j), entry in table.items()
        }
        zero_deg = (0,) * grading.monoid.rank
        self._zero_degree = zero_deg
        if len(self.degrees) != self.dim:
            raise RaywittError("labels and degrees disagree in length")
        for d in self.degrees:
            if d != zero_deg and not grading.is_member(d):
                raise RaywittError(f"degree {d} is not a member of the truncation")
        if self.degrees[0] != zero_deg:
            raise RaywittError("basis element 0 must be the unit, in degree 0")
        self.commutative = all(
            self._table.get((i, j), {}) == self._table.get((j, i), {})
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )
        if check:
            self._validate()

    # -- structure ------------------------------------------------------------

    def mul_basis(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def degree(self, i: int):
        return self.degrees[i]

    def is_degree_zero(self, i: int) -> bool:
        return self.degrees[i] == self._zero_degree

    def degree_zero_indices(self):
        return [i for i in range(self.dim) if self.is_degree_zero(i)]

    def _validate(self):
        F = self.field
        u = self.unit_index
        for i in range(self.dim):
            if self.mul_basis(u, i) != {i: F.one()} or self.mul_basis(i, u) != {i: F.one()}:
                raise RaywittError(f"basis element {self.labels[i]} breaks unitality")
        members = self.grading.element_set
        zero = self._zero_degree
        for (i, j), entry in self._table.items():
            target = tuple(a + b for a, b in zip(self.degrees[i], self.degrees[j]))
            inside = target == zero or target in members
            if not inside and entry:
                raise RaywittError(
                    f"product {self.labels[i]} * {self.labels[j]} should be truncated to 0"
                )
            for k in entry:
                if self.degrees[k] != target:
                    raise RaywittError(
                        f"product {self.labels[i]} * {self.labels[j]} is not homogeneous"
                    )
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    left = self.multiply(self.mul_basis(i, j), {k: F.one()})
                    right = self.multiply({i: F.one()}, self.mul_basis(j, k))
                    if not self.elements_equal(left, right):
                        raise RaywittError(
                            f"associativity fails at "
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    # -- element arithmetic (elements are sparse index -> coefficient dicts) --

    def multiply(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, ci in x.items():
            for j, cj in y.items():
                c = F.mul(ci, cj)
                for k, s in self.mul_basis(i, j).items():
                    acc = F.add(out.get(k, F.zero()), F.mul(c, s))
                    if F.is_zero(acc):
                        out.pop(k, None)
                    else:
                        out[k] = acc
        return out

    def add_elements(self, x: dict, y: dict) -> dict:
        F = self.field
        out = dict(x)
        for k, v in y.items():
            acc = F.add(out.get(k, F.zero()), v)
            if F.is_zero(acc):
                out.pop(k, None)
            else:
                out[k] = acc
        return out

    def scale(self, c, x: dict) -> dict:
        F = self.field
        if F.is_zero(c):
            return {}
        return {k: F.mul(c, v) for k, v in x.items()}

    def elements_equal(self, x: dict, y: dict) -> bool:
        F = self.field
        keys = set(x) | set(y)
        z = F.zero()
        return all(F.eq(x.get(k, z), y.get(k, z)) for k in keys)

    def element_degree(self, x: dict):
        """Degree of a homogeneous element; error if mixed."""
        degs = {self.degrees[k] for k in x}
        if len(degs) > 1:
            raise RaywittError("element is not homogeneous")
        return degs.pop() if degs else self._zero_degree

    def basis_element(self, i: int) -> dict:
        return {i: self.field.one()}

    def element_to_str(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = self.field.to_str(x[k])
            lbl = self.labels[k]
            if lbl == "1":
                parts.append(c)
            elif c == "1":
                parts.append(lbl)
            else:
                parts.append(f"{c}*{lbl}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, field={self.field.name})"

    # -- constructions ---------------------------------------------------------

    @classmethod
    def monoid_algebra(cls, truncation: TruncatedMonoid, field: Ring = QQ) -> "GradedAlgebra":
        """k[members]: basis 1 and t(gamma), products add degrees or die."""
        zero_deg = (0,) * truncation.monoid.rank
        degrees = [zero_deg] + list(truncation.elements)
        labels = ["1"] + [_monomial_label(g) for g in truncation.elements]
        index = {d: i for i, d in enumerate(degrees)}
        table = {}
        one = field.one()
        for i, di in enumerate(degrees):
            for j, dj in enumerate(degrees):
                target = tuple(a + b for a, b in zip(di, dj))
                k = index.get(target)
                table[(i, j)] = {k: one} if k is not None else {}
        return cls(truncation, labels, degrees, table, field)

    @classmethod
    def degree_zero_power(
        cls, field: Ring = QQ, power: int = 2, name: str = "y", rank: int = 1
    ) -> "GradedAlgebra":
        """k[name]/(name^power), concentrated in degree 0."""
        if power < 1:
            raise RaywittError("power must be at least 1")
        grading = trivial_truncation(rank)
        zero_deg = (0,) * rank
        labels = ["1"] + [name if e == 1 else f"{name}^{e}" for e in range(1, power)]
        degrees = [zero_deg] * power
        table = {}
        one = field.one()
        for i in range(power):
            for j in range(power):
                table[(i, j)] = {i + j: one} if i + j < power else {}
        return cls(grading, labels, degrees, table, field)

    def tensor_degree_zero(self, other: "GradedAlgebra") -> "GradedAlgebra":
        """Tensor with an algebra concentrated in degree 0, graded by self."""
        if other.field != self.field:
            raise RaywittError("tensor factors must share the coefficient field")
        if any(not other.is_degree_zero(i) for i in range(other.dim)):
            raise RaywittError("the second factor must be concentrated in degree 0")
        F = self.field
        dim_r = other.dim

        def idx(i_r, j_a):
            return j_a * dim_r + i_r

        labels = []
        degrees = []
        for j in range(self.dim):
            for i in range(dim_r):
                labels.append(_pair_label(other.labels[i], self.labels[j]))
                degrees.append(self.degrees[j])
        table = {}
        for j1 in range(self.dim):
            for i1 in range(dim_r):
                for j2 in range(self.dim):
                    for i2 in range(dim_r):
                        entry: dict = {}
                        for ir, cr in other.mul_basis(i1, i2).items():
                            for ja, ca in self.mul_basis(j1, j2).items():
                                entry[idx(ir, ja)] = F.mul(cr, ca)
                        table[(idx(i1, j1), idx(i2, j2))] = entry
        return GradedAlgebra(self.grading, labels, degrees, table, F)


def _monomial_label(gamma) -> str:
    if len(gamma) == 1:
        return "t" if gamma[0] == 1 else f"t^{gamma[0]}"
    return "t(" + ",".join(str(x) for x in gamma) + ")"


def _pair_label(left: str, right: str) -> str:
    if left == "1":
        return right
    if right == "1":
        return left
    return f"{left}*{right}"


class FiniteAlgebraRing(Ring):
    """A commutative finite-dimensional algebra viewed as a coefficient ring.

    Elements are coordinate tuples over Q in the algebra's basis.  This is
    what lets Witt vectors carry coefficients in rings like k[y]/(y^2) so
    their ghost components can act on modules over that ring.
    """

    def __init__(self, algebra: GradedAlgebra):
        if not algebra.commutative:
            raise RaywittError("coefficient algebras must be commutative")
        if not isinstance(algebra.field, RationalField):
            raise RaywittError("coefficient algebras are supported over Q")
        self.algebra = algebra
        self.name = f"Q-algebra[{','.join(algebra.labels)}]"

    def _from_element(self, x: dict):
        return tuple(x.get(i, Fraction(0)) for i in range(self.algebra.dim))

    def _to_element(self, v) -> dict:
        return {i: c for i, c in enumerate(v) if c}

    def zero(self):
        return (Fraction(0),) * self.algebra.dim

    def from_int(self, n):
        out = [Fraction(0)] * self.algebra.dim
        out[self.algebra.unit_index] = Fraction(n)
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = self.algebra.multiply(self._to_element(a), self._to_element(b))
        return self._from_element(prod)

    def eq(self, a, b):
        return a == b

    def divexact(self, a, b):
        """Solve b * x = a exactly, if a lies in the image of b."""
        dim = self.algebra.dim
        cols = []
        for j in range(dim):
            col = self.mul(b, tuple(Fraction(1) if i == j else Fraction(0) for i in range(dim)))
            cols.append(list(col))
        sol = linalg.solve_columns(cols, list(a))
        if sol is None:
            raise ExactnessError(f"{self.to_str(a)} is not divisible by {self.to_str(b)}")
        return tuple(sol)

    def to_str(self, a):
        return self.algebra.element_to_str(self._to_element(a))

    def parse(self, s):
        raise RaywittError("algebra-valued coefficients have no parser")

    def element(self, x: dict):
        """Coordinate tuple of a sparse algebra element."""
        return self._from_element(x)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebraRing) and other.algebra is self.algebra

    def __hash__(self):
        return hash(("FiniteAlgebraRing", id(self.algebra)))
