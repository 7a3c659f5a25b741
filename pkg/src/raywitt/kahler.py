"""Kahler differential forms of commutative graded algebras.

Forms of exterior degree n are presented by generators b * d(e_j1) ^ ...
^ d(e_jn) over the algebra's basis, modulo the submodule generated by
the Leibniz relations d(e_i e_j) - e_i d(e_j) - e_j d(e_i) wedged with
anything.  The unit has d(1) = 0, so it contributes no generator.  The
presentation splits by monoid degree into finite cells; each cell is
reduced once by exact elimination and elements are compared through
their canonical reduced coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .algebra import GradedAlgebra
from .errors import RaywittError
from .rings import RationalField


class DeRhamComplex:
    """Forms of exterior degree 0..n_top with the de Rham differential."""

    def __init__(self, algebra: GradedAlgebra, n_top: int = 2):
        if not algebra.commutative:
            raise RaywittError("differential forms require a commutative algebra")
        if n_top < 0:
            raise RaywittError("n_top must be non-negative")
        self.algebra = algebra
        self.n_top = n_top
        self.field = algebra.field
        self.tag = algebra.field_tag
        unit = algebra.unit_index
        self._letters = tuple(i for i in range(algebra.dim) if i != unit)
        # generator tables: (n, eta) -> list of (b, J); positions for lookups
        self._gens: dict[tuple[int, tuple], list[tuple]] = {}
        self._pos: dict[tuple[int, tuple], dict[tuple, int]] = {}
        for n in range(n_top + 1):
            self._build_generators(n)
        self._reductions: dict[tuple[int, tuple], tuple] = {}

    def _build_generators(self, n: int):
        degs = self.algebra.degrees
        table: dict[tuple, list[tuple]] = {}
        for J in itertools.combinations(self._letters, n):
            base = tuple(0 for _ in range(self.algebra.grading.monoid.rank))
            jdeg = base
            for j in J:
                jdeg = tuple(a + b for a, b in zip(jdeg, degs[j]))
            for b in range(self.algebra.dim):
                eta = tuple(a + c for a, c in zip(jdeg, degs[b]))
                table.setdefault(eta, []).append((b, J))
        for eta, gens in table.items():
            self._gens[(n, eta)] = gens
            self._pos[(n, eta)] = {g: i for i, g in enumerate(gens)}

    def degrees_at(self, n: int) -> list[tuple]:
        return sorted(eta for (m, eta) in self._gens if m == n)

    def generators(self, n: int, eta) -> list[tuple]:
        return self._gens.get((n, tuple(eta)), [])

    def zero_form(self, n: int, eta):
        return [self.field.zero()] * len(self.generators(n, eta))

    def generator_form(self, n: int, eta, b: int, J) -> list:
        vec = self.zero_form(n, eta)
        vec[self._pos[(n, tuple(eta))][(b, tuple(sorted(J)))]] = self.field.one()
        return vec

    # -- relations ---------------------------------------------------------------

    def _relation_one_forms(self):
        """Leibniz defects d(e_i e_j) - e_i de_j - e_j de_i as (coeff, (a, k)) lists."""
        A = self.algebra
        F = self.field
        unit = A.unit_index
        out = []
        for i in self._letters:
            for j in self._letters:
                if j < i:
                    continue
                terms = []
                for k, c in A.mul_basis(i, j).items():
                    if k != unit:
                        terms.append((c, (unit, k)))
                terms.append((F.from_int(-1), (i, j)))
                terms.append((F.from_int(-1), (j, i)))
                out.append(terms)
        return out

    def _reduction(self, n: int, eta):
        """Echelon data of the relation span inside one cell."""
        eta = tuple(eta)
        key = (n, eta)
        cached = self._reductions.get(key)
        if cached is not None:
            return cached
        gens = self._gens.get(key, [])
        rows = []
        if gens and n >= 1:
            pos = self._pos[key]
            F = self.field
            A = self.algebra
            for rel in self._relation_one_forms():
                for J_rest in itertools.combinations(self._letters, n - 1):
                    for b in range(A.dim):
                        row = [F.zero()] * len(gens)
                        hit = False
                        for c, (a, k) in rel:
                            if k in J_rest:
                                continue
                            wedge, sign = _insert(k, J_rest)
                            for bb, cc in A.mul_basis(b, a).items():
                                idx = pos.get((bb, wedge))
                                if idx is None:
                                    continue
                                coeff = F.mul(c, cc)
                                if sign < 0:
                                    coeff = F.neg(coeff)
                                row[idx] = F.add(row[idx], coeff)
                                hit = True
                        if hit:
                            rows.append(row)
        rank, pivots, ech = linalg.echelon(rows, self.tag) if rows else (0, [], [])
        result = (rank, pivots, ech)
        self._reductions[key] = result
        return result

    def dim(self, n: int, eta) -> int:
        rank, _, _ = self._reduction(n, eta)
        return len(self.generators(n, eta)) - rank

    def reduce(self, n: int, eta, vec):
        """Canonical coordinates of a form modulo the relation span."""
        rank, pivots, ech = self._reduction(n, tuple(eta))
        F = self.field
        out = list(vec)
        for r in range(rank):
            p = pivots[r]
            if F.is_zero(out[p]):
                continue
            row = ech[r]
            factor = _field_div(F, out[p], row[p])
            for j in range(p, len(out)):
                if row[j]:
                    out[j] = F.sub(out[j], F.mul(factor, _as_field(F, row[j])))
        return out

    def is_zero_form(self, n: int, eta, vec) -> bool:
        reduced = self.reduce(n, eta, vec)
        return all(self.field.is_zero(c) for c in reduced)

    def forms_equal(self, n: int, eta, u, v) -> bool:
        F = self.field
        diff = [F.sub(a, b) for a, b in zip(u, v)]
        return self.is_zero_form(n, eta, diff)

    # -- operations ---------------------------------------------------------------

    def d(self, n: int, eta, vec):
        """de Rham differential into the (n+1, eta) cell (on generators)."""
        eta = tuple(eta)
        A = self.algebra
        F = self.field
        unit = A.unit_index
        src = self.generators(n, eta)
        tgt_pos = self._pos.get((n + 1, eta), {})
        out = [F.zero()] * len(tgt_pos)
        for i, c in enumerate(vec):
            if F.is_zero(c):
                continue
            b, J = src[i]
            if b == unit or b in J:
                continue
            wedge, sign = _insert(b, J)
            idx = tgt_pos.get((unit, wedge))
            if idx is None:
                continue
            out[idx] = F.add(out[idx], F.neg(c) if sign < 0 else c)
        return out

    def multiply(self, n: int, eta, element: dict, vec):
        """Multiply a form by a homogeneous algebra element; returns (eta', vec')."""
        eta = tuple(eta)
        A = self.algebra
        F = self.field
        delta = A.element_degree(element)
        target = tuple(a + b for a, b in zip(eta, delta))
        src = self.generators(n, eta)
        tgt_pos = self._pos.get((n, target), {})
        out = [F.zero()] * len(tgt_pos)
        for i, c in enumerate(vec):
            if F.is_zero(c):
                continue
            b, J = src[i]
            for a, ca in element.items():
                for bb, cc in A.mul_basis(a, b).items():
                    idx = tgt_pos.get((bb, J))
                    if idx is None:
                        continue
                    out[idx] = F.add(out[idx], F.mul(c, F.mul(ca, cc)))
        return target, out

    def d_of_element(self, element: dict):
        """d: A -> 1-forms; returns (eta, vec) for a homogeneous element."""
        A = self.algebra
        eta = A.element_degree(element)
        vec0 = [self.field.zero()] * len(self.generators(0, eta))
        pos0 = self._pos.get((0, eta), {})
        for b, c in element.items():
            vec0[pos0[(b, ())]] = c
        return eta, self.d(0, eta, vec0)

    def form_to_str(self, n: int, eta, vec) -> str:
        A = self.algebra
        parts = []
        for i, c in enumerate(vec):
            if self.field.is_zero(c):
                continue
            b, J = self.generators(n, eta)[i]
            wedge = "^".join(f"d{A.labels[j]}" for j in J) or "1"
            head = A.labels[b]
            cs = self.field.to_str(c)
            term = "*".join(x for x in (cs if cs != "1" else "", head if head != "1" else "", wedge) if x)
            parts.append(term or "1")
        return " + ".join(parts) if parts else "0"


def _insert(k: int, J):
    """Insert index k into the sorted tuple J; returns (tuple, sign)."""
    pos = 0
    for j in J:
        if j == k:
            return None, 0
        if j < k:
            pos += 1
    return tuple(J[:pos] + (k,) + J[pos:]), (-1) ** pos


def _field_div(F, a, b):
    # echelon rows over Q are integer-scaled, so divide as Fractions
    if isinstance(F, RationalField):
        return Fraction(a) / Fraction(b)
    return F.divexact(a, b)


def _as_field(F, v):
    return Fraction(v) if isinstance(F, RationalField) else v
