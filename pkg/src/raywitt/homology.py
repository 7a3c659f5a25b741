"""Hochschild and cyclic homology of graded algebras, cell by cell.

Chains in homological degree n are spanned by (n+1)-fold tensors of
basis elements; the monoid degree of a tensor is the sum of the degrees
of its factors, so each complex splits into finite cells indexed by
(homological degree, monoid degree) and all differentials act within a
monoid degree.  The normalized complex (bar slots taken modulo the unit)
is the default; the unnormalized one exists as an independent oracle.
Homology ranks come from exact elimination (raywitt.linalg).

Conventions: the boundary b multiplies adjacent factors with alternating
signs and wraps the last factor around; the cyclic differential B
inserts the unit in front of each cyclic rotation with sign (-1)^(i*n).
Cyclic homology (over Q) is the homology of the total complex with
components C_n, C_(n-2), ... and differential b + B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg, witt
from .algebra import GradedAlgebra
from .errors import CapExceededError, RaywittError
from .rings import RationalField

DEFAULT_CELL_CAP = 20000


class HochschildComplex:
    """Chains C_0 .. C_(n_top) of an algebra, split into graded cells."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        n_top: int,
        relative: bool = False,
        normalized: bool = True,
        cell_cap: int = DEFAULT_CELL_CAP,
    ):
        if n_top < 0:
            raise RaywittError("n_top must be non-negative")
        self.algebra = algebra
        self.n_top = n_top
        self.relative = relative
        self.normalized = normalized
        self.cell_cap = cell_cap
        self.field = algebra.field
        self.field_tag = algebra.field_tag
        unit = algebra.unit_index
        self._bar = tuple(
            i for i in range(algebra.dim) if not (normalized and i == unit)
        )
        self._zero_degree = (0,) * algebra.grading.monoid.rank
        self._cells: dict[tuple[int, tuple], list[tuple]] = {}
        self._pos: dict[tuple[int, tuple], dict[tuple, int]] = {}
        for n in range(n_top + 1):
            self._build_cells(n)
        self._boundaries: dict[tuple[int, tuple], list[list]] = {}
        self._connes: dict[tuple[int, tuple], list[list]] = {}

    def _build_cells(self, n: int):
        degs = self.algebra.degrees
        cells: dict[tuple, list[tuple]] = {}
        for tup in itertools.product(range(self.algebra.dim), *([self._bar] * n)):
            eta = degs[tup[0]]
            for i in tup[1:]:
                eta = tuple(a + b for a, b in zip(eta, degs[i]))
            if self.relative and eta == self._zero_degree:
                continue
            cells.setdefault(eta, []).append(tup)
        for eta, tuples in cells.items():
            if len(tuples) > self.cell_cap:
                raise CapExceededError(
                    f"cell (n={n}, degree={eta}) has {len(tuples)} generators, "
                    f"over the cap {self.cell_cap}"
                )
            self._cells[(n, eta)] = tuples
            self._pos[(n, eta)] = {t: i for i, t in enumerate(tuples)}

    # -- cell access ----------------------------------------------------------

    def degrees_at(self, n: int) -> list[tuple]:
        """Monoid degrees with a nonempty cell in homological degree n."""
        return sorted(eta for (m, eta) in self._cells if m == n)

    def cell(self, n: int, eta) -> list[tuple]:
        return self._cells.get((n, tuple(eta)), [])

    def cell_dim(self, n: int, eta) -> int:
        return len(self.cell(n, eta))

    # -- differentials ----------------------------------------------------------

    def boundary(self, n: int, eta) -> list[list]:
        """Matrix of b: cell (n, eta) -> cell (n-1, eta); rows index the target."""
        eta = tuple(eta)
        key = (n, eta)
        cached = self._boundaries.get(key)
        if cached is not None:
            return cached
        F = self.field
        source = self.cell(n, eta)
        target_pos = self._pos.get((n - 1, eta), {})
        rows = len(target_pos)
        matrix = [[F.zero() for _ in source] for _ in range(rows)]
        if n > 0 and rows:
            unit = self.algebra.unit_index
            for col, tup in enumerate(source):
                for tgt, coeff in self._boundary_terms(tup, unit):
                    r = target_pos.get(tgt)
                    if r is None:
                        continue
                    matrix[r][col] = F.add(matrix[r][col], coeff)
        self._boundaries[key] = matrix
        return matrix

    def _boundary_terms(self, tup: tuple, unit: int):
        F = self.field
        n = len(tup) - 1
        for i in range(n):
            sign = F.from_int(1 if i % 2 == 0 else -1)
            for k, c in self.algebra.mul_basis(tup[i], tup[i + 1]).items():
                if i > 0 and self.normalized and k == unit:
                    continue
                tgt = tup[:i] + (k,) + tup[i + 2 :]
                yield tgt, F.mul(sign, c)
        sign = F.from_int(1 if n % 2 == 0 else -1)
        for k, c in self.algebra.mul_basis(tup[n], tup[0]).items():
            tgt = (k,) + tup[1:n]
            yield tgt, F.mul(sign, c)

    def connes_b(self, n: int, eta) -> list[list]:
        """Matrix of B: cell (n, eta) -> cell (n+1, eta); normalized only."""
        if not self.normalized:
            raise RaywittError("the cyclic differential lives on the normalized complex")
        eta = tuple(eta)
        key = (n, eta)
        cached = self._connes.get(key)
        if cached is not None:
            return cached
        F = self.field
        unit = self.algebra.unit_index
        source = self.cell(n, eta)
        target_pos = self._pos.get((n + 1, eta), {})
        matrix = [[F.zero() for _ in source] for _ in range(len(target_pos))]
        if target_pos:
            for col, tup in enumerate(source):
                if tup[0] == unit:
                    continue  # the class of the unit in a bar slot is zero
                for i in range(n + 1):
                    sign = F.from_int(1 if (i * n) % 2 == 0 else -1)
                    tgt = (unit,) + tup[i:] + tup[:i]
                    r = target_pos.get(tgt)
                    if r is None:
                        continue
                    matrix[r][col] = F.add(matrix[r][col], sign)
        self._connes[key] = matrix
        return matrix

    # -- homology ----------------------------------------------------------------

    def homology(self, n: int, eta, with_basis: bool = False):
        """Dimension (and optionally representatives) of HH_n in one cell."""
        if n + 1 > self.n_top:
            raise RaywittError(f"complex was built through {self.n_top}; need {n + 1}")
        eta = tuple(eta)
        dim_n = self.cell_dim(n, eta)
        if dim_n == 0:
            return (0, []) if with_basis else 0
        d_n = self.boundary(n, eta)
        d_next = self.boundary(n + 1, eta)
        rank_n = linalg.rank(d_n, self.field_tag) if d_n else 0
        rank_next = linalg.rank(d_next, self.field_tag) if d_next else 0
        hdim = dim_n - rank_n - rank_next
        if not with_basis:
            return hdim
        if hdim == 0:
            return 0, []
        cycles = (
            linalg.nullspace(d_n, self.field_tag)
            if d_n
            else linalg._standard_basis(dim_n, self.field_tag)
        )
        boundary_cols = _columns(d_next)
        chosen = linalg.independent_mod_span(boundary_cols, cycles, self.field_tag)
        reps = [cycles[i] for i in chosen]
        if len(reps) != hdim:
            raise RaywittError("representative count disagrees with the dimension")
        return hdim, reps


def _columns(matrix):
    if not matrix:
        return []
    return [[row[j] for row in matrix] for j in range(len(matrix[0]))]


@dataclass
class HomologyReport:
    """Nonzero homology cells of one computation."""

    kind: str  # "HH" or "HC"
    relative: bool
    n_max: int
    entries: dict = field(default_factory=dict)  # (n, eta) -> dim
    bases: dict = field(default_factory=dict)  # (n, eta) -> list of chains

    def dim(self, n: int, eta) -> int:
        return self.entries.get((n, tuple(eta)), 0)

    def total(self, n: int) -> int:
        return sum(d for (m, _), d in self.entries.items() if m == n)

    def by_degree(self, n: int) -> dict:
        return {eta: d for (m, eta), d in sorted(self.entries.items()) if m == n}

    def to_json(self) -> dict:
        cells = []
        for (n, eta), d in sorted(self.entries.items()):
            cell: dict = {"n": n, "eta": list(eta), "dim": d}
            if (n, eta) in self.bases:
                cell["basis"] = self.bases[(n, eta)]
            cells.append(cell)
        return {
            "kind": self.kind,
            "relative": self.relative,
            "n_max": self.n_max,
            "cells": cells,
        }


def _chain_json(complex_cells, vec, fmt):
    terms = []
    for i, c in enumerate(vec):
        if c:
            terms.append({"coeff": fmt(c), "tensor": list(complex_cells[i])})
    return terms


def hh_table(
    algebra: GradedAlgebra,
    relative: bool = False,
    n_max: int = 4,
    normalized: bool = True,
    with_basis: bool = False,
    cell_cap: int = DEFAULT_CELL_CAP,
    complex_: HochschildComplex | None = None,
) -> HomologyReport:
    """Hochschild homology dimensions per (n, degree) cell, n <= n_max."""
    cx = complex_ or HochschildComplex(
        algebra, n_max + 1, relative=relative, normalized=normalized, cell_cap=cell_cap
    )
    report = HomologyReport(kind="HH", relative=relative, n_max=n_max)
    for n in range(n_max + 1):
        for eta in cx.degrees_at(n):
            if with_basis:
                d, reps = cx.homology(n, eta, with_basis=True)
            else:
                d = cx.homology(n, eta)
            if d:
                report.entries[(n, eta)] = d
                if with_basis:
                    labels = [
                        tuple(algebra.labels[i] for i in t) for t in cx.cell(n, eta)
                    ]
                    report.bases[(n, eta)] = [
                        _chain_json(labels, vec, algebra.field.to_str) for vec in reps
                    ]
    return report


# -- cyclic homology -----------------------------------------------------------


class CyclicTotal:
    """Total complex of the mixed complex: blocks C_n, C_(n-2), ...

    Only defined over Q; the differential is b on each block plus B
    feeding each block from the next one.
    """

    def __init__(self, cx: HochschildComplex):
        if not isinstance(cx.algebra.field, RationalField):
            raise RaywittError("cyclic homology is computed over Q only")
        if not cx.normalized:
            raise RaywittError("the total complex is built on the normalized side")
        self.cx = cx

    def blocks(self, n: int) -> list[int]:
        return [n - 2 * j for j in range(n // 2 + 1)]

    def tot_dim(self, n: int, eta) -> int:
        return sum(self.cx.cell_dim(m, eta) for m in self.blocks(n))

    def differential(self, n: int, eta) -> list[list]:
        """Matrix of b + B from Tot_n to Tot_(n-1) in one monoid degree."""
        eta = tuple(eta)
        F = self.cx.field
        src_blocks = self.blocks(n)
        tgt_blocks = self.blocks(n - 1)
        src_sizes = [self.cx.cell_dim(m, eta) for m in src_blocks]
        tgt_sizes = [self.cx.cell_dim(m, eta) for m in tgt_blocks]
        src_off = _offsets(src_sizes)
        tgt_off = _offsets(tgt_sizes)
        rows = sum(tgt_sizes)
        cols = sum(src_sizes)
        matrix = [[F.zero()] * cols for _ in range(rows)]
        for j, m in enumerate(src_blocks):
            if src_sizes[j] == 0:
                continue
            # b lands in target block j (degree m - 1)
            if j < len(tgt_blocks) and tgt_sizes[j]:
                _paste(matrix, self.cx.boundary(m, eta), tgt_off[j], src_off[j])
            # B lands in target block j - 1 (degree m + 1)
            if j >= 1 and tgt_sizes[j - 1]:
                _paste(matrix, self.cx.connes_b(m, eta), tgt_off[j - 1], src_off[j])
        return matrix

    def homology(self, n: int, eta, with_basis: bool = False):
        if n + 1 > self.cx.n_top:
            raise RaywittError(
                f"complex was built through {self.cx.n_top}; need {n + 1}"
            )
        eta = tuple(eta)
        dim_n = self.tot_dim(n, eta)
        if dim_n == 0:
            return (0, []) if with_basis else 0
        d_n = self.differential(n, eta)
        d_next = self.differential(n + 1, eta)
        tag = self.cx.field_tag
        rank_n = linalg.rank(d_n, tag) if d_n else 0
        rank_next = linalg.rank(d_next, tag) if d_next else 0
        hdim = dim_n - rank_n - rank_next
        if not with_basis:
            return hdim
        cycles = (
            linalg.nullspace(d_n, tag) if d_n else linalg._standard_basis(dim_n, tag)
        )
        chosen = linalg.independent_mod_span(_columns(d_next), cycles, tag)
        if len(chosen) != hdim:
            raise RaywittError("representative count disagrees with the dimension")
        return hdim, [cycles[i] for i in chosen]

    def periodicity_matrix(self, n: int, eta) -> list[list]:
        """Matrix of the S operator HC_n -> HC_(n-2) in one monoid degree.

        S forgets the top block of the total complex.  Each column holds
        the coordinates of S(z) in the chosen homology basis downstairs.
        """
        eta = tuple(eta)
        if n < 2:
            return []
        dim_hi, reps_hi = self.homology(n, eta, with_basis=True)
        dim_lo, reps_lo = self.homology(n - 2, eta, with_basis=True)
        if dim_hi == 0 or dim_lo == 0:
            return [[self.cx.field.zero()] * dim_hi for _ in range(dim_lo)]
        top = self.cx.cell_dim(n, eta)
        boundary_cols = _columns(self.differential(n - 1, eta))
        matrix = [[self.cx.field.zero()] * dim_hi for _ in range(dim_lo)]
        tag = self.cx.field_tag
        for col, z in enumerate(reps_hi):
            dropped = z[top:]
            sol = linalg.solve_columns(boundary_cols + reps_lo, dropped, tag)
            if sol is None:
                raise RaywittError("S image is not a cycle class; convention bug")
            for row in range(dim_lo):
                matrix[row][col] = sol[len(boundary_cols) + row]
        return matrix


def _offsets(sizes):
    out = []
    acc = 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def _paste(big, small, row0, col0):
    for i, row in enumerate(small):
        target = big[row0 + i]
        for j, v in enumerate(row):
            if v:
                target[col0 + j] = v


def hc_table(
    algebra: GradedAlgebra,
    relative: bool = False,
    n_max: int = 4,
    cell_cap: int = DEFAULT_CELL_CAP,
    complex_: HochschildComplex | None = None,
) -> HomologyReport:
    """Cyclic homology dimensions per (n, degree) cell, n <= n_max; Q only."""
    cx = complex_ or HochschildComplex(
        algebra, n_max + 1, relative=relative, normalized=True, cell_cap=cell_cap
    )
    tot = CyclicTotal(cx)
    degrees = sorted({eta for (_, eta) in cx._cells})
    report = HomologyReport(kind="HC", relative=relative, n_max=n_max)
    for n in range(n_max + 1):
        for eta in degrees:
            d = tot.homology(n, eta)
            if d:
                report.entries[(n, eta)] = d
    return report


# -- Witt action on chains -------------------------------------------------------


def _layer_degrees(cx: HochschildComplex, n: int, degrees):
    if degrees is None:
        return cx.degrees_at(n)
    wanted = {tuple(e) for e in degrees}
    return [eta for eta in cx.degrees_at(n) if eta in wanted]


def action_layer(cx: HochschildComplex, n: int, scalar_fn, degrees=None):
    """Diagonal matrix scaling each cell of layer n by scalar_fn(eta).

    Returns (ordered list of (eta, position), matrix).  The scalars must
    lie in the algebra's coefficient field; degree 0 is rejected because
    the graded action only exists in nonzero degrees.  An optional degree
    list restricts the layer to those cells.
    """
    order = []
    for eta in _layer_degrees(cx, n, degrees):
        for i in range(cx.cell_dim(n, eta)):
            order.append((eta, i))
    F = cx.field
    size = len(order)
    matrix = [[F.zero()] * size for _ in range(size)]
    for idx, (eta, _) in enumerate(order):
        if eta == cx._zero_degree:
            raise RaywittError("the graded action is only defined in nonzero degrees")
        matrix[idx][idx] = scalar_fn(eta)
    return order, matrix


def teichmuller_action_layer(cx: HochschildComplex, r, gamma, n: int, degrees=None):
    """Action of r[gamma] on layer n: c(gamma) r^e on degree e*gamma, else 0."""
    F = cx.field
    return action_layer(
        cx, n, lambda eta: witt.teichmuller_scalar(F, r, gamma, eta), degrees
    )


def act_on_class(cx: HochschildComplex, r, gamma, eta, chain):
    """Scale a homogeneous chain of degree eta by the r[gamma] action."""
    scalar = witt.teichmuller_scalar(cx.field, r, gamma, eta)
    F = cx.field
    return [F.mul(scalar, c) for c in chain]


def _layer_map(cx: HochschildComplex, n: int, step: int, block_fn, degrees=None):
    F = cx.field
    etas = _layer_degrees(cx, n, degrees)
    src = []
    for eta in etas:
        src.extend((eta, i) for i in range(cx.cell_dim(n, eta)))
    tgt = []
    for eta in _layer_degrees(cx, n + step, degrees):
        tgt.extend((eta, i) for i in range(cx.cell_dim(n + step, eta)))
    tgt_pos = {key: r for r, key in enumerate(tgt)}
    matrix = [[F.zero()] * len(src) for _ in range(len(tgt))]
    col = 0
    for eta in etas:
        block = block_fn(n, eta)
        for j in range(cx.cell_dim(n, eta)):
            for i, row in enumerate(block):
                if row[j]:
                    matrix[tgt_pos[(eta, i)]][col] = row[j]
            col += 1
    return src, tgt, matrix


def layer_boundary(cx: HochschildComplex, n: int, degrees=None):
    """The b matrix on (a degree slice of) layer n, ordered like action_layer."""
    return _layer_map(cx, n, -1, cx.boundary, degrees)


def layer_connes(cx: HochschildComplex, n: int, degrees=None):
    """The B matrix on (a degree slice of) layer n, ordered like action_layer."""
    return _layer_map(cx, n, +1, cx.connes_b, degrees)


# -- product decompositions -------------------------------------------------------


def kunneth_report(algebra: GradedAlgebra, zero_part: GradedAlgebra, n_max: int = 3) -> dict:
    """Compare HH of (algebra tensor zero_part) relative to the degree-0 part
    against the convolution of HH(zero_part) with relative HH(algebra).

    The algebra's own degree-0 part must be the ground field.
    """
    if len(algebra.degree_zero_indices()) != 1:
        raise RaywittError("the graded factor must have degree-0 part the ground field")
    big = algebra.tensor_degree_zero(zero_part)
    left = hh_table(big, relative=True, n_max=n_max)
    right_a = hh_table(algebra, relative=True, n_max=n_max)
    right_b = hh_table(zero_part, relative=False, n_max=n_max)
    b_dims = {n: right_b.total(n) for n in range(n_max + 1)}
    expected: dict = {}
    for (i, eta), d in right_a.entries.items():
        for j in range(n_max + 1 - i):
            if b_dims.get(j):
                key = (i + j, eta)
                expected[key] = expected.get(key, 0) + b_dims[j] * d
    return _comparison(left.entries, expected)


def kassel_report(algebra: GradedAlgebra, zero_part: GradedAlgebra, n_max: int = 3) -> dict:
    """Compare HC of (algebra tensor zero_part) relative to the degree-0 part
    against the convolution of HH(zero_part) with relative HC(algebra)."""
    if len(algebra.degree_zero_indices()) != 1:
        raise RaywittError("the graded factor must have degree-0 part the ground field")
    big = algebra.tensor_degree_zero(zero_part)
    left = hc_table(big, relative=True, n_max=n_max)
    right_a = hc_table(algebra, relative=True, n_max=n_max)
    right_b = hh_table(zero_part, relative=False, n_max=n_max)
    b_dims = {n: right_b.total(n) for n in range(n_max + 1)}
    expected: dict = {}
    for (i, eta), d in right_a.entries.items():
        for j in range(n_max + 1 - i):
            if b_dims.get(j):
                key = (i + j, eta)
                expected[key] = expected.get(key, 0) + b_dims[j] * d
    return _comparison(left.entries, expected)


def _comparison(left: dict, right: dict) -> dict:
    keys = sorted(set(left) | set(right))
    cells = []
    ok = True
    for key in keys:
        l, r = left.get(key, 0), right.get(key, 0)
        cells.append({"n": key[0], "eta": list(key[1]), "left": l, "right": r})
        ok = ok and l == r
    return {"matches": ok, "cells": cells}
