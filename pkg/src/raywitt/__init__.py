"""Exact arithmetic for big Witt vectors graded by affine monoids,
Hochschild/cyclic homology of truncated monoid algebras, and the formal
ray-indexed decompositions of K-groups of polynomial-like rings."""

from .algebra import FiniteAlgebraRing, GradedAlgebra
from .errors import (
    CapExceededError,
    DimensionMismatchError,
    ExactnessError,
    InternalInvariantError,
    RaywittError,
    UndecidableError,
)
from .homology import (
    CyclicTotal,
    HochschildComplex,
    HomologyReport,
    hc_table,
    hh_table,
    kassel_report,
    kunneth_report,
)
from .kahler import DeRhamComplex
from .kgroups import (
    Atom,
    FormalGroupExpr,
    RaySet,
    SignedPermutation,
    davis_laurent,
    fundamental_theorem,
    instantiate_rays,
    lattice_rays,
    nk_power,
    orthant_rays,
    polynomial_decomposition,
    substitute_nk_powers,
    symmetric_orbit,
    wreath_orbit,
)
from .monoid import (
    AffineMonoid,
    MonoidIdeal,
    Ray,
    TruncatedMonoid,
    natural_line,
    nonneg_orthant,
    trivial_truncation,
)
from .rings import (
    PolynomialRing,
    PrimeField,
    QQ,
    Ring,
    ZZ,
    ring_from_json,
    ring_to_json,
)
from .witt import (
    GhostVector,
    WittVector,
    add,
    delta_prim,
    frobenius,
    from_ghost,
    ghost,
    ghost_component,
    module_scalar,
    mul,
    ray_assemble,
    ray_decompose,
    ray_idempotent,
    teichmuller,
    teichmuller_scalar,
    verschiebung,
    witt_one_minus,
)

__version__ = "0.1.0"
