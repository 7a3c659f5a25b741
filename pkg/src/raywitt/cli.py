"""Batch command-line front end.

Subcommands mirror the library: monoid enumeration, Witt arithmetic,
homology tables, and the formal K-group decompositions.  Input documents
are JSON, inline via --json or from a file via --input ('-' for stdin).
Output is deterministic: JSON with sorted keys, or plain text with
--format text.  Exit status: 0 on success, 1 on domain errors (with a
structured JSON error on stderr), 2 on usage errors.

Ring element values are serialized as decimal strings, never as JSON
numbers, so arbitrary-precision coefficients survive a round trip.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import homology, kgroups, linalg, witt
from .algebra import GradedAlgebra
from .errors import RaywittError
from .monoid import AffineMonoid, TruncatedMonoid
from .rings import QQ, ring_from_json


def _read_doc(args) -> dict:
    if getattr(args, "json", None):
        return json.loads(args.json)
    path = getattr(args, "input", None)
    if not path:
        raise RaywittError("provide --json or --input")
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _read_vector(path: str) -> witt.WittVector:
    if path.lstrip().startswith("{"):
        return witt.WittVector.from_json(json.loads(path))
    with open(path, "r", encoding="utf-8") as fh:
        return witt.WittVector.from_json(json.load(fh))


def _emit(doc, args) -> None:
    if getattr(args, "format", "json") == "json":
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    else:
        print(doc if isinstance(doc, str) else json.dumps(doc, sort_keys=True, ensure_ascii=False))


# -- monoid ----------------------------------------------------------------------


def _cmd_monoid_contains(args):
    doc = _read_doc(args)
    m = AffineMonoid.from_json(doc)
    v = tuple(int(x) for x in args.vector.split(","))
    _emit({"vector": list(v), "contains": m.contains(v)}, args)
    return 0


def _cmd_monoid_enumerate(args):
    t = TruncatedMonoid.from_json(_read_doc(args))
    _emit(
        {
            "count": len(t.elements),
            "elements": [list(g) for g in t.elements],
        },
        args,
    )
    return 0


def _cmd_monoid_rays(args):
    if args.positive_orthant is not None:
        if args.height is None:
            raise RaywittError("--positive-orthant needs --height")
        rays = kgroups.orthant_rays(args.positive_orthant, args.height)
        _emit({"count": len(rays), "rays": [list(v) for v in rays]}, args)
        return 0
    t = TruncatedMonoid.from_json(_read_doc(args))
    rays = t.rays
    _emit(
        {
            "count": len(rays),
            "rays": [list(r.primitive) for r in rays],
            "truncation_sets": [list(t.ray_truncation_set(r)) for r in rays],
        },
        args,
    )
    return 0


# -- witt ------------------------------------------------------------------------


def _cmd_witt_binary(args):
    a = _read_vector(args.left)
    b = _read_vector(args.right)
    out = witt.add(a, b) if args.op == "add" else witt.mul(a, b)
    _emit(out.to_json(), args)
    return 0


def _cmd_witt_ghost(args):
    a = witt.WittVector.from_json(_read_doc(args))
    _emit(witt.ghost(a).to_json(), args)
    return 0


def _cmd_witt_from_ghost(args):
    g = witt.GhostVector.from_json(_read_doc(args))
    _emit(witt.from_ghost(g).to_json(), args)
    return 0


def _cmd_witt_operator(args):
    a = witt.WittVector.from_json(_read_doc(args))
    fn = witt.frobenius if args.op == "frobenius" else witt.verschiebung
    _emit(fn(args.m, a).to_json(), args)
    return 0


def _cmd_witt_decompose(args):
    a = witt.WittVector.from_json(_read_doc(args))
    parts = witt.ray_decompose(a)
    doc = {
        "rays": [
            {
                "primitive": list(ray.primitive),
                "coordinates": {str(e): a.ring.to_str(v) for e, v in sorted(comp.items())},
            }
            for ray, comp in sorted(parts.items())
        ]
    }
    _emit(doc, args)
    return 0


# -- homology ----------------------------------------------------------------------


def _algebra_from_doc(doc: dict) -> GradedAlgebra:
    ring = ring_from_json(doc.get("ring", {"kind": "Q"}))
    t = TruncatedMonoid.from_json(doc["monoid"])
    algebra = GradedAlgebra.monoid_algebra(t, ring)
    zero = doc.get("degree0")
    if zero and zero.get("kind") == "truncated_power":
        power = GradedAlgebra.degree_zero_power(
            ring,
            int(zero["power"]),
            zero.get("name", "y"),
            rank=t.monoid.rank,
        )
        algebra = algebra.tensor_degree_zero(power)
    return algebra


def _load_inline_or_file(text: str) -> dict:
    if text.lstrip().startswith("{"):
        return json.loads(text)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _report_text(doc: dict) -> str:
    head = doc["kind"] + (" relative" if doc["relative"] else "") + f", n <= {doc['n_max']}"
    lines = [head]
    for cell in doc["cells"]:
        eta = ",".join(str(x) for x in cell["eta"])
        lines.append(f"  {doc['kind']}_{cell['n']}[({eta})] = {cell['dim']}")
    if len(lines) == 1:
        lines.append("  (zero)")
    return "\n".join(lines)


def _cmd_hh(args):
    algebra = _algebra_from_doc(_load_inline_or_file(args.algebra))
    report = homology.hh_table(
        algebra,
        relative=args.relative,
        n_max=args.nmax,
        with_basis=args.with_basis,
        cell_cap=args.cell_cap,
    )
    if args.format == "text":
        print(_report_text(report.to_json()))
    else:
        _emit(report.to_json(), args)
    return 0


def _cmd_hc(args):
    algebra = _algebra_from_doc(_load_inline_or_file(args.algebra))
    report = homology.hc_table(
        algebra, relative=args.relative, n_max=args.nmax, cell_cap=args.cell_cap
    )
    if args.format == "text":
        print(_report_text(report.to_json()))
    else:
        _emit(report.to_json(), args)
    return 0


# -- kdecomp ----------------------------------------------------------------------


def _cmd_kdecomp(args):
    if args.variant == "poly":
        expr = kgroups.polynomial_decomposition(args.n)
    elif args.variant == "laurent":
        expr = kgroups.davis_laurent(args.n)
    else:
        expr = kgroups.nk_power(args.n)
    if args.height:
        doc = kgroups.instantiate_rays(expr, args.height, args.q)
    else:
        doc = expr.to_json(args.q)
    if args.format == "text":
        print(expr.render(args.q))
    else:
        _emit(doc, args)
    return 0


# -- selftest ----------------------------------------------------------------------


def _cmd_selftest(args):
    import random

    from . import wittpoly
    from .monoid import natural_line, nonneg_orthant
    from .rings import ZZ

    rng = random.Random(7)
    failures = 0

    def check(label, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            failures += 1

    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=4)
    for trial in range(5):
        a = witt.WittVector(
            t, ZZ, {g: rng.randint(-4, 4) for g in t.elements}
        )
        b = witt.WittVector(
            t, ZZ, {g: rng.randint(-4, 4) for g in t.elements}
        )
        ok = witt.ghost(a * b) == witt.ghost(a) * witt.ghost(b)
        ok = ok and witt.ghost(a + b) == witt.ghost(a) + witt.ghost(b)
        if not ok:
            break
    check("ghost map is a ring homomorphism (N^2, D=4)", ok)

    one = witt.delta_prim(t, ZZ)
    a = witt.WittVector(t, ZZ, {g: rng.randint(-4, 4) for g in t.elements})
    check("delta_prim is the multiplicative identity", a * one == a)

    idems = [witt.ray_idempotent(t, ZZ, r) for r in t.rays]
    total = idems[0]
    for e in idems[1:]:
        total = total + e
    check("ray idempotents sum to delta_prim", total == one)

    line = natural_line(6)
    sub = natural_line(3)
    va = witt.WittVector(line, ZZ, {(e,): rng.randint(-3, 3) for e in range(1, 7)})
    doubled = (va + va).restrict(sub)
    check(
        "F_2 V_2 = 2 on W(Z) up to degree 6",
        witt.frobenius(2, witt.verschiebung(2, va)).restrict(sub) == doubled,
    )

    polys = wittpoly.product_polynomials(tuple(range(1, 7)))
    check("universal product coefficients are integers", all(
        all(isinstance(c, int) for c in p.values()) for p in polys.values()
    ))

    algebra = GradedAlgebra.monoid_algebra(natural_line(2, killed_at=3), QQ)
    cx = homology.HochschildComplex(algebra, 4, relative=True)
    ok = True
    for eta in cx.degrees_at(2):
        bb = linalg.matmul(cx.boundary(2, eta), cx.boundary(3, eta))
        ok = ok and all(all(v == 0 for v in row) for row in bb)
    check("boundary squares to zero on Q[x]/(x^3)", ok)

    expr = kgroups.substitute_nk_powers(kgroups.fundamental_theorem(3))
    check(
        "polynomial decomposition matches the substituted expansion (n=3)",
        expr == kgroups.polynomial_decomposition(3),
    )

    check(
        "wreath orbit counts (n=4, r=2)",
        kgroups.wreath_orbit(4, 2) == {"orbit_size": 24, "stabilizer_order": 16},
    )

    print(f"selftest: {'OK' if failures == 0 else f'{failures} failure(s)'}")
    return 0 if failures == 0 else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raywitt",
        description="Witt vectors on affine monoids, graded homology, and "
        "formal K-group decompositions; all arithmetic exact.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, doc=True):
        if doc:
            p.add_argument("--input", help="path of the JSON input document, or -")
            p.add_argument("--json", help="inline JSON input document")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("monoid", help="monoid membership, enumeration, rays")
    msub = p.add_subparsers(dest="subcommand", required=True)
    pc = msub.add_parser("contains", help="test membership of a lattice vector")
    add_io(pc)
    pc.add_argument("--vector", required=True, help="comma-separated coordinates")
    pc.set_defaults(fn=_cmd_monoid_contains)
    pe = msub.add_parser("enumerate", help="list the members of a truncation")
    add_io(pe)
    pe.set_defaults(fn=_cmd_monoid_enumerate)
    pr = msub.add_parser("rays", help="rays of a truncation, or of an open orthant")
    add_io(pr)
    pr.add_argument("--positive-orthant", type=int, metavar="M", help="use the open orthant of M coordinates")
    pr.add_argument("--height", type=int, help="max coordinate for orthant ray enumeration")
    pr.set_defaults(fn=_cmd_monoid_rays)

    p = sub.add_parser("witt", help="Witt vector arithmetic and operators")
    wsub = p.add_subparsers(dest="subcommand", required=True)
    for op in ("add", "mul"):
        pw = wsub.add_parser(op, help=f"{op} two vectors")
        pw.add_argument("--left", required=True, help="JSON file or inline JSON")
        pw.add_argument("--right", required=True, help="JSON file or inline JSON")
        pw.add_argument("--format", choices=("json", "text"), default="json")
        pw.set_defaults(fn=_cmd_witt_binary, op=op)
    pg = wsub.add_parser("ghost", help="ghost components of a vector")
    add_io(pg)
    pg.set_defaults(fn=_cmd_witt_ghost)
    pf = wsub.add_parser("from-ghost", help="invert the ghost map (exact divisions)")
    add_io(pf)
    pf.set_defaults(fn=_cmd_witt_from_ghost)
    for op in ("frobenius", "verschiebung"):
        pw = wsub.add_parser(op, help=f"apply {op[0].upper()}_m")
        add_io(pw)
        pw.add_argument("--m", type=int, required=True)
        pw.set_defaults(fn=_cmd_witt_operator, op=op)
    pd = wsub.add_parser("decompose", help="split into classical vectors, ray by ray")
    add_io(pd)
    pd.set_defaults(fn=_cmd_witt_decompose)

    p = sub.add_parser("hh", help="graded Hochschild homology")
    hsub = p.add_subparsers(dest="subcommand", required=True)
    ph = hsub.add_parser("compute")
    ph.add_argument("--algebra", required=True, help="JSON file or inline JSON")
    ph.add_argument("--relative", action="store_true")
    ph.add_argument("--nmax", type=int, default=4)
    ph.add_argument("--with-basis", action="store_true")
    ph.add_argument("--cell-cap", type=int, default=homology.DEFAULT_CELL_CAP)
    ph.add_argument("--format", choices=("json", "text"), default="json")
    ph.set_defaults(fn=_cmd_hh)

    p = sub.add_parser("hc", help="graded cyclic homology (over Q)")
    csub = p.add_subparsers(dest="subcommand", required=True)
    pcyc = csub.add_parser("compute")
    pcyc.add_argument("--algebra", required=True, help="JSON file or inline JSON")
    pcyc.add_argument("--relative", action="store_true")
    pcyc.add_argument("--nmax", type=int, default=4)
    pcyc.add_argument("--cell-cap", type=int, default=homology.DEFAULT_CELL_CAP)
    pcyc.add_argument("--format", choices=("json", "text"), default="json")
    pcyc.set_defaults(fn=_cmd_hc)

    p = sub.add_parser("kdecomp", help="formal K-group decompositions")
    ksub = p.add_subparsers(dest="subcommand", required=True)
    for variant, blurb in (
        ("poly", "polynomial ring decomposition"),
        ("laurent", "Laurent ring decomposition"),
        ("nkpower", "N^n K as a ray family"),
    ):
        pk = ksub.add_parser(variant, help=blurb)
        pk.add_argument("--n", type=int, required=True)
        pk.add_argument("--q", default="q", help="label for the K-degree")
        pk.add_argument("--height", type=int, help="instantiate ray families up to this height")
        pk.add_argument("--format", choices=("json", "text"), default="json")
        pk.set_defaults(fn=_cmd_kdecomp, variant=variant)

    p = sub.add_parser("selftest", help="run the fast invariant battery")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RaywittError as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc)},
            sys.stderr,
            sort_keys=True,
        )
        sys.stderr.write("\n")
        return 1
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc)},
            sys.stderr,
            sort_keys=True,
        )
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
