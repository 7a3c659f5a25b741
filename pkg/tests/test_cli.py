"""CLI surface: dispatch, determinism, round trips, exit codes."""

import json

import pytest

from raywitt.cli import main

LINE2 = {"rank": 1, "inequalities": [[1]], "weight": [1], "degree_bound": 2}
VEC_A = {
    "monoid": LINE2,
    "ring": {"kind": "Z"},
    "coeffs": [{"gamma": [1], "value": "3"}, {"gamma": [2], "value": "-1"}],
}
VEC_B = {
    "monoid": LINE2,
    "ring": {"kind": "Z"},
    "coeffs": [{"gamma": [1], "value": "2"}, {"gamma": [2], "value": "5"}],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_monoid_contains(capsys):
    code, out, _ = run(
        capsys, "monoid", "contains", "--json", json.dumps(LINE2), "--vector", "2"
    )
    assert code == 0
    assert json.loads(out) == {"contains": True, "vector": [2]}


def test_monoid_enumerate(capsys):
    doc = {"rank": 2, "inequalities": [[1, 0], [0, 1]], "weight": [1, 1], "degree_bound": 2}
    code, out, _ = run(capsys, "monoid", "enumerate", "--json", json.dumps(doc))
    assert code == 0
    assert json.loads(out)["elements"] == [[0, 1], [1, 0], [0, 2], [1, 1], [2, 0]]


def test_monoid_rays_orthant(capsys):
    code, out, _ = run(
        capsys, "monoid", "rays", "--positive-orthant", "2", "--height", "3"
    )
    assert code == 0
    assert json.loads(out)["count"] == 7


def test_witt_mul_matches_closed_form(capsys):
    code, out, _ = run(
        capsys, "witt", "mul", "--left", json.dumps(VEC_A), "--right", json.dumps(VEC_B)
    )
    assert code == 0
    doc = json.loads(out)
    coeffs = {tuple(c["gamma"]): c["value"] for c in doc["coeffs"]}
    assert coeffs == {(1,): "6", (2,): "31"}


def test_witt_add(capsys):
    code, out, _ = run(
        capsys, "witt", "add", "--left", json.dumps(VEC_A), "--right", json.dumps(VEC_B)
    )
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs == {(1,): "5", (2,): "-2"}


def test_witt_ghost_and_from_ghost_round_trip(capsys):
    code, out, _ = run(capsys, "witt", "ghost", "--json", json.dumps(VEC_A))
    assert code == 0
    ghost_doc = json.loads(out)
    ghost_doc["ring"] = {"kind": "Q"}
    code, out, _ = run(capsys, "witt", "from-ghost", "--json", json.dumps(ghost_doc))
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs == {(1,): "3", (2,): "-1"}


def test_witt_operators(capsys):
    code, out, _ = run(
        capsys, "witt", "verschiebung", "--m", "2", "--json", json.dumps(VEC_A)
    )
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs == {(2,): "3"}
    code, out, _ = run(
        capsys, "witt", "frobenius", "--m", "2", "--json", json.dumps(VEC_A)
    )
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs == {(1,): "7"}  # ghost(a) at 2


def test_witt_decompose(capsys):
    doc = {
        "monoid": {"rank": 2, "inequalities": [[1, 0], [0, 1]], "weight": [1, 1], "degree_bound": 2},
        "ring": {"kind": "Z"},
        "coeffs": [
            {"gamma": [1, 0], "value": "4"},
            {"gamma": [2, 0], "value": "5"},
            {"gamma": [1, 1], "value": "6"},
        ],
    }
    code, out, _ = run(capsys, "witt", "decompose", "--json", json.dumps(doc))
    assert code == 0
    rays = {tuple(r["primitive"]): r["coordinates"] for r in json.loads(out)["rays"]}
    assert rays[(1, 0)] == {"1": "4", "2": "5"}
    assert rays[(1, 1)] == {"1": "6"}
    assert rays[(0, 1)] == {}


def test_hh_compute(capsys):
    algebra = {"monoid": {**LINE2, "ideal": [[2]], "degree_bound": 1}, "ring": {"kind": "Q"}}
    code, out, _ = run(
        capsys, "hh", "compute", "--algebra", json.dumps(algebra), "--relative", "--nmax", "2"
    )
    assert code == 0
    cells = {(c["n"], tuple(c["eta"])): c["dim"] for c in json.loads(out)["cells"]}
    assert cells[(0, (1,))] == 1


def test_hc_compute_with_degree_zero_part(capsys):
    algebra = {
        "monoid": {**LINE2, "ideal": [[3]], "degree_bound": 2},
        "ring": {"kind": "Q"},
        "degree0": {"kind": "truncated_power", "power": 2, "name": "y"},
    }
    code, out, _ = run(
        capsys, "hc", "compute", "--algebra", json.dumps(algebra), "--relative", "--nmax", "1"
    )
    assert code == 0
    cells = {(c["n"], tuple(c["eta"])): c["dim"] for c in json.loads(out)["cells"]}
    assert cells[(0, (1,))] == 2  # x and yx


def test_kdecomp_text(capsys):
    code, out, _ = run(capsys, "kdecomp", "laurent", "--n", "1", "--format", "text")
    assert code == 0
    assert out.strip() == "K_q ⊕ K_{q−1} ⊕ 2·NK_q"


def test_kdecomp_json_instantiated(capsys):
    code, out, _ = run(capsys, "kdecomp", "nkpower", "--n", "2", "--height", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["families"][0]["ray_count"] == 7


def test_polynomial_ring_vectors(capsys):
    doc = {
        "monoid": LINE2,
        "ring": {"kind": "poly", "base": {"kind": "Q"}, "vars": ["u"]},
        "coeffs": [
            {"gamma": [1], "value": "u + 1"},
            {"gamma": [2], "value": "2*u"},
        ],
    }
    code, out, _ = run(capsys, "witt", "ghost", "--json", json.dumps(doc))
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs == {(1,): "u + 1", (2,): "u^2 + 6*u + 1"}
    code, out, _ = run(
        capsys, "witt", "mul", "--left", json.dumps(doc), "--right", json.dumps(doc)
    )
    assert code == 0
    coeffs = {tuple(c["gamma"]): c["value"] for c in json.loads(out)["coeffs"]}
    assert coeffs[(2,)] == "4*u^3 + 16*u^2 + 4*u"


def test_determinism(capsys):
    first = run(capsys, "kdecomp", "poly", "--n", "3")
    second = run(capsys, "kdecomp", "poly", "--n", "3")
    assert first == second
    a1 = run(capsys, "witt", "mul", "--left", json.dumps(VEC_A), "--right", json.dumps(VEC_B))
    a2 = run(capsys, "witt", "mul", "--left", json.dumps(VEC_A), "--right", json.dumps(VEC_B))
    assert a1 == a2


def test_domain_error_exit_code(capsys):
    bad = dict(VEC_A, coeffs=[{"gamma": [9], "value": "1"}])
    code, out, err = run(capsys, "witt", "ghost", "--json", json.dumps(bad))
    assert code == 1
    assert json.loads(err)["error"] == "RaywittError"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["witt"])  # missing subcommand
    assert exc.value.code == 2


def test_output_round_trip(capsys):
    code, out, _ = run(
        capsys, "witt", "add", "--left", json.dumps(VEC_A), "--right", json.dumps(VEC_B)
    )
    assert code == 0
    from raywitt.witt import WittVector

    vec = WittVector.from_json(json.loads(out))
    assert vec.to_json() == json.loads(out)
