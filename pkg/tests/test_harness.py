from __future__ import annotations

import itertools
import json

import pytest

from christol.bounds import theorem1_bound
from christol.errors import BudgetExceededError
from christol.furstenberg import validate
from christol.gf import GF
from christol.harness.cli import main
from christol.harness.conjectures import conjecture1, conjecture2, delta, divisors, sweep
from christol.harness.emit import (
    HISTOGRAM_HEADER,
    SEARCH_HEADER,
    emit_search,
    histogram_csv,
    reports_to_json,
    search_csv,
    search_from_json,
    search_to_json,
)
from christol.harness.parser import parse_bipoly, parse_uni
from christol.harness.search import (
    SearchResult,
    count_candidates,
    enumerate_candidates,
    free_slots,
    search,
)
from christol.harness.verify import cartier_identity_failures, flip_transition, verify_all
from christol.polyalg import UniLaurent, format_bipoly

F2, F3 = GF(2), GF(3)


# --- enumeration ----------------------------------------------------------------------

def test_candidates_2_1_1():
    got = [format_bipoly(P) for _, P in enumerate_candidates(F2, 1, 1)]
    assert got == ["(x+1)*y", "y+x", "(x+1)*y+x"]


def _recount(F, h, d):
    # filter the full grid, independent of the enumerator's pruning
    n = 0
    slots = [(i, j) for i in range(h + 1) for j in range(d + 1)]
    for vals in itertools.product(range(F.q), repeat=len(slots)):
        t = dict(zip(slots, vals))
        if t[(0, 0)] != 0 or t[(0, 1)] != 1:
            continue
        if max(i for (i, j), c in t.items() if c) != h:
            continue
        if max(j for (i, j), c in t.items() if c) != d:
            continue
        n += 1
    return n


@pytest.mark.parametrize("q,h,d", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 3, 1), (3, 2, 1)])
def test_candidate_counts(q, h, d):
    F = GF(q)
    cands = list(enumerate_candidates(F, h, d))
    assert len(cands) == _recount(F, h, d) == count_candidates(F, h, d)
    assert [i for i, _ in cands] == sorted(i for i, _ in cands)
    for _, P in cands:
        validate(P)
        assert P.height == h and P.degree == d
    assert len(free_slots(h, d)) == (h + 1) * (d + 1) - 2


def test_enumeration_slicing():
    full = list(enumerate_candidates(F2, 2, 2))
    part = list(enumerate_candidates(F2, 2, 2, start=100, stop=300))
    assert part == [c for c in full if 100 <= c[0] < 300]


def test_enumeration_rejects_bad_cells():
    with pytest.raises(ValueError):
        list(enumerate_candidates(F2, 0, 1))
    with pytest.raises(ValueError):
        list(enumerate_candidates(F2, 1, 0))


# --- search ---------------------------------------------------------------------------

def test_search_2_1_2():
    res = search(F2, 1, 2)
    assert res.max_unminimized_size == 7
    assert res.argmax_poly == "x*y^2+(x+1)*y+x"
    assert res.bound_total == 9 and res.max_orbit_size == 3
    assert sum(res.histogram.values()) == res.candidates_examined
    assert max(res.histogram) == res.max_unminimized_size
    assert res.complete


def test_search_3_1_1_and_2_2_2():
    r = search(F3, 1, 1)
    assert (r.max_unminimized_size, r.bound_total) == (4, 7)
    r = search(F2, 2, 2)
    assert r.max_unminimized_size == 14
    assert r.max_unminimized_size - 1 <= r.minimized_size_of_argmax <= r.max_unminimized_size


def test_search_deterministic_across_jobs():
    a = search(F2, 2, 2, jobs=1)
    b = search(F2, 2, 2, jobs=2, chunk=37)
    c = search(F2, 2, 2, jobs=1, chunk=5)
    assert a.to_dict() == b.to_dict() == c.to_dict()


def test_budget_exceeded_carries_partial():
    with pytest.raises(BudgetExceededError) as exc:
        search(F2, 2, 2, budget=10)
    part = exc.value.partial
    assert part is not None and not part.complete
    assert 0 < part.candidates_examined <= count_candidates(F2, 2, 2)


# --- emit -----------------------------------------------------------------------------

def test_emit_csv(tmp_path):
    res = search(F2, 1, 2)
    text = search_csv([res])
    assert text.splitlines() == [",".join(SEARCH_HEADER), "2,1,2,x*y^2+(x+1)*y+x,7,7,9"]
    paths = emit_search(res, "csv", tmp_path / "cell.csv")
    assert [p.name for p in paths] == ["cell.csv", "cell.hist.csv"]
    hist = paths[1].read_text().splitlines()
    assert hist[0] == ",".join(HISTOGRAM_HEADER)
    assert sum(int(line.split(",")[1]) for line in hist[1:]) == res.candidates_examined


def test_csv_quotes_polys_with_commas():
    F4 = GF(2, 2)
    r = SearchResult(4, 1, 1, 1, 3, "[0,1]*y+x", 0, 3, 6, {3: 1}, 2, "[0,1]*y+x", 0, {2: 1}, True)
    assert '"[0,1]*y+x"' in search_csv([r])
    assert parse_bipoly("[0,1]*y+x", F4).height == 1


def test_empty_histogram_sidecar():
    assert histogram_csv({}) == "size,count\n"


def test_json_round_trip(tmp_path):
    res = search(F2, 2, 1)
    again = search_from_json(search_to_json(res))
    assert again == res
    p = emit_search(res, "json", tmp_path / "r.json")[0]
    assert search_from_json(p.read_text()) == res
    with pytest.raises(ValueError):
        emit_search(res, "xml", tmp_path / "r.xml")


# --- conjectures ----------------------------------------------------------------------

def test_delta_examples():
    assert delta(parse_uni("z^2+z+1", F2)) == parse_uni("z", F2)
    # s = 3: coefficients (3-1)*2 = 4 = 1 and (3-0)*1 = 0
    assert delta(parse_uni("z^3+2z+1", F3)) == parse_uni("z", F3)
    assert delta(UniLaurent(F2)).is_zero()
    assert delta(parse_uni("(z+1)^2", F2)).is_zero()


def test_conjecture1_examples():
    R = parse_uni("z^2+z+1", F2)
    r1, r2 = conjecture1(R, 1), conjecture1(R, 2)
    assert (r1.predicted_dim, r1.computed_dim, r1.match) == (2, 2, True)
    assert (r2.predicted_dim, r2.computed_dim, r2.match) == (3, 3, True)
    assert conjecture1(R, 3).skipped
    assert conjecture1(parse_uni("z^2+z", F2), 1).skipped


def test_conjecture1_square_free_full_space():
    R = parse_uni("(z^2+1)(z^3+z^2+2)", F3)
    rep = conjecture1(R, 6)
    assert rep.predicted_dim == rep.computed_dim == R.deg + 1


def test_conjecture2_examples():
    R = parse_uni("z^2+z+1", F2)
    rep = conjecture2(R)
    assert rep.candidates == ["z"] and rep.fixed == [True] and rep.independent
    rep = conjecture2(parse_uni("(z+1)^2 (z^2+z+1)", F2))
    assert rep.fixed[0] is None and rep.independent is None and rep.ok
    rep = conjecture2(parse_uni("z^2 (z+1)", F3))
    assert rep.independent is None and rep.ok


def test_sweep_small():
    res = sweep(F2, 3)
    # over F2, R(0) = 1 and a monic top term leave 2^(n-1) choices in degree n
    assert res.polys == 1 + 2 + 4 and res.confirmed
    assert res.conjecture1_checks >= res.polys
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_reports_to_json():
    doc = json.loads(reports_to_json([conjecture1(parse_uni("z^2+z+1", F2), 2)]))
    assert doc[0]["match"] is True and doc[0]["ok"] is True


# --- verify ---------------------------------------------------------------------------

def test_verify_2_1_1():
    rep = verify_all(F2, 1, 1)
    assert rep.ok and rep.candidates == 3
    assert rep.max_minimized <= rep.bound_total == theorem1_bound(2, 1, 1).total


def test_verify_detects_tampering():
    rep = verify_all(F2, 1, 2, tamper=flip_transition, cartier_pairs=10)
    assert not rep.ok and rep.violations["series"] > 0
    assert rep.counterexamples and rep.counterexamples[0]["check"] == "series"


def test_cartier_identity_random_pairs():
    assert cartier_identity_failures(F3, pairs=200, seed=1) == []


# --- CLI ------------------------------------------------------------------------------

RUNNING = "(x^2+x+2)y^4 + x y^3 + (2x+1)y^2 + (x^2+1)y + 2x^2 + x"


def test_cli_series(capsys):
    assert main(["series", "--p", "3", "--poly", RUNNING, "--n", "8"]) == 0
    assert capsys.readouterr().out.split() == ["0", "2", "0", "2", "0", "2", "0", "0"]


def test_cli_orbit_and_uniorbit(capsys):
    assert main(["orbit", "--p", "3", "--poly", RUNNING]) == 0
    assert capsys.readouterr().out.strip() == "t=1 period=156 size=157"
    assert main(["uniorbit", "--p", "3", "--r", "z^-1 (z+1)^3 (z+2)", "--s", "1"]) == 0
    assert capsys.readouterr().out.strip() == "t=1 period=1 size=2"


def test_cli_bound(capsys):
    assert main(["bound", "--p", "3", "--h", "2", "--d", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total"] == 6889 and doc["main"] == 6561


def test_cli_build_and_run(tmp_path, capsys):
    out = tmp_path / "a.json"
    assert main(["build", "--poly", "x*y^2+(x+1)*y+x", "--minimize", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "states=7"
    for n, want in [(0, "0"), (1, "1")]:
        assert main(["run", "--automaton", str(out), "--n", str(n)]) == 0
        assert capsys.readouterr().out.strip() == want


def test_cli_search_and_verify(tmp_path, capsys):
    assert main(["search", "--h", "1", "--d", "2", "--out", str(tmp_path / "s.csv")]) == 0
    assert (tmp_path / "s.hist.csv").exists()
    assert main(["search", "--h", "2", "--d", "2", "--budget", "5"]) == 3
    assert main(["verify", "--h", "1", "--d", "1"]) == 0
    assert main(["verify", "--h", "1", "--d", "2", "--tamper", "--out", str(tmp_path / "bad.json")]) == 1
    assert json.loads((tmp_path / "bad.json").read_text())
    capsys.readouterr()


def test_cli_conjecture(capsys):
    assert main(["conjecture", "--p", "2", "--r", "z^2+z+1"]) == 0
    assert main(["conjecture", "--p", "2", "--max-deg", "2"]) == 0
    assert "counterexamples=0" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["series", "--poly", "x^"],
    ["series", "--poly", "x"],
    ["series", "--p", "4", "--poly", "y"],
    ["run", "--n", "3"],
    ["run", "--automaton", "/nonexistent/a.json", "--n", "1"],
])
def test_cli_input_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err
