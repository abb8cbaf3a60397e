from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from christol.errors import DomainError, OrbitTooLongError
from christol.furstenberg import validate
from christol.gf import GF
from christol.harness.parser import parse_uni
from christol.harness.search import enumerate_candidates
from christol.orbits import (
    FLOW,
    VShape,
    border_denominators,
    check_degree_props,
    check_emulation,
    check_information_flow,
    check_module,
    check_univariate_theorems,
    lambda0_matrix,
    lambda_0_uni,
    lambda_matrices,
    lambda_r0,
    orbit,
    pi_l,
    pi_r,
    pi_t,
    random_in_V,
)
from christol.linalg import identity, mat_pow
from christol.polyalg import UniLaurent, format_bipoly, format_uni

F2, F3 = GF(2), GF(3)


@pytest.fixture(scope="module")
def rinp(running_P):
    return validate(running_P)


# --- running example ----------------------------------------------------------------

def test_second_state_and_projections(rinp):
    S1 = lambda_r0(rinp.S0, rinp.Q, 0)
    assert format_bipoly(S1) == "x*y^3+(x^2+x+1)*y^2+(2*x^2+2)*y+x^2+x"
    shape = VShape(2, 4)
    assert shape.contains(S1)
    assert format_uni(pi_l(S1), "y") == "y^2+2*y"
    assert format_uni(pi_r(S1, shape), "y") == "y^2+2*y+1"
    assert format_uni(pi_t(S1, shape), "x") == "x"


def test_emulation_values(rinp):
    S1 = lambda_r0(rinp.S0, rinp.Q, 0)
    em = check_emulation(S1, rinp)
    assert em.ok and em.left and em.right and em.top
    got = [format_uni(v, var) for v, var in zip(em.values, "yyx")]
    assert got == ["y^2+y", "y^2+y+1", "2*x"]


def test_border_denominators(rinp):
    A0, Ah, Bd = border_denominators(rinp)
    assert A0 == parse_uni("2y^3+y+1", F3)
    assert Ah == parse_uni("y^3+1+2y^-1", F3)
    assert Bd == parse_uni("x^2+x+2", F3)


def test_orbit_of_S0(rinp):
    rep = orbit(rinp.S0, lambda S: lambda_r0(S, rinp.Q, 0))
    assert (rep.transient, rep.period, rep.size) == (1, 156, 157)
    assert rep.check(lambda S: lambda_r0(S, rinp.Q, 0))


def test_information_flow_running_example(rinp):
    rep = check_information_flow(rinp)
    assert rep.ok
    shape = VShape(2, 4)
    assert shape.block_sizes == (3, 2, 1, 1, 1, 3, 1)
    assert len(rep.matrices) == 3
    assert rep.matrices[0].row(0) == [1, 1, 1, 2, 1, 2, 0, 0, 2, 2, 0, 0]


def test_module_and_degree_running_example(rinp):
    assert check_module(rinp) == []
    assert check_degree_props(rinp).ok


def test_emulation_random_running_example(rinp):
    rng = random.Random(7)
    for _ in range(40):
        assert check_emulation(random_in_V(rinp, rng), rinp).ok


# --- block structure ----------------------------------------------------------------

@pytest.mark.parametrize("h,d", [(1, 1), (2, 1), (1, 2), (2, 4), (3, 3)])
def test_vshape_partition(h, d):
    shape = VShape(h, d)
    basis = shape.basis
    assert sorted(basis) == sorted((i, j) for i in range(h + 1) for j in range(d))
    assert len(set(basis)) == len(basis)
    coarse = shape.four_blocks()
    assert [coarse.count(k) for k in (1, 2, 3, 4)] == [h * (d - 1), h, d - 1, 1]


def test_flow_table_is_upper_triangular_in_block_order():
    for t, sources in FLOW.items():
        assert t in sources and all(s >= t for s in sources)


def test_d_equals_one_uses_top_left_block():
    shape = VShape(2, 1)
    assert shape.blocks[2] == [] and shape.blocks[4] == [(0, 0)]


@pytest.mark.parametrize("q,h,d", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 1, 3), (3, 2, 1), (2, 3, 1)])
def test_structure_over_cells(q, h, d):
    rng = random.Random(q * 100 + h * 10 + d)
    for _, P in enumerate_candidates(GF(q), h, d):
        inp = validate(P)
        assert check_information_flow(inp).ok
        assert check_module(inp) == []
        assert check_degree_props(inp).ok
        for _ in range(2):
            assert check_emulation(random_in_V(inp, rng), inp).ok


def test_forbidden_entries_vanish(rinp):
    shape = VShape(2, 4)
    blk = [shape.block_of()[k] for k in shape.basis]
    M = check_information_flow(rinp).matrices[0]
    for i, t in enumerate(blk):
        for j, s in enumerate(blk):
            if s not in FLOW[t]:
                assert M[i, j] == 0


# --- orbit helper -------------------------------------------------------------------

def test_orbit_helper():
    rep = orbit(3, lambda n: (n * n) % 11)
    assert rep.elements == [3, 9, 4, 5]
    assert (rep.transient, rep.period) == (0, 4)
    with pytest.raises(OrbitTooLongError):
        orbit(0, lambda n: n + 1, cap=50)


# --- univariate dynamics -----------------------------------------------------------

def test_square_free_identity_f2():
    R = parse_uni("z^2+z+1", F2)
    M = lambda0_matrix(R)
    assert mat_pow(M, 2) == identity(F2, 3)
    assert mat_pow(M, 1) != identity(F2, 3)
    rep = check_univariate_theorems(R)
    assert rep.identity_ok and rep.ell == 2 and rep.ok


def test_periods_f3():
    R = parse_uni("(z^2+1)(z^3+z^2+2)", F3)
    rep = check_univariate_theorems(R)
    assert rep.exhaustive and rep.ok
    assert rep.periods == {1, 2, 3, 6}
    assert rep.ell == 6


def test_period_witnesses_f3():
    R = parse_uni("(z^2+1)(z^3+z^2+2)", F3)
    step = lambda S: lambda_0_uni(S, R)
    witnesses = {}
    for coeffs in itertools.product(range(3), repeat=6):
        S = UniLaurent(F3, coeffs)
        p = orbit(S, step).period
        witnesses.setdefault(p, S)
    assert set(witnesses) == {1, 2, 3, 6}
    for p, S in witnesses.items():
        T = S
        for _ in range(p):
            T = step(T)
        # the image lies on the cycle, so p more steps return to it
        U = step(T)
        for _ in range(p - 1):
            U = step(U)
        assert U == T


def test_laurent_example_transient():
    R = parse_uni("z^-1 (z+1)^3 (z+2)", F3)
    rep = orbit(UniLaurent.one(F3), lambda S: lambda_0_uni(S, R))
    assert (rep.transient, rep.period) == (1, 1)
    assert rep.elements[1] == parse_uni("z^2+2z+1", F3)
    report = check_univariate_theorems(R)
    assert (report.t, report.ell) == (1, 1) and report.ok


def test_lambda0_domain_errors():
    with pytest.raises(DomainError):
        lambda_0_uni(UniLaurent.one(F2), UniLaurent(F2))
    with pytest.raises(DomainError):
        check_univariate_theorems(parse_uni("z^-2 + 1", F2))


def _laurent_family(F, max_deg):
    for n in range(0, max_deg + 1):
        for coeffs in itertools.product(range(F.q), repeat=n + 1):
            if coeffs[-1] == 0:
                continue
            for val in (-1, 0, 1):
                yield UniLaurent(F, coeffs, val)


@pytest.mark.parametrize("F,max_deg", [(F2, 4), (F3, 2)])
def test_univariate_theorems_sweep(F, max_deg):
    for R in _laurent_family(F, max_deg):
        if R.deg < 0 and R.val < 0:
            continue
        rep = check_univariate_theorems(R, exhaustive_limit=3 ** 6)
        assert rep.ok, (format_uni(R), rep.counterexamples[:3])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=7), st.lists(st.integers(0, 1), max_size=7))
def test_lambda0_fixes_R_and_is_linear(rc, sc):
    R = UniLaurent(F2, rc)
    if R.is_zero():
        return
    assert lambda_0_uni(R, R) == R
    S = UniLaurent(F2, sc)
    T = UniLaurent(F2, list(reversed(sc)))
    assert lambda_0_uni(S + T, R) == lambda_0_uni(S, R) + lambda_0_uni(T, R)


def test_lambda_matrices_shape(rinp):
    mats = lambda_matrices(rinp)
    n = len(VShape(2, 4).basis)
    assert all(m.rows == m.cols == n for m in mats.values())
