"""Experiments on fixed spaces of the univariate operator lambda_0.

Two statements are tested exhaustively on small R:

* the space {S : deg S <= deg R, lambda_0^m S = S} has dimension
  1 + sum_i gcd(m, deg R_i) for every m dividing the lcm of factor degrees;
* the products R_1^e_1 ... Delta(R_i^e_i) ... R_k^e_k are fixed by lambda_0,
  and together with R are linearly independent when z does not divide R and
  no exponent is divisible by p.

Mismatches are findings, not errors; sweeps collect them instead of raising.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from ..gf import FieldSpec
from ..linalg import identity, mat_pow, mat_sub, nullspace_basis, rank, MatFq
from ..orbits import lambda0_matrix, lambda_0_uni
from ..polyalg import UniLaurent, factor, format_uni

__all__ = [
    "delta",
    "ConjectureReport",
    "conjecture1",
    "conjecture2",
    "divisors",
    "polys_nonzero_constant",
    "sweep",
]


def delta(S: UniLaurent) -> UniLaurent:
    """Delta(S) = sum_j (s - j) c_j z^j with s = deg S; Delta(0) = 0."""
    if S.is_zero():
        return S
    if not S.is_polynomial():
        raise ValueError("Delta is defined on polynomials")
    F = S.field
    s = S.deg
    return UniLaurent.from_terms(F, {j: F.mul(F.from_int(s - j), c) for j, c in S.terms().items()})


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


@dataclass
class ConjectureReport:
    R: str
    m: int | None = None
    predicted_dim: int | None = None
    computed_dim: int | None = None
    match: bool | None = None
    candidates: list[str] = dc_field(default_factory=list)
    fixed: list[bool | None] = dc_field(default_factory=list)
    independent: bool | None = None
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        if self.skipped:
            return True
        flags = [self.match, self.independent] + list(self.fixed)
        return all(f is not False for f in flags)


def _check_R(R: UniLaurent):
    if R.is_zero() or not R.is_polynomial() or R.deg < 1:
        return "R must be a polynomial of degree >= 1"
    return None


def conjecture1(R: UniLaurent, m: int) -> ConjectureReport:
    """Compare the nullity of lambda_0^m - I on deg <= deg R with 1 + sum gcd(m, deg R_i)."""
    rep = ConjectureReport(format_uni(R), m)
    why = _check_R(R)
    if why is None and R.code(0) == 0:
        why = "R is divisible by z"
    fact = factor(R) if why is None else None
    if fact is not None:
        ell = math.lcm(*fact.degrees)
        if ell % m:
            why = f"m = {m} does not divide {ell}"
    if why:
        rep.skipped = why
        return rep
    M = lambda0_matrix(R)
    A = mat_sub(mat_pow(M, m), identity(R.field, M.rows))
    rep.computed_dim = len(nullspace_basis(A))
    rep.predicted_dim = 1 + sum(math.gcd(m, k) for k in fact.degrees)
    rep.match = rep.computed_dim == rep.predicted_dim
    return rep


def _coords(S: UniLaurent, n: int) -> list[int]:
    return [S.code(j) for j in range(n + 1)]


def conjecture2(R: UniLaurent) -> ConjectureReport:
    """Check fixedness of the Delta-products and their independence together with R."""
    rep = ConjectureReport(format_uni(R))
    why = _check_R(R)
    if why:
        rep.skipped = why
        return rep
    F = R.field
    fact = factor(R)
    z = UniLaurent.monomial(F, 1)
    pieces = [(f, e) for f, e in fact.factors]
    if fact.e0 > 0:
        pieces.insert(0, (z, fact.e0))
    powers = [f ** e for f, e in pieces]
    cands = []
    for i, Ri in enumerate(powers):
        c = delta(Ri)
        for k, Rk in enumerate(powers):
            if k != i:
                c = c * Rk
        cands.append(c)
        rep.candidates.append(format_uni(c))
        # a zero candidate carries no information and is skipped
        rep.fixed.append(None if c.is_zero() else lambda_0_uni(c, R) == c)
    hyp = fact.e0 == 0 and all(e % F.p for _, e in fact.factors)
    if hyp:
        n = R.deg
        vecs = [_coords(R, n)] + [_coords(c, n) for c in cands]
        rep.independent = rank(MatFq.from_rows(F, vecs)) == len(vecs)
    return rep


def polys_nonzero_constant(F: FieldSpec, max_deg: int):
    """All R with 1 <= deg R <= max_deg and R(0) != 0, by degree then encoding."""
    q = F.q
    for n in range(1, max_deg + 1):
        for c0 in range(1, q):
            for mid in itertools.product(range(q), repeat=n - 1):
                for lc in range(1, q):
                    yield UniLaurent.from_terms(
                        F, {j: c for j, c in enumerate((c0, *mid, lc)) if c})


@dataclass
class SweepResult:
    q: int
    max_deg: int
    polys: int = 0
    conjecture1_checks: int = 0
    conjecture2_checks: int = 0
    counterexamples: list[ConjectureReport] = dc_field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        return not self.counterexamples


def sweep(F: FieldSpec, max_deg: int = 4) -> SweepResult:
    """Run both experiments over every R with R(0) != 0 and 1 <= deg R <= max_deg."""
    out = SweepResult(F.q, max_deg)
    for R in polys_nonzero_constant(F, max_deg):
        out.polys += 1
        ell = math.lcm(*factor(R).degrees)
        for m in divisors(ell):
            rep = conjecture1(R, m)
            out.conjecture1_checks += 1
            if not rep.ok:
                out.counterexamples.append(rep)
        rep = conjecture2(R)
        out.conjecture2_checks += 1
        if not rep.ok:
            out.counterexamples.append(rep)
    return out
