"""The operators lambda_{r,0} and lambda_0 and checks of their structure.

For a Furstenberg input with Q = P/y, ``lambda_r0(S) = Lambda_{r,0}(S Q^(q-1))``
acts on bivariate polynomials; for a Laurent polynomial R in z^-1 F_q[z],
``lambda_0_uni(S) = Lambda_0(S R^(q-1))`` acts on F_q[z].

The space V spanned by x^i y^j (0 <= i <= h, 0 <= j <= d-1) is split into
seven blocks, listed in this order:

    1. interior      1 <= i <= h-1, 0 <= j <= d-2
    2. left edge     i = 0,         1 <= j <= d-2
    3. origin        x^0 y^0
    4. top edge      1 <= i <= h-1, j = d-1
    5. top-left      x^0 y^(d-1)
    6. right edge    i = h,         0 <= j <= d-2
    7. top-right     x^h y^(d-1)

When d = 1 the origin and the top-left corner coincide; that monomial is
placed in block 5 and block 3 is empty.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .automaton import CartierStepper
from .bounds import ceil_log, floor_log, univariate_bound
from .errors import DomainError, NotInvariantError, OrbitTooLongError
from .furstenberg import FurstenbergInput
from .linalg import MatFq, identity, mat_pow, monomial_coords, operator_matrix
from .polyalg import (
    BiPoly,
    Factorization,
    UniLaurent,
    cartier_uni,
    extract_A,
    extract_B,
    factor,
)

__all__ = [
    "VShape",
    "OrbitReport",
    "lambda_r0",
    "lambda_0_uni",
    "pi_l",
    "pi_r",
    "pi_t",
    "orbit",
    "EmulationResult",
    "check_emulation",
    "FlowReport",
    "check_information_flow",
    "check_module",
    "DegreeReport",
    "check_degree_props",
    "UnivariateReport",
    "check_univariate_theorems",
    "border_denominators",
]

#: sources allowed to feed each target block under lambda_{0,0} (1-based)
FLOW = {
    1: {1, 2, 3, 4, 5, 6, 7},
    2: {2, 3, 5},
    3: {3},
    4: {4, 5, 7},
    5: {5},
    6: {6, 7},
    7: {7},
}


@dataclass(frozen=True)
class VShape:
    h: int
    d: int

    @property
    def blocks(self) -> list[list[tuple[int, int]]]:
        h, d = self.h, self.d
        b1 = [(i, j) for i in range(1, h) for j in range(0, d - 1)]
        b2 = [(0, j) for j in range(1, d - 1)]
        b3 = [(0, 0)] if d >= 2 else []
        b4 = [(i, d - 1) for i in range(1, h)]
        b5 = [(0, d - 1)]
        b6 = [(h, j) for j in range(0, d - 1)]
        b7 = [(h, d - 1)]
        return [b1, b2, b3, b4, b5, b6, b7]

    @property
    def basis(self) -> list[tuple[int, int]]:
        return [k for b in self.blocks for k in b]

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self) -> dict[tuple[int, int], int]:
        """Map from monomial to its 1-based block number."""
        return {k: n + 1 for n, b in enumerate(self.blocks) for k in b}

    def four_blocks(self) -> list[int]:
        """Block numbers (1..4) of the coarse split h(d-1), h, d-1, 1."""
        coarse = {1: 1, 2: 1, 3: 1, 4: 2, 5: 2, 6: 3, 7: 4}
        owner = self.block_of()
        return [coarse[owner[k]] for k in self.basis]

    def contains(self, S: BiPoly) -> bool:
        return all(0 <= i <= self.h and 0 <= j <= self.d - 1 for i, j in S.terms)


def in_W(S: BiPoly, h: int, d: int) -> bool:
    return all(0 <= i <= h - 1 and 0 <= j <= d - 1 for i, j in S.terms)


@dataclass
class OrbitReport:
    transient: int
    period: int
    elements: list | None = None

    @property
    def size(self) -> int:
        return self.transient + self.period

    def check(self, step) -> bool:
        """Distinctness of the stored elements and closure of the cycle."""
        els = self.elements
        if els is None or len(els) != self.size:
            return False
        if len(set(_key(e) for e in els)) != len(els):
            return False
        return _key(step(els[-1])) == _key(els[self.transient])


def _key(e):
    return e.key() if hasattr(e, "key") else e


def orbit(start, step, cap: int = 10 ** 6, store: bool = True) -> OrbitReport:
    """Transient and period of start, step(start), step(step(start)), ..."""
    if cap < 1:
        raise ValueError("cap must be positive")
    seen = {}
    elements = []
    cur = start
    n = 0
    while True:
        k = _key(cur)
        if k in seen:
            t = seen[k]
            return OrbitReport(t, n - t, elements if store else None)
        if n >= cap:
            raise OrbitTooLongError(f"orbit exceeds {cap} elements")
        seen[k] = n
        elements.append(cur)
        cur = step(cur)
        n += 1


# --- operators -------------------------------------------------------------------

_STEPPERS: dict = {}


def _stepper(Q: BiPoly) -> CartierStepper:
    st = _STEPPERS.get(Q)
    if st is None:
        if len(_STEPPERS) > 64:
            _STEPPERS.clear()
        st = _STEPPERS[Q] = CartierStepper(Q, "row")
    return st


def lambda_r0(S: BiPoly, Q: BiPoly, r: int) -> BiPoly:
    S.field.check(Q.field)
    if not 0 <= r < Q.field.q:
        raise ValueError(f"digit {r} out of range")
    return _stepper(Q).step_all(S)[r]


def lambda_0_uni(S: UniLaurent, R: UniLaurent) -> UniLaurent:
    S.field.check(R.field)
    if R.is_zero():
        raise DomainError("R must be nonzero")
    out = cartier_uni(0, S * R ** (R.field.q - 1))
    if not out.is_polynomial():
        raise DomainError("lambda_0 produced negative powers of z")
    return out


def pi_l(S: BiPoly, shape: VShape | None = None) -> UniLaurent:
    """The x^0 slice, as a polynomial in y."""
    return UniLaurent.from_terms(S.field, {j: c for (i, j), c in S.items if i == 0})


def pi_r(S: BiPoly, shape: VShape) -> UniLaurent:
    """The x^h slice divided by x^h, as a polynomial in y."""
    return UniLaurent.from_terms(S.field, {j: c for (i, j), c in S.items if i == shape.h})


def pi_t(S: BiPoly, shape: VShape) -> UniLaurent:
    """The y^(d-1) slice divided by y^(d-1), as a polynomial in x."""
    return UniLaurent.from_terms(S.field, {i: c for (i, j), c in S.items if j == shape.d - 1})


def border_denominators(inp: FurstenbergInput):
    """(A_0/y, A_h/y, B_d) for the left, right and top borders."""
    P = inp.P
    return (extract_A(P, 0).shift(-1), extract_A(P, inp.h).shift(-1), extract_B(P, inp.d))


# --- emulation -------------------------------------------------------------------

@dataclass
class EmulationResult:
    left: bool | None
    right: bool | None
    top: bool | None
    values: tuple = ()

    @property
    def ok(self) -> bool:
        return all(v is not False for v in (self.left, self.right, self.top))


def check_emulation(S: BiPoly, inp: FurstenbergInput) -> EmulationResult:
    """Compare each border projection of lambda_{0,0}(S) with lambda_0 of the projection.

    A check whose hypothesis fails (height above h for the right border,
    degree above d-1 for the top border) is reported as ``None``.
    """
    shape = VShape(inp.h, inp.d)
    A0, Ah, Bd = border_denominators(inp)
    T = lambda_r0(S, inp.Q, 0)
    left = pi_l(T) == lambda_0_uni(pi_l(S), A0)
    right = top = None
    vals = [pi_l(T)]
    if S.is_zero() or S.height <= inp.h:
        right = pi_r(T, shape) == lambda_0_uni(pi_r(S, shape), Ah)
        vals.append(pi_r(T, shape))
    if S.is_zero() or S.degree <= inp.d - 1:
        top = pi_t(T, shape) == lambda_0_uni(pi_t(S, shape), Bd)
        vals.append(pi_t(T, shape))
    return EmulationResult(left, right, top, tuple(vals))


def random_in_V(inp: FurstenbergInput, rng: random.Random) -> BiPoly:
    q = inp.q
    return BiPoly(inp.field, {(i, j): rng.randrange(q)
                              for i in range(inp.h + 1) for j in range(inp.d)})


# --- information flow --------------------------------------------------------------

@dataclass
class FlowReport:
    matrices: dict
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lambda_matrices(inp: FurstenbergInput) -> dict[int, MatFq]:
    """Matrices of lambda_{r,0} on V in the seven-block basis order."""
    shape = VShape(inp.h, inp.d)
    basis = shape.basis
    coords = monomial_coords(basis)
    F = inp.field
    monos = [BiPoly.monomial(F, i, j) for i, j in basis]
    st = _stepper(inp.Q)
    images = [st.step_all(m) for m in monos]
    out = {}
    for r in range(F.q):
        cols = {}
        for n, m in enumerate(monos):
            cols[m] = images[n][r]
        out[r] = operator_matrix(lambda b: cols[b], monos, coords)
    return out


def check_information_flow(inp: FurstenbergInput) -> FlowReport:
    """Zero patterns of the lambda_{r,0} matrices on V.

    r = 0: entry (row in block T, column in block S) must vanish unless S
    may feed T.  r >= 1: the coarse four-block split is upper triangular and
    the last d rows vanish.  Violations are (r, row, col) triples.
    """
    shape = VShape(inp.h, inp.d)
    try:
        mats = lambda_matrices(inp)
    except NotInvariantError as exc:
        return FlowReport({}, [("not-invariant", str(exc))])
    owner = shape.block_of()
    basis = shape.basis
    blk = [owner[k] for k in basis]
    coarse = shape.four_blocks()
    n = len(basis)
    bad = []
    for r, M in mats.items():
        for row in range(n):
            for col in range(n):
                if not M[row, col]:
                    continue
                if r == 0:
                    if blk[col] not in FLOW[blk[row]]:
                        bad.append((r, row, col))
                else:
                    if coarse[col] < coarse[row] or row >= n - inp.d:
                        bad.append((r, row, col))
    return FlowReport(mats, bad)


def check_module(inp: FurstenbergInput) -> list:
    """Basis monomials of W whose image under some lambda_{r,0} leaves W."""
    h, d = inp.h, inp.d
    st = _stepper(inp.Q)
    bad = []
    for i in range(h):
        for j in range(d):
            for r, T in enumerate(st.step_all(BiPoly.monomial(inp.field, i, j))):
                if not in_W(T, h, d):
                    bad.append(((i, j), r))
    return bad


# --- degree properties --------------------------------------------------------------

@dataclass
class DegreeReport:
    violations: list = dc_field(default_factory=list)
    orbit: OrbitReport | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def _deg(f) -> float:
    return f.deg


def check_degree_props(inp: FurstenbergInput) -> DegreeReport:
    """Degree bounds for the images of lambda_{r,0}.

    (i) lambda_{r,0}(S) lies in W for r >= 1, and (ii) lambda_{0,0}(S) has
    height <= h and degree <= d-1, whenever height S <= h and degree S <= d
    (checked on the monomial basis, which suffices by linearity);
    (iii) border degree bounds along the orbit of S0.
    """
    h, d, F = inp.h, inp.d, inp.field
    st = _stepper(inp.Q)
    bad = []
    for i in range(h + 1):
        for j in range(d + 1):
            images = st.step_all(BiPoly.monomial(F, i, j))
            T0 = images[0]
            if not T0.is_zero() and (T0.height > h or T0.degree > d - 1 or T0.min_j < 0):
                bad.append(("lambda00-shape", (i, j)))
            for r in range(1, F.q):
                if not in_W(images[r], h, d):
                    bad.append(("lambda_r0-in-W", (i, j), r))
    shape = VShape(h, d)
    A0, Ah, Bd = border_denominators(inp)
    rep = orbit(inp.S0, lambda S: st.step_all(S)[0], cap=F.q ** ((h + 1) * d) + 2)
    S1 = rep.elements[1] if rep.size > 1 else rep.elements[rep.transient]
    if _deg(pi_l(S1)) > A0.deg:
        bad.append(("left-degree", 1))
    if _deg(pi_r(S1, shape)) > Ah.deg:
        bad.append(("right-degree", 1))
    start = floor_log(F.q, h) + 2
    # the orbit is eventually periodic: checking indices up to start + size covers all
    n_end = max(start, rep.size) + 1
    els = rep.elements
    for n in range(start, n_end):
        idx = n if n < rep.size else rep.transient + (n - rep.transient) % rep.period
        if _deg(pi_t(els[idx], shape)) > Bd.deg:
            bad.append(("top-degree", n))
    return DegreeReport(bad, rep)


# --- univariate theorems -----------------------------------------------------------

@dataclass
class UnivariateReport:
    factorization: Factorization
    t: int
    ell: int
    square_free: bool
    identity_ok: bool | None
    max_orbit: int
    orbit_bound_ok: bool
    divisibility_ok: bool
    decay_ok: bool
    exhaustive: bool
    counterexamples: list = dc_field(default_factory=list)
    periods: set = dc_field(default_factory=set)

    @property
    def ok(self) -> bool:
        return (self.identity_ok is not False and self.orbit_bound_ok
                and self.divisibility_ok and self.decay_ok)


def lambda0_matrix(R: UniLaurent, n: int | None = None) -> MatFq:
    """Matrix of lambda_0 on polynomials of degree <= n (default deg R)."""
    F = R.field
    n = R.deg if n is None else n
    if n < 0:
        raise DomainError("the space of polynomials of degree <= deg R is zero")
    basis = [UniLaurent.monomial(F, j) for j in range(n + 1)]
    return operator_matrix(lambda b: lambda_0_uni(b, R), basis,
                           monomial_coords(list(range(n + 1))))


def _all_polys(F, n: int):
    for coeffs in itertools.product(range(F.q), repeat=n + 1):
        yield UniLaurent(F, coeffs)


def check_univariate_theorems(R: UniLaurent, exhaustive_limit: int = 2 ** 15,
                              samples: int = 2000, seed: int = 0) -> UnivariateReport:
    F = R.field
    if R.is_zero() or R.val < -1:
        raise DomainError("R must be a nonzero element of z^-1 F_q[z]")
    q = F.q
    fact = factor(R)
    t, ell = univariate_bound(fact)
    r = R.deg
    sf = fact.is_square_free() and fact.e0 in (-1, 0)
    bad = []
    identity_ok = None
    if sf and r >= 0:
        M = lambda0_matrix(R)
        identity_ok = mat_pow(M, ell) == identity(F, r + 1)
        if not identity_ok:
            bad.append(("identity", ell))
    step = lambda S: lambda_0_uni(S, R)
    exhaustive = r < 0 or q ** (r + 1) <= exhaustive_limit
    if r < 0:
        space = [UniLaurent(F)]
    elif exhaustive:
        space = _all_polys(F, r)
    else:
        rng = random.Random(seed)
        space = (UniLaurent(F, [rng.randrange(q) for _ in range(r + 1)]) for _ in range(samples))
    max_orbit = 0
    periods = set()
    div_ok = True
    for S in space:
        rep = orbit(S, step, cap=q ** (max(r, 0) + 2) + 2)
        max_orbit = max(max_orbit, rep.size)
        periods.add(rep.period)
        if rep.size > t + ell:
            bad.append(("orbit-size", S, rep.size))
        # divisibility along the orbit
        for Ri, ei in fact.factors:
            if ei < 2:
                continue
            target = Ri ** (ei - 1)
            for n in range(ceil_log(q, ei), rep.size + 1):
                Sn = _orbit_at(rep, n, step)
                if not Sn.is_zero() and not target.divides(Sn):
                    div_ok = False
                    bad.append(("divisible", S, n, Ri))
                    break
        if R.is_polynomial() and fact.e0 >= 1:
            for n in range(floor_log(q, fact.e0) + 1, rep.size + 1):
                Sn = _orbit_at(rep, n, step)
                if not Sn.is_zero() and Sn.val < fact.e0:
                    div_ok = False
                    bad.append(("z-power", S, n))
                    break
    # degree decay for inputs above deg R
    decay_ok = True
    rng = random.Random(seed + 1)
    base = max(r, -1)
    for s in range(base + 1, base + 2 * q + 3):
        for _ in range(8):
            coeffs = [rng.randrange(q) for _ in range(s)] + [rng.randrange(1, q)]
            S = UniLaurent(F, coeffs)
            need = floor_log(q, s - r) + 1
            T = S
            for _ in range(need):
                T = step(T)
            if T.deg > r:
                decay_ok = False
                bad.append(("decay", S, need))
    return UnivariateReport(fact, t, ell, fact.is_square_free(), identity_ok, max_orbit,
                            not any(b[0] == "orbit-size" for b in bad), div_ok, decay_ok,
                            exhaustive, bad, periods)


def _orbit_at(rep: OrbitReport, n: int, step):
    if n < rep.size:
        return rep.elements[n]
    return rep.elements[rep.transient + (n - rep.transient) % rep.period]
