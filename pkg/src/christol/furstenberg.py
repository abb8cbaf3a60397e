"""Furstenberg series: input validation and coefficient expansions.

Three independent routes compute the coefficients of the series F with
F(0) = 0 and P(x, F) = 0:

* :func:`series_prefix` solves P(x, F) = 0 term by term (or by Newton
  iteration for long prefixes over prime fields);
* :func:`center_row_prefix` reads the y^0 row of S0/Q with Q = P/y;
* :func:`diagonal_prefix` reads the diagonal of the sheared pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CannotExpandError, NotFurstenbergError
from .gf import FieldSpec, Fq
from .polyalg import BiPoly, subst_shear, y_times_partial_y

__all__ = [
    "FurstenbergInput",
    "SeriesPrefix",
    "validate",
    "series_prefix",
    "center_row_prefix",
    "diagonal_prefix",
    "furstenberg_pair",
    "residual_valuation",
]


@dataclass(frozen=True)
class FurstenbergInput:
    P: BiPoly
    h: int
    d: int
    S0: BiPoly
    Q: BiPoly
    trivial: bool = False

    @property
    def field(self) -> FieldSpec:
        return self.P.field

    @property
    def q(self) -> int:
        return self.P.field.q


@dataclass(frozen=True)
class SeriesPrefix:
    """The first ``N`` coefficients of a power series, as element codes."""

    field: FieldSpec
    coeffs: tuple

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def elements(self) -> list[Fq]:
        return [Fq(self.field, c) for c in self.coeffs]


def validate(P: BiPoly) -> FurstenbergInput:
    """Check P(0,0) = 0 and dP/dy(0,0) != 0 and precompute Q = P/y and S0."""
    if P.is_zero():
        raise NotFurstenbergError("P is the zero polynomial")
    if not P.is_polynomial():
        raise NotFurstenbergError("P has negative powers of y")
    if P.code(0, 0) != 0:
        raise NotFurstenbergError("P(0, 0) != 0")
    if P.code(0, 1) == 0:
        raise NotFurstenbergError("dP/dy(0, 0) = 0")
    h, d = P.height, P.degree
    return FurstenbergInput(P=P, h=h, d=d, S0=y_times_partial_y(P), Q=P.shift(0, -1),
                            trivial=(h == 0))


# --- helpers --------------------------------------------------------------------

def _rows_by_x(f: BiPoly) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for (i, j), c in f.items:
        rows.setdefault(i, {})[j] = c
    return rows


def _cols_by_y(f: BiPoly) -> dict[int, dict[int, int]]:
    cols: dict[int, dict[int, int]] = {}
    for (i, j), c in f.items:
        cols.setdefault(j, {})[i] = c
    return cols


def _conv(F: FieldSpec, a, b, n: int) -> list[int]:
    """First ``n`` coefficients of the product of two code sequences."""
    a, b = a[:n], b[:n]
    if not len(a) or not len(b):
        return [0] * n
    if F.e == 1:
        if min(len(a), len(b)) > 256:
            out = _fft_conv(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), F.p)
        else:
            out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % F.p
        out = [int(v) for v in out[:n]]
        return out + [0] * (n - len(out))
    out = [0] * n
    add, mul = F._add, F._mul
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return out


def _fft_conv(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p of small nonnegative integer sequences.

    Inputs are split into 8-bit halves when needed so every float64 FFT
    coefficient stays far below 2**52.
    """
    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()
    if len(a) * (p - 1) ** 2 < 2 ** 40:
        fa = np.fft.rfft(a.astype(np.float64), size)
        fb = np.fft.rfft(b.astype(np.float64), size)
        return np.rint(np.fft.irfft(fa * fb, size)[:n]).astype(np.int64) % p
    lo_a, hi_a = a & 0xFF, a >> 8
    lo_b, hi_b = b & 0xFF, b >> 8
    ll = _fft_conv(lo_a, lo_b, p)
    lh = _fft_conv(lo_a, hi_b, p)
    hl = _fft_conv(hi_a, lo_b, p)
    hh = _fft_conv(hi_a, hi_b, p)
    return (ll + (lh + hl) * 256 + hh * (65536 % p)) % p


# --- route 1: direct solve of P(x, F) = 0 ------------------------------------------

def series_prefix(inp: FurstenbergInput, N: int, method: str = "auto") -> SeriesPrefix:
    """First ``N`` coefficients of the Furstenberg series of ``inp.P``.

    ``method`` is ``"iterative"`` (term-by-term solve, any field),
    ``"newton"`` (Newton iteration with FFT products, prime fields only) or
    ``"auto"`` (Newton for long prefixes over prime fields).
    """
    if N < 1:
        raise ValueError("N must be positive")
    F = inp.field
    if method == "auto":
        method = "newton" if F.e == 1 and N > 256 else "iterative"
    if method == "iterative":
        return SeriesPrefix(F, tuple(_series_iterative(inp.P, N)))
    if method == "newton":
        if F.e != 1:
            raise ValueError("the Newton route needs a prime field")
        return SeriesPrefix(F, tuple(_series_newton(inp.P, N)))
    raise ValueError(f"unknown method {method!r}")


def _series_iterative(P: BiPoly, N: int) -> list[int]:
    """a(n) = -[x^n] P(x, F_{<n}) / P_y(0, 0).

    Because a(0) = 0, the coefficient of x^m in F^j (j >= 2) only involves
    a(1..m-1), so the powers of F are extended one coefficient at a time.
    """
    F = P.field
    cols = _cols_by_y(P)
    d = P.degree
    c01 = P.code(0, 1)
    minus_inv = F.neg(F.inv(c01))
    a = [0] * N
    # powers[j][m] = [x^m] F^j, for 1 <= j <= d
    powers = [None] + [[0] * N for _ in range(d)]
    col0 = cols.get(0, {})
    col1 = {i: c for i, c in cols.get(1, {}).items() if i >= 1}
    higher = [(j, cols[j]) for j in range(2, d + 1) if j in cols]
    for n in range(1, N):
        for j in range(2, d + 1):
            # [x^n] F^j = sum_{k=1}^{n-1} a(k) [x^(n-k)] F^(j-1)
            prev = powers[j - 1]
            acc = 0
            for k in range(1, n):
                ak = a[k]
                if ak:
                    pk = prev[n - k]
                    if pk:
                        acc = F.add(acc, F.mul(ak, pk))
            powers[j][n] = acc
        acc = col0.get(n, 0)
        for i, c in col1.items():
            if i <= n:
                acc = F.add(acc, F.mul(c, a[n - i]))
        for j, col in higher:
            pw = powers[j]
            for i, c in col.items():
                if i <= n and pw[n - i]:
                    acc = F.add(acc, F.mul(c, pw[n - i]))
        a[n] = F.mul(acc, minus_inv)
        powers[1][n] = a[n]
    return a


def _series_newton(P: BiPoly, N: int) -> list[int]:
    F = P.field
    p = F.p
    cols = _cols_by_y(P)
    d = P.degree

    def col(j, n):
        out = np.zeros(n, dtype=np.int64)
        for i, c in cols.get(j, {}).items():
            if i < n:
                out[i] = c
        return out

    def mul(a, b, n):
        return np.asarray(_conv(F, a.tolist(), b.tolist(), n), dtype=np.int64)

    def inverse(g, n):
        h = np.array([pow(int(g[0]), -1, p)], dtype=np.int64)
        k = 1
        while k < n:
            k = min(2 * k, n)
            gh = mul(g[:k], h, k)
            two_minus = (-gh) % p
            two_minus[0] = (two_minus[0] + 2) % p
            h = mul(h, two_minus, k)
        return h

    f = np.zeros(1, dtype=np.int64)
    k = 1
    while k < N:
        k = min(2 * k, N)
        fk = np.zeros(k, dtype=np.int64)
        fk[:len(f)] = f
        # Horner evaluation of P(x, f) and P_y(x, f) modulo x^k
        val = col(d, k)
        der = (d * col(d, k)) % p
        for j in range(d - 1, -1, -1):
            val = (mul(val, fk, k) + col(j, k)) % p
            if j >= 1:
                der = (mul(der, fk, k) + j * col(j, k)) % p
        step = mul(val, inverse(der, k), k)
        f = (fk - step) % p
    out = [int(v) for v in f[:N]]
    return out + [0] * (N - len(out))


def residual_valuation(P: BiPoly, prefix: SeriesPrefix) -> float:
    """Valuation of P(x, F_N) where F_N is the truncated series; capped at N."""
    F = P.field
    N = prefix.N
    cols = _cols_by_y(P)
    f = list(prefix.coeffs)
    power = [1] + [0] * (N - 1)
    total = [0] * N
    for j in range(0, P.degree + 1):
        if j:
            power = _conv(F, power, f, N)
        for i, c in cols.get(j, {}).items():
            for m in range(i, N):
                if power[m - i]:
                    total[m] = F.add(total[m], F.mul(c, power[m - i]))
    for m, v in enumerate(total):
        if v:
            return m
    return N


# --- route 2: y^0 row of S/Q --------------------------------------------------------

def center_row_prefix(S: BiPoly, Q: BiPoly, N: int) -> SeriesPrefix:
    """First ``N`` coefficients of the y^0 row of S/Q.

    S/Q is expanded in F_q((y))[[x]]: the x^0 row Q_0(y) of Q must be a power
    series in y with Q_0(0) = Q(0, 0) != 0, and 1/Q_0 is expanded as a power
    series in y.  Writing G_m for the x^m row of S/Q,

        G_m = (S_m - sum_{i >= 1} Q_i G_{m-i}) / Q_0.

    Every Q_i with i >= 1 has y-valuation >= -w (w = max(0, -min_j Q)), so to
    know G_m up to y^0 for all m < N it suffices to know G_k up to
    y^(w (N - 1 - k)).  The computation below uses exactly that window, so
    the reported row is exact.
    """
    Fd = S.field
    Fd.check(Q.field)
    if Q.code(0, 0) == 0:
        raise CannotExpandError("Q(0, 0) = 0: no expansion around the constant term")
    qrows = _rows_by_x(Q)
    q0 = qrows.get(0, {})
    if min(q0) < 0:
        raise CannotExpandError("the x^0 row of Q has negative powers of y")
    w = max(0, -Q.min_j)
    srows = _rows_by_x(S)
    q0_dense = [q0.get(j, 0) for j in range(max(q0) + 1)]
    inv_c = Fd.inv(q0_dense[0])
    # G_k stored as (lo, dense list) covering exponents lo .. top_k
    G: list[tuple[int, list[int]]] = []
    out = []
    base_lo = min(0, S.min_j)
    for m in range(N):
        top = w * (N - 1 - m)
        lo = base_lo - w * m
        width = top - lo + 1
        rhs = [0] * width
        for j, c in srows.get(m, {}).items():
            if lo <= j <= top:
                rhs[j - lo] = Fd.add(rhs[j - lo], c)
        for i, row in qrows.items():
            if i == 0 or i > m:
                continue
            glo, g = G[m - i]
            for jq, cq in row.items():
                neg = Fd.neg(cq)
                for t, gv in enumerate(g):
                    if gv:
                        e = glo + t + jq
                        if lo <= e <= top:
                            rhs[e - lo] = Fd.add(rhs[e - lo], Fd.mul(neg, gv))
        # divide by Q_0 as a power series in y, ascending
        g = [0] * width
        for t in range(width):
            acc = rhs[t]
            for s in range(1, min(t, len(q0_dense) - 1) + 1):
                if q0_dense[s] and g[t - s]:
                    acc = Fd.sub(acc, Fd.mul(q0_dense[s], g[t - s]))
            g[t] = Fd.mul(acc, inv_c)
        G.append((lo, g))
        out.append(g[-lo] if lo <= 0 <= top else 0)
    return SeriesPrefix(Fd, tuple(out))


# --- route 3: diagonal of S/Q -------------------------------------------------------

def diagonal_prefix(S: BiPoly, Q: BiPoly, N: int) -> SeriesPrefix:
    """First ``N`` diagonal coefficients g(n, n) of the power series S/Q."""
    Fd = S.field
    Fd.check(Q.field)
    if not (S.is_polynomial() and Q.is_polynomial()):
        raise CannotExpandError("diagonal expansion needs plain polynomials")
    if Q.code(0, 0) == 0:
        raise CannotExpandError("Q(0, 0) = 0: S/Q is not a power series")
    qrows = _rows_by_x(Q)
    srows = _rows_by_x(S)

    def dense(row):
        out = [0] * N
        for j, c in row.items():
            if j < N:
                out[j] = c
        return out

    q0 = dense(qrows.get(0, {}))
    inv_q0 = _series_inverse(Fd, q0, N)
    qd = {i: dense(r) for i, r in qrows.items() if i > 0}
    G: list[list[int]] = []
    out = []
    for m in range(N):
        rhs = dense(srows.get(m, {}))
        for i, qi in qd.items():
            if i <= m:
                prod = _conv(Fd, qi, G[m - i], N)
                rhs = [Fd.sub(x, y) for x, y in zip(rhs, prod)]
        g = _conv(Fd, rhs, inv_q0, N)
        G.append(g)
        out.append(g[m])
    return SeriesPrefix(Fd, tuple(out))


def _series_inverse(F: FieldSpec, g: list[int], n: int) -> list[int]:
    inv0 = F.inv(g[0])
    out = [0] * n
    for k in range(n):
        acc = 1 if k == 0 else 0
        for s in range(1, min(k, len(g) - 1) + 1):
            if g[s] and out[k - s]:
                acc = F.sub(acc, F.mul(g[s], out[k - s]))
        out[k] = F.mul(acc, inv0)
    return out


def furstenberg_pair(inp: FurstenbergInput) -> tuple[BiPoly, BiPoly]:
    """(S, Q) whose diagonal S/Q is the Furstenberg series.

    S = (y dP/dy)(xy, y) and Q = P(xy, y)/y; both are plain polynomials and
    Q(0, 0) = dP/dy(0, 0).
    """
    S = subst_shear(inp.S0, "x->xy")
    Q = subst_shear(inp.P, "x->xy").shift(0, -1)
    return S, Q
