"""Dense matrices over F_q with Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, NotInvariantError
from .gf import FieldSpec, Fq

__all__ = [
    "MatFq",
    "mat_mul",
    "mat_pow",
    "mat_sub",
    "identity",
    "zeros",
    "rank",
    "rref",
    "nullspace_basis",
    "operator_matrix",
]


@dataclass(frozen=True)
class MatFq:
    """Row-major matrix of element codes."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "MatFq":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        flat = []
        for r in rows:
            for c in r:
                if isinstance(c, Fq):
                    flat.append(c.value)
                else:
                    flat.append(c if 0 <= c < field.q else field.reduce_int(c))
        return cls(field, len(rows), ncols, tuple(flat))

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[int]:
        return list(self.entries[j::self.cols])

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "MatFq":
        return MatFq(self.field, self.cols, self.rows,
                     tuple(self.entries[i * self.cols + j]
                           for j in range(self.cols) for i in range(self.rows)))

    def apply(self, v) -> list[int]:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        F = self.field
        out = []
        for i in range(self.rows):
            acc = 0
            base = i * self.cols
            for j, x in enumerate(v):
                if x:
                    acc = F.add(acc, F.mul(self.entries[base + j], x))
            out.append(acc)
        return out

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __str__(self):
        return "\n".join(" ".join(str(c) for c in self.row(i)) for i in range(self.rows))


def identity(field: FieldSpec, n: int) -> MatFq:
    return MatFq(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zeros(field: FieldSpec, rows: int, cols: int) -> MatFq:
    return MatFq(field, rows, cols, (0,) * (rows * cols))


def mat_mul(a: MatFq, b: MatFq) -> MatFq:
    a.field.check(b.field)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    F = a.field
    out = [0] * (a.rows * b.cols)
    for i in range(a.rows):
        for k in range(a.cols):
            x = a.entries[i * a.cols + k]
            if not x:
                continue
            for j in range(b.cols):
                y = b.entries[k * b.cols + j]
                if y:
                    out[i * b.cols + j] = F.add(out[i * b.cols + j], F.mul(x, y))
    return MatFq(F, a.rows, b.cols, tuple(out))


def mat_sub(a: MatFq, b: MatFq) -> MatFq:
    a.field.check(b.field)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError("shape mismatch")
    F = a.field
    return MatFq(F, a.rows, a.cols, tuple(F.sub(x, y) for x, y in zip(a.entries, b.entries)))


def mat_pow(m: MatFq, n: int) -> MatFq:
    if m.rows != m.cols:
        raise DimensionError("matrix power needs a square matrix")
    if n < 0:
        raise ValueError("negative exponent")
    result = identity(m.field, m.rows)
    base = m
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def rref(m: MatFq) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    F = m.field
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(x, inv) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                t = a[i][c]
                a[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank(m: MatFq) -> int:
    return len(rref(m)[1])


def nullspace_basis(m: MatFq) -> list[list[int]]:
    """Basis of {v : m v = 0}, one vector per free column, in canonical form."""
    F = m.field
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(a[r][f])
        basis.append(v)
    return basis


def operator_matrix(op, basis: list, coords) -> MatFq:
    """Matrix of a linear map on span(basis).

    ``coords(v)`` returns the coordinate vector of ``v`` in ``basis`` or raises
    :class:`NotInvariantError` when ``v`` is outside the span.  Column ``j`` is
    the coordinate vector of ``op(basis[j])``.
    """
    if not basis:
        raise DimensionError("empty basis")
    cols = []
    for b in basis:
        cols.append(list(coords(op(b))))
    n = len(basis)
    if any(len(c) != n for c in cols):
        raise NotInvariantError("coordinate vectors have the wrong length")
    field = basis[0].field
    return MatFq(field, n, n, tuple(cols[j][i] for i in range(n) for j in range(n)))


def monomial_coords(basis_keys: list, index_of=None):
    """Coordinate function for a basis of monomials.

    ``basis_keys`` lists the exponent keys in order; the returned function
    maps a polynomial exposing ``terms()`` (UniLaurent) or ``terms`` (BiPoly)
    to codes.
    """
    index = index_of or {k: n for n, k in enumerate(basis_keys)}

    def coords(f) -> list[int]:
        terms = f.terms() if callable(f.terms) else f.terms
        v = [0] * len(basis_keys)
        for k, c in terms.items():
            if k not in index:
                raise NotInvariantError(f"term with exponent {k} is outside the basis")
            v[index[k]] = c
        return v

    return coords
