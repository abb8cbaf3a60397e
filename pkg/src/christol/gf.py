"""Finite fields F_q, q = p^e.

Elements are stored as integer codes in ``[0, q)``: the code of an element
with power-basis coordinates ``(c_0, ..., c_{e-1})`` is ``sum(c_i * p**i)``.
Polynomial containers elsewhere in the package hold these raw codes and call
the arithmetic methods of :class:`FieldSpec`; :class:`Fq` is the boxed value
type exposed to users.

For ``e == 1`` arithmetic is plain modular arithmetic.  For ``e > 1`` the
addition, multiplication, negation and inversion tables are precomputed once
per field, which is cheap at the sizes this package targets (q up to a few
hundred).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

from .errors import FieldMismatchError, InvalidFieldError

__all__ = [
    "FieldSpec",
    "Fq",
    "GF",
    "find_irreducible",
    "is_prime",
    "field_of_order",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# --- dense polynomials over F_p, ascending coefficient lists ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_poly(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for k in range(dm + 1):
            a[shift + k] = (a[shift + k] - c * m[k]) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int):
    """Monic polynomials of degree ``deg`` in base-p encoded-integer order."""
    for n in range(p ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def _is_irreducible_fp(f: list[int], p: int) -> bool:
    deg = len(f) - 1
    if deg <= 1:
        return deg == 1
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not _mod_poly(f, g, p):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e`` over F_p.

    "Smallest" means the ascending coefficient tuple ``(c_0, ..., c_{e-1})``
    read as the base-p integer ``sum(c_i p^i)`` is minimal.  The result is the
    full ascending coefficient tuple including the leading 1; for ``e == 1``
    this is ``(0, 1)``, i.e. the polynomial z.
    """
    if not is_prime(p):
        raise InvalidFieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise InvalidFieldError(f"extension degree must be >= 1, got {e}")
    for f in _monic_polys(p, e):
        if _is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field F_{p^e} presented as F_p[z] / (modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]
    _add: tuple = dc_field(default=(), repr=False)
    _mul: tuple = dc_field(default=(), repr=False)
    _neg: tuple = dc_field(default=(), repr=False)
    _inv: tuple = dc_field(default=(), repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __call__(self, value) -> "Fq":
        """Box an element: an int code in [0, q), any other int n as n * 1, or a coordinate list."""
        if isinstance(value, Fq):
            self.check(value.field)
            return value
        if isinstance(value, (list, tuple)):
            return Fq(self, self.from_coords(value))
        if 0 <= value < self.q:
            return Fq(self, value)
        return Fq(self, self.reduce_int(value))

    # -- codes ---------------------------------------------------------------

    def reduce_int(self, n: int) -> int:
        """Embed an integer via its image in the prime subfield."""
        return n % self.p

    def from_coords(self, coords) -> int:
        if len(coords) > self.e:
            raise InvalidFieldError(
                f"{len(coords)} coordinates given for a degree-{self.e} field")
        code = 0
        for c in reversed(list(coords)):
            code = code * self.p + (int(c) % self.p)
        return code

    def coords(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def decode(self, n: int) -> "Fq":
        if not 0 <= n < self.q:
            raise InvalidFieldError(f"{n} is not an element code of {self!r}")
        return Fq(self, n)

    def elements(self) -> list["Fq"]:
        return [Fq(self, k) for k in range(self.q)]

    def check(self, other: "FieldSpec") -> None:
        if other is not self and other != self:
            raise FieldMismatchError(f"{self!r} and {other!r} differ")

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Code of the integer ``n`` (the element n * 1)."""
        return n % self.p

    def pth_root(self, a: int) -> int:
        """Inverse of the Frobenius map a -> a^p."""
        return self.pow(a, self.p ** (self.e - 1))


def GF(p: int, e: int = 1) -> FieldSpec:
    """Construct (and cache) the field with ``p**e`` elements."""
    return _build_field(int(p), int(e))


@functools.lru_cache(maxsize=None)
def _build_field(p: int, e: int) -> FieldSpec:
    modulus = find_irreducible(p, e)
    if e == 1:
        return FieldSpec(p, 1, modulus)
    q = p ** e
    m = list(modulus)
    vec = [tuple((k // p ** i) % p for i in range(e)) for k in range(q)]

    def code(cs):
        return sum(c * p ** i for i, c in enumerate(cs))

    add = tuple(
        tuple(code([(x + y) % p for x, y in zip(vec[a], vec[b])]) for b in range(q))
        for a in range(q))
    neg = tuple(code([-x % p for x in vec[a]]) for a in range(q))
    mul_rows = []
    for a in range(q):
        row = []
        for b in range(q):
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(vec[a]):
                if x:
                    for j, y in enumerate(vec[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            red = _mod_poly(prod, m, p)
            row.append(code(red))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    inv = [0] * q
    for a, b in itertools.product(range(1, q), repeat=2):
        if mul[a][b] == 1:
            inv[a] = b
    return FieldSpec(p, e, modulus, add, mul, neg, tuple(inv))


def field_of_order(q: int) -> FieldSpec:
    """The canonical field of order ``q`` (q must be a prime power)."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise InvalidFieldError(f"{q} is not a prime power")
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not is_prime(p):
        raise InvalidFieldError(f"{q} is not a prime power")
    return GF(p, e)


@dataclass(frozen=True)
class Fq:
    """An element of a finite field, carried together with its field."""

    field: FieldSpec
    value: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def __int__(self):
        return self.value

    def _other(self, other) -> int:
        if not isinstance(other, Fq):
            raise FieldMismatchError(f"cannot combine {self!r} with {type(other).__name__}")
        self.field.check(other.field)
        return other.value

    def __add__(self, other):
        return Fq(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return Fq(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return Fq(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return Fq(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Fq(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Fq(self.field, self.field.pow(self.value, n))

    def inv(self) -> "Fq":
        return Fq(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.field.e == 1:
            return f"{self.value}"
        return "[" + ",".join(map(str, self.coords)) + "]"


# functional spellings of the field operations

def add(a: Fq, b: Fq) -> Fq:
    return a + b


def sub(a: Fq, b: Fq) -> Fq:
    return a - b


def mul(a: Fq, b: Fq) -> Fq:
    return a * b


def neg(a: Fq) -> Fq:
    return -a


def inv(a: Fq) -> Fq:
    return a.inv()


def power(a: Fq, n: int) -> Fq:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    return a ** n


def enumerate_field(spec: FieldSpec) -> list[Fq]:
    """All q elements, ordered by code (0 first, 1 second)."""
    return spec.elements()


def int_encode(a: Fq) -> int:
    return a.value


def int_decode(spec: FieldSpec, n: int) -> Fq:
    return spec.decode(n)
