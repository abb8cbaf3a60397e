from __future__ import annotations

import itertools

import pytest

from christol.gf import GF
from christol.harness.parser import parse_bipoly

RUNNING = "(x^2+x+2)y^4 + x y^3 + (2x+1)y^2 + (x^2+1)y + 2x^2 + x"
SHARP = "(x^3+x^2+1)y^3 + (x^3+1)y^2 + (x^3+x^2+x+1)y + x^3+x^2"


@pytest.fixture(scope="session")
def running_P():
    return parse_bipoly(RUNNING, GF(3))


@pytest.fixture(scope="session")
def sharp_P():
    return parse_bipoly(SHARP, GF(2))


def poly_mul_mod_p(a, b, p):
    """Schoolbook product of ascending coefficient lists over F_p (test oracle)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def brute_irreducible(f, p):
    """f (ascending, monic) is irreducible iff it is no product of two monic factors of lower degree."""
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for lo in itertools.product(range(p), repeat=k):
            g = list(lo) + [1]
            for lo2 in itertools.product(range(p), repeat=n - k):
                if poly_mul_mod_p(g, list(lo2) + [1], p) == list(f):
                    return False
    return True
