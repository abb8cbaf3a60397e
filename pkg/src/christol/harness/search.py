"""Exhaustive search over Furstenberg polynomials of fixed height and degree."""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import asdict, dataclass, field as dc_field

from ..automaton import build, minimize
from ..bounds import theorem1_bound
from ..errors import BudgetExceededError
from ..furstenberg import validate
from ..gf import FieldSpec, GF
from ..polyalg import BiPoly, format_bipoly

__all__ = [
    "free_slots",
    "enumerate_candidates",
    "count_candidates",
    "SearchResult",
    "search",
    "orbit_size_from_automaton",
]


def free_slots(h: int, d: int) -> list[tuple[int, int]]:
    """Coefficient positions (i, j) that vary, in lexicographic order."""
    return [(i, j) for i in range(h + 1) for j in range(d + 1) if (i, j) not in ((0, 0), (0, 1))]


def _poly_from_tuple(F: FieldSpec, slots, values) -> BiPoly:
    terms = {(0, 1): 1}
    for k, v in zip(slots, values):
        if v:
            terms[k] = v
    return BiPoly(F, terms)


def _exact(slots, values, h: int, d: int) -> bool:
    hit_h = False
    hit_d = d == 1  # the fixed y term already gives degree 1
    for (i, j), v in zip(slots, values):
        if v:
            if i == h:
                hit_h = True
            if j == d:
                hit_d = True
    return (hit_h or h == 0) and hit_d


def enumerate_candidates(F: FieldSpec, h: int, d: int, start: int = 0, stop: int | None = None):
    """Yield (index, P) for every P with P(0,0) = 0, [x^0 y^1]P = 1, deg_x P = h, deg_y P = d.

    ``index`` is the position of the coefficient tuple in lexicographic
    order over all q^(free slots) tuples; the slice [start, stop) of that
    order is enumerated.
    """
    if h < 1 or d < 1:
        raise ValueError("need h >= 1 and d >= 1")
    slots = free_slots(h, d)
    it = itertools.product(range(F.q), repeat=len(slots))
    for idx, values in enumerate(itertools.islice(it, start, stop), start):
        if _exact(slots, values, h, d):
            yield idx, _poly_from_tuple(F, slots, values)


def count_candidates(F: FieldSpec, h: int, d: int) -> int:
    """Closed-form count by inclusion-exclusion over the exactness conditions."""
    q = F.q
    slots = free_slots(h, d)
    n = len(slots)
    row_h = sum(1 for i, j in slots if i == h)
    col_d = sum(1 for i, j in slots if j == d)
    both = sum(1 for i, j in slots if i == h and j == d)
    total = q ** n
    no_h = q ** (n - row_h)
    no_d = q ** (n - col_d) if d > 1 else 0
    no_both = q ** (n - row_h - col_d + both) if d > 1 else 0
    return total - no_h - no_d + no_both


def orbit_size_from_automaton(a) -> int:
    """Number of distinct states on the all-zero path from the initial state.

    States of a constructed automaton are distinct polynomials, so this is
    the size of the orbit of S0 under lambda_{0,0}.
    """
    seen = set()
    s = a.initial
    while s not in seen:
        seen.add(s)
        s = a.transitions[s][0]
    return len(seen)


@dataclass
class SearchResult:
    q: int
    h: int
    d: int
    candidates_examined: int = 0
    max_unminimized_size: int = 0
    argmax_poly: str = ""
    argmax_index: int = -1
    minimized_size_of_argmax: int | None = None
    bound_total: int = 0
    histogram: dict = dc_field(default_factory=dict)
    max_orbit_size: int = 0
    argmax_orbit_poly: str = ""
    argmax_orbit_index: int = -1
    orbit_histogram: dict = dc_field(default_factory=dict)
    complete: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        d["orbit_histogram"] = {str(k): v for k, v in sorted(self.orbit_histogram.items())}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResult":
        d = dict(d)
        d["histogram"] = {int(k): v for k, v in d.get("histogram", {}).items()}
        d["orbit_histogram"] = {int(k): v for k, v in d.get("orbit_histogram", {}).items()}
        return cls(**d)


def _better(size, idx, best_size, best_idx) -> bool:
    return size > best_size or (size == best_size and 0 <= idx < best_idx) or best_idx < 0


def _merge(a: SearchResult, b: SearchResult) -> SearchResult:
    """Associative, commutative combination of two partial results."""
    out = SearchResult(a.q, a.h, a.d)
    out.candidates_examined = a.candidates_examined + b.candidates_examined
    out.bound_total = a.bound_total or b.bound_total
    for src in (a, b):
        for k, v in src.histogram.items():
            out.histogram[k] = out.histogram.get(k, 0) + v
        for k, v in src.orbit_histogram.items():
            out.orbit_histogram[k] = out.orbit_histogram.get(k, 0) + v
    for src in (a, b):
        if src.argmax_index >= 0 and _better(src.max_unminimized_size, src.argmax_index,
                                             out.max_unminimized_size, out.argmax_index):
            out.max_unminimized_size = src.max_unminimized_size
            out.argmax_index = src.argmax_index
            out.argmax_poly = src.argmax_poly
        if src.argmax_orbit_index >= 0 and _better(src.max_orbit_size, src.argmax_orbit_index,
                                                   out.max_orbit_size, out.argmax_orbit_index):
            out.max_orbit_size = src.max_orbit_size
            out.argmax_orbit_index = src.argmax_orbit_index
            out.argmax_orbit_poly = src.argmax_orbit_poly
    out.complete = a.complete and b.complete
    return out


def _search_chunk(args) -> SearchResult:
    p, e, h, d, start, stop, cap = args
    F = GF(p, e)
    res = SearchResult(F.q, h, d)
    for idx, P in enumerate_candidates(F, h, d, start, stop):
        a = build(validate(P), max_states=cap)
        size = len(a)
        orb = orbit_size_from_automaton(a)
        res.candidates_examined += 1
        res.histogram[size] = res.histogram.get(size, 0) + 1
        res.orbit_histogram[orb] = res.orbit_histogram.get(orb, 0) + 1
        if _better(size, idx, res.max_unminimized_size, res.argmax_index):
            res.max_unminimized_size, res.argmax_index = size, idx
            res.argmax_poly = format_bipoly(P)
        if _better(orb, idx, res.max_orbit_size, res.argmax_orbit_index):
            res.max_orbit_size, res.argmax_orbit_index = orb, idx
            res.argmax_orbit_poly = format_bipoly(P)
    return res


def search(F: FieldSpec, h: int, d: int, jobs: int = 1, budget: int | None = None,
           chunk: int = 256) -> SearchResult:
    """Build every candidate's automaton (unminimized) and record size statistics.

    The argmax of the unminimized size (ties: first in enumeration order) is
    minimized once at the end.  ``budget`` caps the number of coefficient
    tuples visited; exceeding it raises :class:`BudgetExceededError` carrying
    the partial result.
    """
    total = F.q ** len(free_slots(h, d))
    limit = total if budget is None else min(total, budget)
    cap = F.q ** ((h + 1) * d) + 1
    tasks = [(F.p, F.e, h, d, s, min(s + chunk, limit), cap) for s in range(0, limit, chunk)]
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.get_context("spawn").Pool(jobs) as pool:
            parts = pool.map(_search_chunk, tasks)
    else:
        parts = [_search_chunk(t) for t in tasks]
    res = SearchResult(F.q, h, d)
    for part in parts:
        res = _merge(res, part)
    res.bound_total = theorem1_bound(F.q, h, d).total
    if limit < total:
        res.complete = False
        raise BudgetExceededError(
            f"visited {limit} of {total} coefficient tuples", partial=res)
    if res.argmax_index >= 0:
        from .parser import parse_bipoly
        P = parse_bipoly(res.argmax_poly, F)
        res.minimized_size_of_argmax = len(minimize(build(validate(P))))
    return res
