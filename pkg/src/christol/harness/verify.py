"""One-shot property driver over every candidate of a (q, h, d) cell."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from ..automaton import (
    Dfao,
    build,
    kernel_oracle,
    leading_zero_violations,
    minimize,
    run_codes,
)
from ..bounds import theorem1_bound
from ..errors import InconclusiveError
from ..furstenberg import series_prefix, validate
from ..gf import FieldSpec
from ..orbits import (
    check_degree_props,
    check_emulation,
    check_information_flow,
    check_module,
    random_in_V,
)
from ..polyalg import BiPoly, cartier_bi, format_bipoly
from .search import enumerate_candidates, orbit_size_from_automaton

__all__ = ["VerifyReport", "verify_all", "cartier_identity_failures", "flip_transition"]

CHECKS = (
    "series", "leading-zero", "cartier", "module", "emulation", "flow",
    "degree", "sandwich", "bound", "orbit-bound",
)


@dataclass
class VerifyReport:
    q: int
    h: int
    d: int
    candidates: int = 0
    violations: dict = dc_field(default_factory=lambda: {c: 0 for c in CHECKS})
    counterexamples: list = dc_field(default_factory=list)
    max_minimized: int = 0
    max_unminimized: int = 0
    bound_total: int = 0
    kernel_inconclusive: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def record(self, check: str, poly: str, detail, keep: int = 20):
        self.violations[check] += 1
        if len(self.counterexamples) < keep:
            self.counterexamples.append({"check": check, "poly": poly, "detail": str(detail)})


def _random_bipoly(F: FieldSpec, rng: random.Random, hmax: int, dmax: int) -> BiPoly:
    return BiPoly(F, {(i, j): rng.randrange(F.q)
                      for i in range(rng.randint(0, hmax) + 1)
                      for j in range(rng.randint(0, dmax) + 1)})


def cartier_identity_failures(F: FieldSpec, pairs: int = 1000, seed: int = 0) -> list:
    """Pairs (G, H) with Lambda_{r,s}(G H^q) != Lambda_{r,s}(G) H for some digits r, s.

    Linearity of Lambda_{r,s} is checked on the same pairs.
    """
    rng = random.Random(seed)
    q = F.q
    bad = []
    for _ in range(pairs):
        G = _random_bipoly(F, rng, 4, 4)
        H = _random_bipoly(F, rng, 2, 2)
        GHq = G * H ** q
        r, s = rng.randrange(q), rng.randrange(q)
        if cartier_bi(r, s, GHq) != cartier_bi(r, s, G) * H:
            bad.append(("identity", format_bipoly(G), format_bipoly(H), r, s))
        if cartier_bi(r, s, G + H) != cartier_bi(r, s, G) + cartier_bi(r, s, H):
            bad.append(("linearity", format_bipoly(G), format_bipoly(H), r, s))
    return bad


def flip_transition(a: Dfao) -> Dfao:
    """Fault injection: redirect one transition from the initial state to a state
    with a different output, so the automaton disagrees with its series at a
    one-digit index."""
    tr = [list(row) for row in a.transitions]
    s0 = a.initial
    for r in range(1, a.q):
        cur = a.outputs[tr[s0][r]]
        for t in range(a.num_states):
            if a.outputs[t] != cur:
                tr[s0][r] = t
                return Dfao(a.field, list(a.outputs), tr, s0, None)
    return a


def verify_all(F: FieldSpec, h: int, d: int, N: int = 512, tamper=None,
               emulation_samples: int = 4, cartier_pairs: int = 1000,
               seed: int = 0) -> VerifyReport:
    """Run every structural check on every candidate of the cell.

    ``tamper`` (a function Dfao -> Dfao) is applied to each built automaton
    before the checks, to exercise the failure path.
    """
    rng = random.Random(seed)
    q = F.q
    bound = theorem1_bound(q, h, d)
    cap = q ** ((h + 1) * d) + 1
    rep = VerifyReport(q, h, d, bound_total=bound.total)
    for item in cartier_identity_failures(F, cartier_pairs, seed):
        rep.record("cartier", "", item)
    for _, P in enumerate_candidates(F, h, d):
        rep.candidates += 1
        name = format_bipoly(P)
        inp = validate(P)
        a = build(inp, max_states=cap)
        if tamper is not None:
            a = tamper(a)
        prefix = series_prefix(inp, N)
        got = run_codes(a, N)
        if got != list(prefix.coeffs):
            n = next(i for i, (x, y) in enumerate(zip(got, prefix.coeffs)) if x != y)
            rep.record("series", name, f"first mismatch at n = {n}")
        lz = leading_zero_violations(a)
        if lz:
            rep.record("leading-zero", name, f"states {lz[:5]}")
        bad = check_module(inp)
        if bad:
            rep.record("module", name, bad[:5])
        for S in [inp.S0] + [random_in_V(inp, rng) for _ in range(emulation_samples)]:
            em = check_emulation(S, inp)
            if not em.ok:
                rep.record("emulation", name, f"S = {format_bipoly(S)}: {em}")
        flow = check_information_flow(inp)
        if not flow.ok:
            rep.record("flow", name, flow.violations[:5])
        deg = check_degree_props(inp)
        if not deg.ok:
            rep.record("degree", name, deg.violations[:5])
        m = minimize(a, check=False)
        try:
            kern = kernel_oracle(prefix).distinct_count
        except InconclusiveError:
            kern = 0
            rep.kernel_inconclusive += 1
        if not kern <= len(m) <= len(a) <= cap:
            rep.record("sandwich", name, f"kernel {kern}, minimized {len(m)}, "
                                         f"unminimized {len(a)}, cap {cap}")
        if len(m) > bound.total:
            rep.record("bound", name, f"minimized {len(m)} > {bound.total}")
        orb = orbit_size_from_automaton(a)
        if orb > bound.without_main or len(a) > q ** (h * d) + orb:
            rep.record("orbit-bound", name, f"orbit {orb}, unminimized {len(a)}")
        rep.max_minimized = max(rep.max_minimized, len(m))
        rep.max_unminimized = max(rep.max_unminimized, len(a))
    return rep
