"""Automata with output (DFAO) reading base-q digits least significant first."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CannotExpandError, DomainError, InconclusiveError, ParseError
from .furstenberg import FurstenbergInput, SeriesPrefix
from .gf import FieldSpec, Fq, field_of_order
from .polyalg import BiPoly, format_bipoly

__all__ = [
    "Dfao",
    "KernelOracleReport",
    "CartierStepper",
    "build",
    "build_diagonal",
    "run",
    "minimize",
    "kernel_oracle",
    "serialize",
    "deserialize",
    "leading_zero_violations",
    "bfs_depth",
]


@dataclass
class Dfao:
    """Deterministic finite automaton with output.

    ``transitions[s][r]`` is the state reached from ``s`` on digit ``r``;
    ``outputs[s]`` is an element code.  ``labels`` holds optional state
    labels (BiPoly numerators for constructed automata).
    """

    field: FieldSpec
    outputs: list
    transitions: list
    initial: int = 0
    labels: list = dc_field(default=None)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def num_states(self) -> int:
        return len(self.outputs)

    def __len__(self):
        return len(self.outputs)

    def output(self, s: int) -> Fq:
        return Fq(self.field, self.outputs[s])

    def step(self, s: int, r: int) -> int:
        return self.transitions[s][r]

    def validate(self) -> None:
        n = len(self.outputs)
        if n == 0:
            raise DomainError("automaton has no states")
        if len(self.transitions) != n:
            raise DomainError("transition table size differs from the state count")
        if not 0 <= self.initial < n:
            raise DomainError("initial state out of range")
        for s, row in enumerate(self.transitions):
            if len(row) != self.q:
                raise DomainError(f"state {s} does not have {self.q} transitions")
            if any(not 0 <= t < n for t in row):
                raise DomainError(f"state {s} has a transition out of range")
        if any(not 0 <= o < self.q for o in self.outputs):
            raise DomainError("output code out of range")


@dataclass(frozen=True)
class KernelOracleReport:
    distinct_count: int
    representatives: tuple
    window: int
    status: str = "lower-bound"
    closed: bool = False
    depth: int = 0


class CartierStepper:
    """Computes S -> Lambda_{r,s}(S * Q^(q-1)) for all digits r at once.

    ``mode="row"`` gives the operators Lambda_{r,0} (transitions of the
    Furstenberg automaton); ``mode="diag"`` gives Lambda_{r,r} (diagonal
    automaton).  The terms of Q^(q-1) are bucketed by the residue that makes
    the y-exponent (resp. the difference of exponents) of a product term
    divisible by q, so only contributing pairs are visited.
    """

    def __init__(self, Q: BiPoly, mode: str = "row"):
        if mode not in ("row", "diag"):
            raise ValueError(f"unknown mode {mode!r}")
        self.field = Q.field
        self.q = q = Q.field.q
        self.mode = mode
        self.Qpow = Q ** (q - 1)
        buckets: list[list] = [[] for _ in range(q)]
        for (I, J), c in self.Qpow.items:
            key = J % q if mode == "row" else (I - J) % q
            buckets[key].append((I, J, c))
        self.buckets = buckets

    def step_all(self, S: BiPoly) -> list[BiPoly]:
        F, q = self.field, self.q
        outs: list[dict] = [{} for _ in range(q)]
        buckets = self.buckets
        row = self.mode == "row"
        prime = F.e == 1
        add, mul = F._add, F._mul
        for (i, j), c in S.items:
            key = (-j) % q if row else (j - i) % q
            for I, J, C in buckets[key]:
                a, b = i + I, j + J
                r = a % q
                k = (a // q, b // q)
                d = outs[r]
                if prime:
                    d[k] = d.get(k, 0) + c * C
                else:
                    d[k] = add[d.get(k, 0)][mul[c][C]]
        result = []
        for d in outs:
            if prime:
                p = F.p
                d = {k: v % p for k, v in d.items() if v % p}
            else:
                d = {k: v for k, v in d.items() if v}
            result.append(BiPoly._from_clean(F, d))
        return result

    def step(self, S: BiPoly, r: int) -> BiPoly:
        return self.step_all(S)[r]


def _closure(S0: BiPoly, stepper: CartierStepper, max_states=None) -> Dfao:
    F = S0.field
    index = {S0: 0}
    labels = [S0]
    transitions: list[list[int]] = []
    queue = deque([S0])
    while queue:
        S = queue.popleft()
        row = []
        for T in stepper.step_all(S):
            t = index.get(T)
            if t is None:
                t = len(labels)
                index[T] = t
                labels.append(T)
                queue.append(T)
                if max_states is not None and len(labels) > max_states:
                    raise DomainError(f"more than {max_states} states")
            row.append(t)
        transitions.append(row)
    outputs = [S.code(0, 0) for S in labels]
    return Dfao(F, outputs, transitions, 0, labels)


def build(inp: FurstenbergInput, max_states: int | None = None) -> Dfao:
    """Automaton whose states are the numerators reachable from S0."""
    return _closure(inp.S0, CartierStepper(inp.Q, "row"), max_states)


def build_diagonal(S: BiPoly, Q: BiPoly, max_states: int | None = None) -> Dfao:
    """Automaton for the diagonal of the power series S/Q."""
    S.field.check(Q.field)
    if not (S.is_polynomial() and Q.is_polynomial()):
        raise CannotExpandError("diagonal automaton needs plain polynomials")
    if Q.code(0, 0) == 0:
        raise CannotExpandError("Q(0, 0) = 0")
    return _closure(S, CartierStepper(Q, "diag"), max_states)


def digits(n: int, q: int) -> list[int]:
    """Standard base-q digits of n, least significant first (empty for 0)."""
    if n < 0:
        raise ValueError("negative input")
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


def run(a: Dfao, n: int) -> Fq:
    s = a.initial
    for r in digits(n, a.q):
        s = a.transitions[s][r]
    return Fq(a.field, a.outputs[s])


def run_codes(a: Dfao, N: int) -> list[int]:
    """Outputs for n = 0..N-1, as codes."""
    q, trans = a.q, a.transitions
    out = []
    for n in range(N):
        s = a.initial
        while n:
            n, r = divmod(n, q)
            s = trans[s][r]
        out.append(a.outputs[s])
    return out


def leading_zero_violations(a: Dfao, repeats: int = 3) -> list[int]:
    """States whose output changes after reading up to ``repeats`` zeros."""
    bad = []
    for s in range(a.num_states):
        t = s
        for _ in range(repeats):
            t = a.transitions[t][0]
            if a.outputs[t] != a.outputs[s]:
                bad.append(s)
                break
    return bad


def bfs_depth(a: Dfao) -> int:
    """Largest BFS distance from the initial state to a reachable state."""
    dist = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        s = queue.popleft()
        for t in a.transitions[s]:
            if t not in dist:
                dist[t] = dist[s] + 1
                queue.append(t)
    return max(dist.values())


def _reachable_renumber(a: Dfao, cls: list[int], num: int):
    """Canonical BFS renumbering of the quotient automaton by class map ``cls``."""
    q = a.q
    rep = [None] * num
    for s in range(a.num_states):
        if rep[cls[s]] is None:
            rep[cls[s]] = s
    order = {cls[a.initial]: 0}
    queue = deque([cls[a.initial]])
    trans: list[list[int]] = []
    outs: list[int] = []
    while queue:
        c = queue.popleft()
        s = rep[c]
        outs.append(a.outputs[s])
        row = []
        for r in range(q):
            d = cls[a.transitions[s][r]]
            if d not in order:
                order[d] = len(order)
                queue.append(d)
            row.append(order[d])
        trans.append(row)
    return outs, trans


def minimize(a: Dfao, check: bool = True) -> Dfao:
    """Moore partition refinement followed by canonical BFS renumbering."""
    if check and leading_zero_violations(a, 1):
        raise DomainError("automaton is sensitive to leading zeros")
    n = a.num_states
    ids: dict = {}
    cls = [ids.setdefault(o, len(ids)) for o in a.outputs]
    num = len(ids)
    trans = a.transitions
    while True:
        ids = {}
        new = [ids.setdefault((cls[s],) + tuple(cls[t] for t in trans[s]), len(ids))
               for s in range(n)]
        if len(ids) == num:
            break
        cls, num = new, len(ids)
    outs, tr = _reachable_renumber(a, cls, num)
    return Dfao(a.field, outs, tr, 0, None)


def kernel_oracle(prefix: SeriesPrefix, e_max: int | None = None,
                  min_window: int = 8) -> KernelOracleReport:
    """Count distinct subsequences a(q^e n + r) of a truncated sequence.

    Nodes (e, r) are explored breadth first; the children of (e, r) are
    (e + 1, r + t q^e) for digits t.  A node is compared with existing
    classes on the indices both sequences have available; a node equal to an
    existing class is not expanded.  Truncation can only merge classes, so
    the count is a lower bound; ``closed`` reports whether every class had
    all its children classified within depth ``e_max``.
    """
    q = prefix.field.q
    N = prefix.N
    if e_max is None:
        e_max = 0
        while N // q ** (e_max + 1) >= min_window:
            e_max += 1
    elif N < q ** e_max:
        raise DomainError(f"prefix length {N} is shorter than q^e_max = {q ** e_max}")
    elif N // q ** e_max < min_window:
        raise InconclusiveError(
            f"depth {e_max} leaves windows of {N // q ** e_max} < {min_window} symbols")
    a = np.asarray(prefix.coeffs, dtype=np.int64)
    reps: list[tuple[int, int]] = []
    seqs: list[np.ndarray] = []
    buckets: dict[bytes, list[int]] = {}
    queue = deque([(0, 0)])
    closed = True
    depth = 0
    min_seen = N
    while queue:
        e, r = queue.popleft()
        if e > e_max:
            closed = False
            continue
        seq = a[r::q ** e]
        if len(seq) < min_window:
            raise InconclusiveError(
                f"window for a(q^{e} n + {r}) has only {len(seq)} symbols")
        min_seen = min(min_seen, len(seq))
        key = seq[:min_window].tobytes()
        found = False
        for c in buckets.get(key, ()):
            other = seqs[c]
            w = min(len(seq), len(other))
            if np.array_equal(seq[:w], other[:w]):
                found = True
                break
        if found:
            continue
        buckets.setdefault(key, []).append(len(reps))
        reps.append((e, r))
        seqs.append(seq)
        depth = max(depth, e)
        for t in range(q):
            queue.append((e + 1, r + t * q ** e))
    return KernelOracleReport(len(reps), tuple(reps), min_seen, "lower-bound", closed, depth)


# --- serialization ---------------------------------------------------------------

def serialize(a: Dfao) -> str:
    doc = {
        "q": a.q,
        "lsd_first": True,
        "initial": a.initial,
        "states": [
            {"id": s, "output": a.outputs[s],
             **({"label": format_bipoly(a.labels[s])} if a.labels else {})}
            for s in range(a.num_states)
        ],
        "transitions": [list(row) for row in a.transitions],
    }
    return json.dumps(doc, indent=1)


def deserialize(text: str) -> Dfao:
    """Parse an automaton document; errors carry a JSON path or character offset."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")

    def need(key, typ):
        if key not in doc:
            raise ParseError(f"missing field {key!r}", "$")
        v = doc[key]
        if not isinstance(v, typ) or isinstance(v, bool) and typ is not bool:
            raise ParseError(f"field {key!r} has the wrong type", f"$.{key}")
        return v

    q = need("q", int)
    try:
        field = field_of_order(q)
    except Exception:
        raise ParseError(f"q = {q} is not a prime power", "$.q") from None
    if need("lsd_first", bool) is not True:
        raise ParseError("only least-significant-digit-first automata are supported",
                         "$.lsd_first")
    initial = need("initial", int)
    states = need("states", list)
    if not states:
        raise ParseError("empty states list", "$.states")
    trans = need("transitions", list)
    n = len(states)
    outputs = []
    labels = []
    for k, st in enumerate(states):
        path = f"$.states[{k}]"
        if not isinstance(st, dict):
            raise ParseError("state record must be an object", path)
        if st.get("id") != k:
            raise ParseError(f"state id must be {k}", path + ".id")
        o = st.get("output")
        if not isinstance(o, int) or isinstance(o, bool) or not 0 <= o < q:
            raise ParseError("output must be an element code", path + ".output")
        outputs.append(o)
        labels.append(st.get("label"))
    if len(trans) != n:
        raise ParseError(f"expected {n} transition rows", "$.transitions")
    rows = []
    for k, row in enumerate(trans):
        path = f"$.transitions[{k}]"
        if not isinstance(row, list) or len(row) != q:
            raise ParseError(f"transition row must list {q} states", path)
        for t, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise ParseError("transition target out of range", f"{path}[{t}]")
        rows.append(list(row))
    if not 0 <= initial < n:
        raise ParseError("initial state out of range", "$.initial")
    if all(lab is None for lab in labels):
        labels = None
    else:
        from .harness.parser import parse_bipoly
        parsed = []
        for k, lab in enumerate(labels):
            if lab is None:
                parsed.append(None)
                continue
            try:
                parsed.append(parse_bipoly(lab, field))
            except ParseError as exc:
                raise ParseError(f"bad label: {exc}", f"$.states[{k}].label") from None
        labels = parsed
    return Dfao(field, outputs, rows, initial, labels)
