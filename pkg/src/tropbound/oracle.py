"""Exact minimal circuit sizes for tiny polynomials by exhaustive search.

Circuits are enumerated as DAGs gate by gate (iterative deepening on the
number of gates). Every gate value is a canonical key, so the search can
drop gates that duplicate an existing value, fix the order of independent
consecutive gates, and discard partial circuits that can no longer consume
all of their dangling gates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from tropbound import equivalence as E
from tropbound import polynomial as P
from tropbound import semiring as sr
from tropbound.bounds import Certificate
from tropbound.circuit import Circuit, Gate, produce_output, require_valid
from tropbound.errors import InvariantViolation, PreconditionError, RangeError
from tropbound.polynomial import Monomial, Polynomial
from tropbound.semiring import INF, NEG_INF, SemiringId

MAX_VARS = 4
MAX_SIZE = 7
EXCEEDED = "exceeded"

DEFAULT_DOMAINS = {
    SemiringId.MIN_NAT: (0, 1, 2, INF),
    SemiringId.MAX_NAT: (0, 1, 2),
    SemiringId.NAT_ARITH: (0, 1, 2),
    SemiringId.MIN_INT: (-1, 0, 1),
    SemiringId.MAX_INT: (-1, 0, 1),
    SemiringId.BOOL: (0, 1),
}

# measures the oracle can evaluate exactly, with the mode used
ORACLE_MEASURES = {
    "produce-size": ("produce", None),
    "min-produce-size": ("produce", None),
    "max-produce-size": ("produce", None),
    "arith-size": ("produce", None),
    "min-size": ("compute", SemiringId.MIN_NAT),
    "max-size": ("compute", SemiringId.MAX_NAT),
    "bool-size": ("compute", SemiringId.BOOL),
}


@dataclass
class OracleResult:
    mode: str
    size: Optional[int]                 # None when nothing within max_size was found
    max_size: int
    semiring: Optional[SemiringId] = None
    circuit: Optional[Circuit] = None
    exact: bool = True
    method: str = "enumeration"
    domain: Optional[tuple] = None
    rejected: int = 0                   # grid matches refuted by the equivalence check
    lower_bound: Optional[int] = None   # compute mode: fewest gates matching on the grid
    nodes: int = 0

    @property
    def exceeded(self) -> bool:
        return self.size is None

    @property
    def value(self):
        return EXCEEDED if self.size is None else self.size

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "size": self.value,
            "max_size": self.max_size,
            "exact": self.exact,
            "method": self.method,
            "nodes": self.nodes,
            "circuit": None if self.circuit is None else self.circuit.to_json(),
        }
        if self.mode == "compute":
            out["semiring"] = self.semiring.value
            out["domain"] = [sr.format_value(v) for v in self.domain]
            out["relative_to_domain"] = True
            out["rejected_grid_matches"] = self.rejected
            out["lower_bound"] = self.lower_bound
        return out


def _check_caps(f: Polynomial, max_size: int) -> List[int]:
    if not 0 <= max_size <= MAX_SIZE:
        raise RangeError(f"max_size must lie in 0..{MAX_SIZE}, got {max_size}")
    used = sorted(f.variables())
    if len(used) > MAX_VARS:
        raise RangeError(f"oracle handles at most {MAX_VARS} variables, polynomial uses {len(used)}")
    return used


# --------------------------------------------------------------------------
# the enumerator


class _Search:
    """Depth-first construction of circuits with exactly ``size`` gates.

    ``leaves`` are (gate, value) pairs usable as inputs; ``combine`` returns
    the value of a new gate or None when the gate can be pruned outright.
    ``accept`` sees each candidate whose last gate hits the target key.
    """

    def __init__(self, leaves: Sequence[Tuple[Gate, object]], key: Callable,
                 combine: Callable, target, accept: Callable):
        self.leaf_gates = [g for g, _ in leaves]
        self.leaf_values = [v for _, v in leaves]
        self.key = key
        self.combine = combine
        self.target = target
        self.accept = accept
        self.memo: Dict[tuple, object] = {}
        self.nodes = 0

    def run(self, size: int):
        self.size = size
        self.values = list(self.leaf_values)
        self.keys = [self.key(v) for v in self.values]
        self.seen = set(self.keys)
        self.ops: List[Tuple[str, int, int]] = []
        self.refs = [0] * len(self.values)
        return self._extend(0)

    def _value(self, op, a, b):
        mk = (op, self.keys[a], self.keys[b])
        v = self.memo.get(mk, self)
        if v is self:
            v = self.combine(op, self.values[a], self.values[b])
            if len(self.memo) < 2_000_000:
                self.memo[mk] = v
        return v

    def _pairs(self, pool: int, dangling: List[int], need: int):
        """Input pairs (a <= b) freeing at least ``need`` dangling gates."""
        if need <= 0:
            for a in range(pool):
                for b in range(a, pool):
                    yield a, b
        elif need == 1:
            out = set()
            for d in dangling:
                for x in range(pool):
                    out.add((x, d) if x < d else (d, x))
            yield from sorted(out)
        elif need == 2 and len(dangling) >= 2:
            yield from itertools.combinations(dangling, 2)

    def _extend(self, built: int):
        L = len(self.leaf_values)
        remaining = self.size - built
        dangling = [g for g in range(L, L + built) if self.refs[g] == 0]
        # each gate frees at most two dangling gates and adds one; the last
        # gate must leave nothing dangling but itself
        need = len(dangling) if remaining == 1 else len(dangling) + 1 - remaining
        if need > 2:
            return None
        prev = L + built - 1 if built else None
        pairs = list(self._pairs(len(self.values), dangling, need))
        for op in ("sum", "prod"):
            for a, b in pairs:
                v = self._value(op, a, b)
                if v is None:
                    continue
                k = self.key(v)
                if k in self.seen and not (remaining == 1 and k == self.target):
                    continue
                if prev is not None and prev != a and prev != b and not k > self.keys[prev]:
                    continue
                self.nodes += 1
                if remaining == 1:
                    if k != self.target:
                        continue
                    found = self.accept(self.ops + [(op, a, b)])
                    if found is not None:
                        return found
                    continue
                self.values.append(v)
                self.keys.append(k)
                self.seen.add(k)
                self.ops.append((op, a, b))
                self.refs.append(0)
                self.refs[a] += 1
                self.refs[b] += 1
                found = self._extend(built + 1)
                self.refs[a] -= 1
                self.refs[b] -= 1
                self.refs.pop()
                self.ops.pop()
                self.seen.discard(k)
                self.keys.pop()
                self.values.pop()
                if found is not None:
                    return found
        return None


def _to_circuit(n_vars: int, leaf_gates: Sequence[Gate], ops) -> Circuit:
    gates = list(leaf_gates) + [Gate(op, l=a, r=b) for op, a, b in ops]
    out = len(gates) - 1
    return require_valid(Circuit(n_vars, tuple(gates), (out,)))


def _leaf_only(n_vars: int, gate: Gate) -> Circuit:
    return require_valid(Circuit(n_vars, (gate,), (0,)))


# --------------------------------------------------------------------------
# producing


def _divisor_closure(f: Polynomial) -> List[Monomial]:
    out = set()
    for p in f.sorted_monomials():
        vars_, exps = zip(*p) if p else ((), ())
        for es in itertools.product(*(range(e + 1) for e in exps)):
            out.add(tuple((v, e) for v, e in zip(vars_, es) if e))
    return sorted(out, key=lambda p: P.mono_key(p, f.n_vars))


def produce_search(f: Polynomial, max_size: int) -> OracleResult:
    """Smallest circuit producing exactly f (coefficients included)."""
    used = _check_caps(f, max_size)
    n = f.n_vars
    res = OracleResult("produce", None, max_size)
    if not f:
        res.size, res.circuit = 0, _leaf_only(n, Gate("zero"))
        return res
    if any(c != 1 for _, c in f.items()):
        raise PreconditionError("the producing oracle handles polynomials with 0/1 coefficients only")
    D = _divisor_closure(f)
    index = {p: k for k, p in enumerate(D)}
    target = sum(1 << index[p] for p in f.sorted_monomials())
    mul = [[index.get(P.mono_mul(p, q), -1) for q in D] for p in D]

    def bits(m):
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    # a useful gate never carries a monomial outside the divisor closure,
    # nor a coefficient above 1: either would survive into the output
    def combine(op, a, b):
        if op == "sum":
            return None if a & b else a | b
        out = 0
        for i in bits(a):
            row = mul[i]
            for j in bits(b):
                k = row[j]
                if k < 0 or out >> k & 1:
                    return None
                out |= 1 << k
        return out

    leaves = [(Gate("var", i=i), 1 << index[((i, 1),)]) for i in used]
    leaves.append((Gate("one"), 1 << index[()]))
    for g, v in leaves:
        if v == target:
            res.size, res.circuit = 0, _leaf_only(n, g)
            return res

    search = _Search(leaves, lambda v: v, combine, target, lambda ops: ops)
    for size in range(1, max_size + 1):
        ops = search.run(size)
        if ops is not None:
            res.size, res.circuit = size, _to_circuit(n, search.leaf_gates, ops)
            break
    res.nodes = search.nodes
    if res.circuit is not None and produce_output(res.circuit) != f:
        raise InvariantViolation("producing oracle returned a circuit that does not produce f")
    return res


def min_produce_size(f: Polynomial, max_size: int = MAX_SIZE):
    """Minimum number of gates of a circuit producing f, or ``EXCEEDED``."""
    return produce_search(f, max_size).value


# --------------------------------------------------------------------------
# computing


def _grid(n_used: int, domain: Sequence) -> List[tuple]:
    return list(itertools.product(domain, repeat=n_used))


def _vector_algebra(id: SemiringId, points: List[tuple]):
    """(make-vector, combine, key) for gate values over the grid points."""
    if id is SemiringId.BOOL:
        def make(fn):
            return sum(1 << k for k, pt in enumerate(points) if fn(pt))

        def combine(op, a, b):
            return a | b if op == "sum" else a & b
        return make, combine, (lambda v: v)
    if id is SemiringId.NAT_ARITH:
        def make(fn):
            return tuple(fn(pt) for pt in points)

        def combine(op, a, b):
            if op == "sum":
                return tuple(x + y for x, y in zip(a, b))
            return tuple(x * y for x, y in zip(a, b))
        return make, combine, (lambda v: v)
    add = np.minimum if id in (SemiringId.MIN_NAT, SemiringId.MIN_INT) else np.maximum

    def make(fn):
        return np.array([float(fn(pt)) for pt in points], dtype=np.float64)

    def combine(op, a, b):
        return add(a, b) if op == "sum" else a + b
    return make, combine, (lambda v: v.tobytes())


def compute_search(f: Polynomial, id, max_size: int, domain: Optional[Sequence] = None) -> OracleResult:
    """Smallest circuit agreeing with f on the whole domain grid.

    Grid agreement is necessary, so sizes below the answer are ruled out
    exactly. A grid match is then checked by the equivalence module; a
    refuted match is skipped and the search goes on. ``exact`` is False when
    the check was undecided or when a refuted match came first, in which
    case the answer lies between ``lower_bound`` and ``size``.
    """
    s = sr.get(id)
    used = _check_caps(f, max_size)
    domain = tuple(s.check(v) for v in (DEFAULT_DOMAINS[s.id] if domain is None else domain))
    if not domain:
        raise PreconditionError("domain must be nonempty")
    n = f.n_vars
    points = _grid(len(used), domain)
    make, combine, key = _vector_algebra(s.id, points)

    def full(pt):
        a = [s.one] * n
        for i, v in zip(used, pt):
            a[i] = v
        return a

    target_vec = make(lambda pt: P.evaluate(f, s.id, full(pt)))
    target = key(target_vec)
    res = OracleResult("compute", None, max_size, s.id, domain=domain, method="domain-grid")

    def check(c: Circuit) -> Optional[bool]:
        F = produce_output(c)
        verdict = E.equivalent(F, f, s.id)
        return verdict.value

    # a variable outside f's support can always be replaced by the constant
    # one, and the constant zero only matters for the zero polynomial
    leaves = [(Gate("var", i=i), make(lambda pt, k=k: pt[k])) for k, i in enumerate(used)]
    leaves.append((Gate("one"), make(lambda pt: s.one)))
    zero = (Gate("zero"), make(lambda pt: s.zero))
    state = {"undecided": None}

    def settle(c: Circuit):
        if res.lower_bound is None:
            res.lower_bound = c.size
        verdict = check(c)
        if verdict is False:
            res.rejected += 1
            return None
        if verdict is None and state["undecided"] is None:
            state["undecided"] = c
            return None
        return c

    for g, v in leaves + [zero]:
        if key(v) == target:
            c = settle(_leaf_only(n, g))
            if c is not None:
                res.size, res.circuit, res.method = 0, c, "canonical-form"
                return res

    search = _Search(leaves, key, combine, target,
                     lambda ops: settle(_to_circuit(n, search.leaf_gates, ops)))
    for size in range(1, max_size + 1):
        if state["undecided"] is not None:
            break
        c = search.run(size)
        if c is not None:
            res.size, res.circuit, res.method = size, c, "canonical-form"
            break
    else:
        if state["undecided"] is None:
            res.nodes = search.nodes
            if res.lower_bound is None:
                res.lower_bound = max_size + 1
            res.exact = res.rejected == 0
            return res
    if res.circuit is None:
        # smallest grid match that equivalence could neither confirm nor refute
        c = state["undecided"]
        res.size, res.circuit, res.exact = c.size, c, False
    # merging gates that agree on the grid keeps grid agreement, so the
    # search bounds the true size from below; past a refuted match the
    # returned circuit is only an upper bound
    res.exact = res.exact and res.size == res.lower_bound
    res.nodes = search.nodes
    return res


def min_compute_size(f: Polynomial, id, max_size: int = MAX_SIZE, domain: Optional[Sequence] = None):
    """Minimum size of a circuit computing f over ``id``, or ``EXCEEDED``."""
    return compute_search(f, id, max_size, domain).value


# --------------------------------------------------------------------------
# certificate cross-checks


@dataclass
class CheckReport:
    checkable: bool
    measure: str
    certificate_value: int
    oracle_value: object = None
    slack: Optional[int] = None
    ok: Optional[bool] = None
    exact: bool = True
    reason: str = ""
    result: Optional[OracleResult] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "checkable": self.checkable,
            "status": ("not oracle-checkable" if not self.checkable
                       else "ok" if self.ok else "violation"),
            "measure": self.measure,
            "certificate_value": self.certificate_value,
            "oracle_value": self.oracle_value,
            "slack": self.slack,
            "exact": self.exact,
            "reason": self.reason,
        }


def verify_certificate(f: Polynomial, cert: Certificate, max_size: int = MAX_SIZE) -> CheckReport:
    """Compare a lower-bound certificate for f with the oracle's exact value."""
    if not cert.subject.same_monomials(f):
        raise PreconditionError("certificate subject differs from f")
    rep = CheckReport(False, cert.applies_to, cert.value)
    mode_of = ORACLE_MEASURES.get(cert.applies_to)
    if mode_of is None:
        rep.reason = f"not oracle-checkable: no oracle for measure {cert.applies_to}"
        return rep
    if len(f.variables()) > MAX_VARS:
        rep.reason = f"not oracle-checkable: more than {MAX_VARS} variables"
        return rep
    mode, id = mode_of
    g = f.as_set()
    res = produce_search(g, max_size) if mode == "produce" else compute_search(g, id, max_size)
    rep.result = res
    rep.exact = res.exact
    if res.exceeded:
        rep.oracle_value = EXCEEDED
        if cert.value <= max_size + 1:
            rep.checkable, rep.ok = True, True
            rep.reason = f"oracle value exceeds {max_size}; bound is consistent"
        else:
            rep.reason = f"not oracle-checkable: oracle value exceeds {max_size}"
        return rep
    rep.checkable = True
    rep.oracle_value = res.size
    rep.slack = res.size - cert.value
    rep.ok = rep.slack >= 0
    rep.reason = "bound holds" if rep.ok else "certificate exceeds the exact oracle value"
    return rep
