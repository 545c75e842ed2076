"""Fanin-2 circuits over {+, *} with variable and constant inputs.

Gates are stored in topological order; a gate may only reference earlier
gates, so acyclicity holds by construction once ``validate`` passes. The
size of a circuit counts sum and product gates only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

from tropbound import polynomial as P
from tropbound import semiring as sr
from tropbound.errors import CircuitError, DomainError, ExplosionError, InvariantViolation, PreconditionError
from tropbound.polynomial import Polynomial
from tropbound.semiring import INF, NEG_INF

DEFAULT_CAP = 10**6

LEAF_OPS = ("var", "zero", "one")
OPS = LEAF_OPS + ("sum", "prod")


@dataclass(frozen=True)
class Gate:
    op: str
    i: Optional[int] = None
    l: Optional[int] = None
    r: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.op in LEAF_OPS

    @property
    def inputs(self) -> Tuple[int, ...]:
        return () if self.is_leaf else (self.l, self.r)

    def to_json(self) -> dict:
        if self.op == "var":
            return {"op": "var", "i": self.i}
        if self.is_leaf:
            return {"op": self.op}
        return {"op": self.op, "l": self.l, "r": self.r}


@dataclass(frozen=True)
class Circuit:
    n_vars: int
    gates: Tuple[Gate, ...]
    outputs: Tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(1 for g in self.gates if not g.is_leaf)

    @property
    def product_gates(self) -> List[int]:
        return [k for k, g in enumerate(self.gates) if g.op == "prod"]

    @property
    def sum_gates(self) -> List[int]:
        return [k for k, g in enumerate(self.gates) if g.op == "sum"]

    def consumers(self) -> List[List[int]]:
        """For every gate, the gates reading it (one entry per wire)."""
        out: List[List[int]] = [[] for _ in self.gates]
        for v, g in enumerate(self.gates):
            for u in g.inputs:
                out[u].append(v)
        return out

    def ancestors(self, targets: Iterable[int]) -> Set[int]:
        seen: Set[int] = set()
        stack = list(targets)
        while stack:
            g = stack.pop()
            if g in seen:
                continue
            seen.add(g)
            stack.extend(self.gates[g].inputs)
        return seen

    def output(self, index: int = 0) -> int:
        if not 0 <= index < len(self.outputs):
            raise PreconditionError(f"circuit has no output #{index}")
        return self.outputs[index]

    def with_outputs(self, outputs: Sequence[int]) -> "Circuit":
        return Circuit(self.n_vars, self.gates, tuple(outputs))

    # JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "gates": [g.to_json() for g in self.gates],
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Circuit":
        try:
            gates = []
            for g in data["gates"]:
                op = g["op"]
                if op == "var":
                    gates.append(Gate("var", i=int(g["i"])))
                elif op in ("zero", "one"):
                    gates.append(Gate(op))
                elif op in ("sum", "prod"):
                    gates.append(Gate(op, l=int(g["l"]), r=int(g["r"])))
                else:
                    raise CircuitError(f"unknown gate op {op!r}")
            c = cls(int(data["n_vars"]), tuple(gates), tuple(int(o) for o in data["outputs"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CircuitError):
                raise
            raise CircuitError(f"malformed circuit JSON: {exc}") from None
        require_valid(c)
        return c

    def dumps(self) -> str:
        return json.dumps(self.to_json())


class CircuitBuilder:
    """Incremental construction; leaves are shared (one node per variable
    and per constant, matching the n+2 fanin-0 nodes of the model)."""

    def __init__(self, n_vars: int):
        self.n_vars = n_vars
        self.gates: List[Gate] = []
        self._leaves: Dict[tuple, int] = {}

    def _leaf(self, key: tuple, gate: Gate) -> int:
        if key not in self._leaves:
            self._leaves[key] = len(self.gates)
            self.gates.append(gate)
        return self._leaves[key]

    def var(self, i: int) -> int:
        if not 0 <= i < self.n_vars:
            raise CircuitError(f"variable index {i} outside universe of size {self.n_vars}")
        return self._leaf(("var", i), Gate("var", i=i))

    def zero(self) -> int:
        return self._leaf(("zero",), Gate("zero"))

    def one(self) -> int:
        return self._leaf(("one",), Gate("one"))

    def add(self, a: int, b: int) -> int:
        self.gates.append(Gate("sum", l=a, r=b))
        return len(self.gates) - 1

    def mul(self, a: int, b: int) -> int:
        self.gates.append(Gate("prod", l=a, r=b))
        return len(self.gates) - 1

    def _balanced(self, ids: Sequence[int], op) -> int:
        ids = list(ids)
        while len(ids) > 1:
            nxt = [op(ids[k], ids[k + 1]) for k in range(0, len(ids) - 1, 2)]
            if len(ids) % 2:
                nxt.append(ids[-1])
            ids = nxt
        return ids[0]

    def add_all(self, ids: Sequence[int]) -> int:
        return self._balanced(ids, self.add) if ids else self.zero()

    def mul_all(self, ids: Sequence[int]) -> int:
        return self._balanced(ids, self.mul) if ids else self.one()

    def build(self, outputs: Sequence[int]) -> Circuit:
        c = Circuit(self.n_vars, tuple(self.gates), tuple(outputs))
        require_valid(c)
        return c


# --------------------------------------------------------------------------
# validation and structure


def validate(c: Circuit) -> List[str]:
    """Structural violations (empty list when the circuit is well formed)."""
    problems = []
    if not c.outputs:
        problems.append("no output gates")
    for k, g in enumerate(c.gates):
        if g.op not in OPS:
            problems.append(f"gate {k}: unknown op {g.op!r}")
            continue
        if g.op == "var" and not (isinstance(g.i, int) and 0 <= g.i < c.n_vars):
            problems.append(f"gate {k}: variable index {g.i!r} outside universe")
        for u in g.inputs:
            if not isinstance(u, int) or u < 0 or u >= len(c.gates):
                problems.append(f"gate {k}: input {u!r} is not a gate id")
            elif u >= k:
                problems.append(f"gate {k}: input {u} does not precede it (cycle or bad order)")
    for o in c.outputs:
        if not isinstance(o, int) or not 0 <= o < len(c.gates):
            problems.append(f"output {o!r} is not a gate id")
    return problems


def require_valid(c: Circuit) -> Circuit:
    problems = validate(c)
    if problems:
        raise CircuitError(problems)
    return c


def prune(c: Circuit) -> Circuit:
    """Drop gates that no output depends on; gate ids are renumbered."""
    keep = sorted(c.ancestors(c.outputs))
    remap = {old: new for new, old in enumerate(keep)}
    gates = []
    for old in keep:
        g = c.gates[old]
        if g.is_leaf:
            gates.append(g)
        else:
            gates.append(Gate(g.op, l=remap[g.l], r=remap[g.r]))
    return Circuit(c.n_vars, tuple(gates), tuple(remap[o] for o in c.outputs))


def depth(c: Circuit) -> int:
    """Longest input-to-output path, counted in edges."""
    d = [0] * len(c.gates)
    for k, g in enumerate(c.gates):
        if not g.is_leaf:
            d[k] = 1 + max(d[g.l], d[g.r])
    return max(d[o] for o in c.outputs)


def gate_nonempty(c: Circuit) -> List[bool]:
    """Whether each gate produces a nonempty polynomial."""
    ne = [False] * len(c.gates)
    for k, g in enumerate(c.gates):
        if g.op == "zero":
            ne[k] = False
        elif g.is_leaf:
            ne[k] = True
        elif g.op == "sum":
            ne[k] = ne[g.l] or ne[g.r]
        else:
            ne[k] = ne[g.l] and ne[g.r]
    return ne


def gate_min_degrees(c: Circuit) -> List:
    """Minimum degree per gate without expansion (+inf for empty)."""
    d: List = [0] * len(c.gates)
    for k, g in enumerate(c.gates):
        if g.op == "var":
            d[k] = 1
        elif g.op == "one":
            d[k] = 0
        elif g.op == "zero":
            d[k] = INF
        elif g.op == "sum":
            d[k] = min(d[g.l], d[g.r])
        else:
            d[k] = d[g.l] + d[g.r]
    return d


def gate_max_degrees(c: Circuit) -> List:
    """Maximum degree per gate without expansion (-inf for empty)."""
    d: List = [0] * len(c.gates)
    for k, g in enumerate(c.gates):
        if g.op == "var":
            d[k] = 1
        elif g.op == "one":
            d[k] = 0
        elif g.op == "zero":
            d[k] = NEG_INF
        elif g.op == "sum":
            d[k] = max(d[g.l], d[g.r])
        else:
            a, b = d[g.l], d[g.r]
            d[k] = NEG_INF if NEG_INF in (a, b) else a + b
    return d


def gate_supports(c: Circuit) -> List[frozenset]:
    """Variables occurring in the polynomial produced at each gate."""
    ne = gate_nonempty(c)
    s: List[frozenset] = [frozenset()] * len(c.gates)
    for k, g in enumerate(c.gates):
        if g.op == "var":
            s[k] = frozenset([g.i])
        elif g.is_leaf or not ne[k]:
            s[k] = frozenset()
        else:
            s[k] = s[g.l] | s[g.r]
    return s


def is_multilinear_circuit(c: Circuit) -> bool:
    """Every product gate with nonempty inputs reads disjoint supports."""
    ne = gate_nonempty(c)
    s = gate_supports(c)
    for g in c.gates:
        if g.op == "prod" and ne[g.l] and ne[g.r] and s[g.l] & s[g.r]:
            return False
    return True


def is_homogeneous_circuit(c: Circuit) -> bool:
    lo, hi = gate_min_degrees(c), gate_max_degrees(c)
    return all(a == b for a, b in zip(lo, hi) if a != INF)


# --------------------------------------------------------------------------
# semantics


def eval_circuit(c: Circuit, id, assignment: Sequence) -> list:
    """Value of every output gate over the given semiring."""
    s = sr.get(id)
    if len(assignment) != c.n_vars:
        raise DomainError(f"assignment has {len(assignment)} values, expected {c.n_vars}")
    x = [s.check(a) for a in assignment]
    val: list = [None] * len(c.gates)
    for k, g in enumerate(c.gates):
        if g.op == "var":
            val[k] = x[g.i]
        elif g.op == "zero":
            val[k] = s.zero
        elif g.op == "one":
            val[k] = s.one
        elif g.op == "sum":
            val[k] = s.add(val[g.l], val[g.r])
        else:
            val[k] = s.mul(val[g.l], val[g.r])
    return [val[o] for o in c.outputs]


def produce_gates(c: Circuit, targets: Optional[Iterable[int]] = None,
                  cap: int = DEFAULT_CAP) -> Dict[int, Polynomial]:
    """Produced polynomial (with multiplicities) of every gate needed for
    ``targets`` (default: all outputs)."""
    need = c.ancestors(c.outputs if targets is None else targets)
    n = c.n_vars
    out: Dict[int, Polynomial] = {}
    for k in sorted(need):
        g = c.gates[k]
        if g.op == "var":
            out[k] = Polynomial.variable(n, g.i)
        elif g.op == "zero":
            out[k] = Polynomial.zero(n)
        elif g.op == "one":
            out[k] = Polynomial.one(n)
        elif g.op == "sum":
            out[k] = out[g.l] + out[g.r]
        else:
            a, b = out[g.l], out[g.r]
            try:
                out[k] = P.poly_mul(a, b, cap)
            except ExplosionError as exc:
                raise ExplosionError(f"gate {k} exceeds production cap {cap}", gate=k,
                                     estimate=exc.estimate) from None
        if len(out[k]) > cap:
            raise ExplosionError(f"gate {k} exceeds production cap {cap}", gate=k, estimate=len(out[k]))
    return out


def produce(c: Circuit, cap: int = DEFAULT_CAP) -> List[Polynomial]:
    """The formal polynomial produced at each output."""
    polys = produce_gates(c, cap=cap)
    return [polys[o] for o in c.outputs]


def produce_output(c: Circuit, index: int = 0, cap: int = DEFAULT_CAP) -> Polynomial:
    o = c.output(index)
    return produce_gates(c, [o], cap)[o]


# --------------------------------------------------------------------------
# envelopes


def envelope_subcircuit(c: Circuit, which: str = "lower", output: int = 0) -> Circuit:
    """A homogeneous circuit of size <= size(c) producing the lower (or
    higher) envelope of the polynomial produced at the given output.

    Sum gates whose inputs differ in min (max) degree lose the wire from the
    input of larger (smaller) degree; product gates are kept.
    """
    if which not in ("lower", "higher"):
        raise ValueError("which must be 'lower' or 'higher'")
    o = c.output(output)
    lower = which == "lower"
    deg = gate_min_degrees(c) if lower else gate_max_degrees(c)
    ne = gate_nonempty(c)
    if not ne[o]:
        raise PreconditionError("the produced polynomial is empty; it has no envelope")
    b = CircuitBuilder(c.n_vars)
    new: Dict[int, int] = {}
    for k in sorted(c.ancestors([o])):
        g = c.gates[k]
        if not ne[k]:
            new[k] = b.zero()
        elif g.op == "var":
            new[k] = b.var(g.i)
        elif g.op == "one":
            new[k] = b.one()
        elif g.op == "sum":
            dl, dr = deg[g.l], deg[g.r]
            if dl == dr:
                new[k] = b.add(new[g.l], new[g.r])
            elif (dl < dr) == lower:
                new[k] = new[g.l]
            else:
                new[k] = new[g.r]
        else:
            new[k] = b.mul(new[g.l], new[g.r])
    env = prune(b.build([new[o]]))
    if env.size > c.size:
        raise InvariantViolation("envelope circuit larger than the original")
    return env


# --------------------------------------------------------------------------
# gate elimination, ext polynomials and cuts


def restrict_gate_zero(c: Circuit, g: int) -> Circuit:
    """The circuit with gate ``g`` replaced by the constant 0."""
    if not 0 <= g < len(c.gates):
        raise CircuitError(f"gate {g} does not exist")
    gates = list(c.gates)
    gates[g] = Gate("zero")
    return Circuit(c.n_vars, tuple(gates), c.outputs)


def ext_polynomials(c: Circuit, output: int = 0, cap: int = DEFAULT_CAP,
                    produced: Optional[Dict[int, Polynomial]] = None) -> Dict[int, Polynomial]:
    """``ext(g)`` for every gate: the sum over all g->output paths of the
    product of what is produced at the off-path inputs of product gates."""
    o = c.output(output)
    n = c.n_vars
    anc = c.ancestors([o])
    if produced is None:
        produced = produce_gates(c, [o], cap)
    ext: Dict[int, Polynomial] = {k: Polynomial.zero(n) for k in anc}
    ext[o] = Polynomial.one(n)
    for v in sorted(anc, reverse=True):
        g = c.gates[v]
        if g.is_leaf or not ext[v]:
            continue
        for u, w in ((g.l, g.r), (g.r, g.l)):
            if g.op == "sum":
                contrib = ext[v]
            else:
                try:
                    contrib = P.poly_mul(produced[w], ext[v], cap)
                except ExplosionError as exc:
                    raise ExplosionError(f"ext of gate {u} exceeds cap {cap}", gate=u,
                                         estimate=exc.estimate) from None
            ext[u] = ext[u] + contrib
    return ext


def ext_polynomial(c: Circuit, g: int, cap: int = DEFAULT_CAP, output: int = 0) -> Polynomial:
    exts = ext_polynomials(c, output, cap)
    return exts.get(g, Polynomial.zero(c.n_vars))


def edge_ext(c: Circuit, u: int, v: int, cap: int = DEFAULT_CAP, output: int = 0,
             produced=None, exts=None) -> Polynomial:
    """``ext(v)`` if v is a sum gate, ``produce(w) * ext(v)`` if ``v = u * w``."""
    gv = c.gates[v]
    if u not in gv.inputs:
        raise PreconditionError(f"({u}, {v}) is not a wire")
    if exts is None:
        exts = ext_polynomials(c, output, cap)
    e = exts.get(v, Polynomial.zero(c.n_vars))
    if gv.op == "sum":
        return e
    w = gv.r if gv.l == u else gv.l
    if produced is None:
        produced = produce_gates(c, [w], cap)
    return P.poly_mul(produced[w], e, cap)


def _reaches_output(c: Circuit, o: int, blocked_node=frozenset(), blocked_edge=frozenset()) -> bool:
    anc = c.ancestors([o])
    reach: Dict[int, bool] = {}
    for k in sorted(anc):
        g = c.gates[k]
        if k in blocked_node:
            reach[k] = False
        elif g.is_leaf:
            reach[k] = True
        else:
            reach[k] = any(reach[u] and (u, k) not in blocked_edge for u in g.inputs)
    return reach[o]


def is_node_cut(c: Circuit, nodes: Iterable[int], output: int = 0) -> bool:
    """Every input-output path meets one of ``nodes``."""
    return not _reaches_output(c, c.output(output), blocked_node=frozenset(nodes))


def is_edge_cut(c: Circuit, edges: Iterable[Tuple[int, int]], output: int = 0) -> bool:
    return not _reaches_output(c, c.output(output), blocked_edge=frozenset(map(tuple, edges)))


def cut_decompose(c: Circuit, nodes: Optional[Iterable[int]] = None,
                  edges: Optional[Iterable[Tuple[int, int]]] = None,
                  cap: int = DEFAULT_CAP, output: int = 0) -> List[Tuple[Polynomial, Polynomial]]:
    """Pairs ``(produce(u), ext(u))`` over a node-cut, or
    ``(produce(u), edge_ext(u, v))`` over an edge-cut. The union of the
    pairwise products equals the produced polynomial as a monomial set."""
    if (nodes is None) == (edges is None):
        raise ValueError("give exactly one of nodes= or edges=")
    o = c.output(output)
    produced = produce_gates(c, [o], cap)
    exts = ext_polynomials(c, output, cap, produced)
    n = c.n_vars
    if nodes is not None:
        nodes = sorted(set(nodes))
        if not is_node_cut(c, nodes, output):
            raise PreconditionError("the given node set is not a cut")
        return [(produce_gates(c, [u], cap)[u] if u not in produced else produced[u],
                 exts.get(u, Polynomial.zero(n))) for u in nodes]
    edges = sorted(set(map(tuple, edges)))
    if not is_edge_cut(c, edges, output):
        raise PreconditionError("the given edge set is not a cut")
    out = []
    for u, v in edges:
        pu = produced[u] if u in produced else produce_gates(c, [u], cap)[u]
        out.append((pu, edge_ext(c, u, v, cap, output, produced, exts)))
    return out


def union_of_products(pairs: Iterable[Tuple[Polynomial, Polynomial]], n_vars: int,
                      cap: int = DEFAULT_CAP) -> Polynomial:
    acc = Polynomial.zero(n_vars)
    for a, b in pairs:
        acc = P.set_union(acc, P.set_mul(a, b, cap))
    return acc


def redundant_gates(c: Circuit, output: int = 0, cap: int = DEFAULT_CAP) -> List[int]:
    """Gates whose elimination leaves the produced monomial set unchanged."""
    base = produce_output(c, output, cap)
    o = c.output(output)
    out = []
    for k in sorted(c.ancestors([o])):
        if c.gates[k].is_leaf:
            continue
        if produce_output(restrict_gate_zero(c, k), output, cap).same_monomials(base):
            out.append(k)
    return out


# --------------------------------------------------------------------------
# balanced sum-of-products decomposition


def _window(m: int) -> Tuple[int, int]:
    return -(-m // 3), (2 * m) // 3


def _gate_measures(c: Circuit, measure: str, produced=None, cap=DEFAULT_CAP) -> List:
    if measure == "degree":
        return gate_min_degrees(c)
    if measure != "length":
        raise ValueError("measure must be 'degree' or 'length'")
    if produced is None:
        produced = produce_gates(c, cap=cap)
    return [produced[k].min_length() if k in produced else INF for k in range(len(c.gates))]


def find_balanced_product_gate(c: Circuit, m: int, output: int = 0, measure: str = "degree",
                               _measures=None) -> int:
    """A product gate whose min degree lies in ``[ceil(m/3), floor(2m/3)]``.

    Walk down from the output, always into the input of larger degree,
    until a gate above ``2m/3`` has both inputs at or below it; the larger
    input is in the window, and if it is a sum gate, keep following an
    input of equal degree until a product gate is reached. Ties go left.
    """
    if m < 3:
        raise PreconditionError("balanced decomposition needs m >= 3")
    o = c.output(output)
    deg = _measures if _measures is not None else _gate_measures(c, measure, cap=DEFAULT_CAP)
    if deg[o] == INF or deg[o] < m:
        raise PreconditionError(f"output measure {deg[o]} is below m={m}")
    threshold = Fraction(2 * m, 3)

    def live(k):
        return deg[k] != INF

    v = o
    while True:
        g = c.gates[v]
        if g.is_leaf:
            raise InvariantViolation("balanced-gate walk reached an input")
        ins = [u for u in (g.l, g.r) if live(u)]
        if g.op == "sum":
            v = max(ins, key=lambda u: (deg[u], -ins.index(u)))
            continue
        l, r = g.l, g.r
        if deg[l] <= threshold and deg[r] <= threshold:
            u = l if deg[l] >= deg[r] else r
            break
        v = l if deg[l] >= deg[r] else r
    lo, hi = _window(m)
    while c.gates[u].op != "prod":
        g = c.gates[u]
        if g.is_leaf:
            raise InvariantViolation("balanced-gate walk reached an input")
        u = g.l if live(g.l) and deg[g.l] == deg[u] else g.r
    if not lo <= deg[u] <= hi:
        raise InvariantViolation(f"gate {u} has measure {deg[u]} outside [{lo}, {hi}]")
    return u


class ProductPart(NamedTuple):
    gate: int
    a: Polynomial
    b: Polynomial


def sum_of_products_decompose(c: Circuit, cap: int = DEFAULT_CAP, output: int = 0,
                              measure: str = "degree") -> List[ProductPart]:
    """Write the produced polynomial as a union of at most (#product gates)
    balanced products ``A*B``; ``A`` is produced at a product gate whose
    min degree (or min length) lies in the window ``[ceil(m/3), floor(2m/3)]``."""
    c = c.with_outputs([c.output(output)])
    f = produce_output(c, 0, cap)
    if not f:
        return []
    m = f.min_degree() if measure == "degree" else f.min_length()
    if m < 3:
        raise PreconditionError(f"min {measure} {m} < 3")
    parts: List[ProductPart] = []
    cur = c
    limit = len(c.product_gates)
    while True:
        produced = produce_gates(cur, cap=cap)
        if not produced[cur.outputs[0]]:
            break
        if len(parts) >= limit:
            raise InvariantViolation("decomposition used more parts than product gates")
        deg = _gate_measures(cur, measure, produced, cap)
        g = find_balanced_product_gate(cur, m, 0, measure, _measures=deg)
        ext = ext_polynomials(cur, 0, cap, produced)[g]
        parts.append(ProductPart(g, produced[g], ext))
        cur = restrict_gate_zero(cur, g)
    return parts


# --------------------------------------------------------------------------
# parse graphs


@dataclass(frozen=True)
class ParseGraph:
    """One unfolding choice: a sum gate keeps one child, a product both."""

    root: int
    children: Tuple["ParseGraph", ...] = ()

    def gates(self) -> List[int]:
        out = [self.root]
        for ch in self.children:
            out.extend(ch.gates())
        return out

    def chosen(self) -> Dict[int, Tuple[int, ...]]:
        out: Dict[int, Tuple[int, ...]] = {}
        stack = [self]
        while stack:
            t = stack.pop()
            out.setdefault(t.root, tuple(ch.root for ch in t.children))
            stack.extend(t.children)
        return out

    def monomial(self, c: Circuit) -> P.Monomial:
        vs = [c.gates[k].i for k in self.gates() if c.gates[k].op == "var"]
        return P.monomial(*vs)

    def is_tree(self, c: Circuit) -> bool:
        """No gate with nonempty variable support is visited twice."""
        sup = gate_supports(c)
        seen: Set[int] = set()
        for k in self.gates():
            if sup[k]:
                if k in seen:
                    return False
                seen.add(k)
        return True


def count_parse_graphs(c: Circuit, output: int = 0) -> int:
    o = c.output(output)
    cnt: Dict[int, int] = {}
    for k in sorted(c.ancestors([o])):
        g = c.gates[k]
        if g.op == "zero":
            cnt[k] = 0
        elif g.is_leaf:
            cnt[k] = 1
        elif g.op == "sum":
            cnt[k] = cnt[g.l] + cnt[g.r]
        else:
            cnt[k] = cnt[g.l] * cnt[g.r]
    return cnt[o]


def parse_graphs(c: Circuit, limit: int = 10_000, output: int = 0) -> List[ParseGraph]:
    """All parse graphs of the output (zero leaves produce nothing and are
    never chosen). Raises ``ExplosionError`` above ``limit``."""
    total = count_parse_graphs(c, output)
    if total > limit:
        raise ExplosionError(f"{total} parse graphs exceed limit {limit}", estimate=total)
    memo: Dict[int, List[ParseGraph]] = {}

    def build(k: int) -> List[ParseGraph]:
        if k in memo:
            return memo[k]
        g = c.gates[k]
        if g.op == "zero":
            res = []
        elif g.is_leaf:
            res = [ParseGraph(k)]
        elif g.op == "sum":
            res = [ParseGraph(k, (t,)) for t in build(g.l)] + [ParseGraph(k, (t,)) for t in build(g.r)]
        else:
            res = [ParseGraph(k, (a, b)) for a in build(g.l) for b in build(g.r)]
        memo[k] = res
        return res

    return build(c.output(output))


# --------------------------------------------------------------------------
# export


def to_dot(c: Circuit, names: Optional[Sequence[str]] = None) -> str:
    outs = set(c.outputs)
    lines = ["digraph circuit {", "  rankdir=BT;"]
    for k, g in enumerate(c.gates):
        extra = ", peripheries=2" if k in outs else ""
        if g.op == "var":
            label = names[g.i] if names else f"x{g.i}"
            lines.append(f'  g{k} [label="{label}", shape=plaintext{extra}];')
        elif g.op in ("zero", "one"):
            lines.append(f'  g{k} [label="{0 if g.op == "zero" else 1}", shape=plaintext{extra}];')
        elif g.op == "sum":
            lines.append(f'  g{k} [label="⊕", shape=ellipse{extra}];')
        else:
            lines.append(f'  g{k} [label="⊗", shape=box{extra}];')
        for u in g.inputs:
            lines.append(f"  g{u} -> g{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
