import itertools
import json
from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

from tropbound import circuit as C
from tropbound import generators as G
from tropbound import polynomial as P
from tropbound.circuit import Circuit, CircuitBuilder, Gate
from tropbound.errors import CircuitError, ExplosionError, PreconditionError
from tropbound.polynomial import Polynomial
from tropbound.semiring import INF, SemiringId

from conftest import mono, poly

SR = list(SemiringId)
SMALL = {
    SemiringId.NAT_ARITH: [0, 1, 2],
    SemiringId.BOOL: [0, 1],
    SemiringId.MIN_NAT: [0, 1, 3, INF],
    SemiringId.MIN_INT: [-2, 0, 1, INF],
    SemiringId.MAX_NAT: [0, 1, 3],
    SemiringId.MAX_INT: [-2, 0, 1],
}


def x_one_plus_y():
    b = CircuitBuilder(2)
    s = b.add(b.one(), b.var(1))
    return b.build([b.mul(b.var(0), s)])


def small_circuits(max_gates=12, max_vars=4, p_const=0.15):
    return st.builds(lambda n, g, s: G.random_circuit(n, g, s, p_const),
                     st.integers(1, max_vars), st.integers(1, max_gates), st.integers(0, 10**6))


# ---------------------------------------------------------------- oracles


def paths_to(c: Circuit, g: int, o: int):
    """Every g -> o path as a list of wires (u, v, wire_slot)."""
    cons = [[] for _ in c.gates]
    for v, gate in enumerate(c.gates):
        for slot, u in enumerate(gate.inputs):
            cons[u].append((v, slot))

    def rec(u):
        if u == o:
            yield []
            return
        for v, slot in cons[u]:
            for rest in rec(v):
                yield [(u, v, slot)] + rest

    return list(rec(g))


def ext_by_paths(c: Circuit, g: int, o: int) -> Polynomial:
    produced = C.produce_gates(c)
    total = Polynomial.zero(c.n_vars)
    for path in paths_to(c, g, o):
        term = Polynomial.one(c.n_vars)
        for _, v, slot in path:
            gv = c.gates[v]
            if gv.op == "prod":
                other = gv.inputs[1 - slot]
                term = term * produced[other]
        total = total + term
    return total


def parse_graph_multiset(c: Circuit, avoid=None) -> Counter:
    cnt = Counter()
    for t in C.parse_graphs(c, limit=200_000):
        if avoid is not None and avoid in t.gates():
            continue
        cnt[t.monomial(c)] += 1
    return cnt


def reaches_avoiding(c: Circuit, o: int, nodes=(), edges=()) -> bool:
    """Brute force: is there an input-output path avoiding the cut?"""
    nodes, edges = set(nodes), set(edges)
    leaves = [k for k in c.ancestors([o]) if c.gates[k].is_leaf]
    for leaf in leaves:
        for path in paths_to(c, leaf, o):
            gates_on = {leaf} | {v for _, v, _ in path}
            wires = {(u, v) for u, v, _ in path}
            if not gates_on & nodes and not wires & edges:
                return True
    return False


# ---------------------------------------------------------------- validate


def test_validate_examples():
    ok = Circuit(1, (Gate("var", i=0),), (0,))
    assert C.validate(ok) == []
    self_ref = Circuit(1, (Gate("var", i=0), Gate("sum", l=1, r=0)), (1,))
    assert any("does not precede" in p for p in C.validate(self_ref))
    assert C.validate(Circuit(1, (Gate("var", i=0),), ())) == ["no output gates"]
    assert C.validate(Circuit(1, (Gate("var", i=3),), (0,)))
    assert C.validate(Circuit(1, (Gate("var", i=0),), (4,)))


def test_from_json_rejects_bad_input():
    with pytest.raises(CircuitError):
        Circuit.from_json({"n_vars": 1, "gates": [{"op": "nand"}], "outputs": [0]})
    with pytest.raises(CircuitError):
        Circuit.from_json({"n_vars": 1, "gates": [{"op": "sum", "l": 0, "r": 0}], "outputs": [0]})
    with pytest.raises(CircuitError):
        Circuit.from_json({"gates": [], "outputs": []})


# ---------------------------------------------------------------- semantics


def test_eval_examples():
    c = x_one_plus_y()
    assert C.eval_circuit(c, SemiringId.MIN_NAT, [3, 5]) == [3]
    assert C.eval_circuit(c, SemiringId.MAX_NAT, [3, 5]) == [8]
    b = CircuitBuilder(0)
    assert C.eval_circuit(b.build([b.one()]), SemiringId.NAT_ARITH, []) == [1]


def test_produce_examples():
    c = x_one_plus_y()
    assert C.produce_output(c) == poly(2, (0,), (0, 1))
    f = poly(3, (0, 1), (1, 2, 2), (), coeffs=[1, 2, 1])
    assert C.produce_output(G.build_naive(f)) == f


def test_produce_cap_reports_gate():
    b = CircuitBuilder(6)
    s = [b.add(b.var(2 * k), b.var(2 * k + 1)) for k in range(3)]
    p1 = b.mul(s[0], s[1])
    out = b.mul(p1, s[2])
    c = b.build([out])
    with pytest.raises(ExplosionError) as ei:
        C.produce(c, cap=5)
    assert ei.value.gate == out


def test_fw4_output_lmin_is_simple_paths():
    n = 4
    c = G.build_floyd_warshall(n)
    f = C.produce(c)[G.fw_output_index(n, 0, n - 1)]
    simple = set()
    for mid in itertools.chain.from_iterable(itertools.permutations(range(1, n - 1), k) for k in range(n - 1)):
        nodes = (0,) + mid + (n - 1,)
        simple.add(P.monomial(*(G.edge_index(n, a, b) for a, b in zip(nodes, nodes[1:]))))
    assert P.lmin_set(f).monomial_set() == frozenset(simple)
    # every produced monomial is a walk containing some simple path
    assert all(any(P.monomial_contains(p, q) for q in simple) for p in f)


@given(small_circuits(), st.data())
def test_eval_matches_evaluate_of_produced(c, data):
    f = C.produce_output(c)
    for id in SR:
        a = data.draw(st.lists(st.sampled_from(SMALL[id]), min_size=c.n_vars, max_size=c.n_vars))
        assert C.eval_circuit(c, id, a)[0] == P.evaluate(f, id, a)


@given(small_circuits())
def test_produce_matches_parse_graph_multiset(c):
    f = C.produce_output(c)
    assert parse_graph_multiset(c) == Counter(dict(f.items()))
    assert C.count_parse_graphs(c) == sum(c_ for _, c_ in f.items())


def test_produce_is_semiring_independent():
    c = G.random_circuit(3, 9, seed=4)
    first = C.produce_output(c).to_json()
    for id in SR:
        C.eval_circuit(c, id, [SMALL[id][1]] * 3)
        assert json.dumps(C.produce_output(c).to_json()) == json.dumps(first)


# ---------------------------------------------------------------- degrees


def test_gate_min_degrees_examples():
    b = CircuitBuilder(2)
    xy = b.mul(b.var(0), b.var(1))
    x1 = b.add(b.var(0), b.one())
    x0 = b.mul(b.var(0), b.zero())
    c = b.build([xy, x1, x0])
    d = C.gate_min_degrees(c)
    assert (d[xy], d[x1], d[x0]) == (2, 0, INF)


@given(small_circuits())
def test_gate_degrees_match_expansion(c):
    produced = C.produce_gates(c, range(len(c.gates)))
    lo, hi = C.gate_min_degrees(c), C.gate_max_degrees(c)
    for k, f in produced.items():
        if f:
            assert (lo[k], hi[k]) == (f.min_degree(), f.max_degree())
        else:
            assert lo[k] == INF


def test_multilinear_and_homogeneous_examples():
    b = CircuitBuilder(1)
    assert not C.is_multilinear_circuit(b.build([b.mul(b.var(0), b.var(0))]))
    perm2 = G.build_naive(G.gen_perm(2))
    assert C.is_multilinear_circuit(perm2) and C.is_homogeneous_circuit(perm2)
    assert not C.is_multilinear_circuit(G.build_floyd_warshall(3))
    assert not C.is_homogeneous_circuit(x_one_plus_y())


@given(small_circuits())
def test_homogeneity_matches_expansion(c):
    c = C.prune(c)
    produced = C.produce_gates(c, range(len(c.gates)))
    expect = all(P.is_homogeneous(f) for f in produced.values() if f)
    assert C.is_homogeneous_circuit(c) == expect


@given(small_circuits(p_const=0.0))
def test_structurally_multilinear_when_computing_multilinear(c):
    # over max-plus a circuit computing a multilinear polynomial is multilinear;
    # the computed function is represented by the lmax antichain
    c = C.prune(c)
    f = C.produce_output(c)
    if P.is_multilinear(P.lmax_set(f)):
        assert C.is_multilinear_circuit(c)
    if C.is_multilinear_circuit(c):
        assert P.is_multilinear(f)


# ---------------------------------------------------------------- envelopes


def test_envelope_examples():
    b = CircuitBuilder(2)
    c = b.build([b.add(b.var(0), b.mul(b.var(0), b.var(1)))])
    low = C.envelope_subcircuit(c, "lower")
    assert C.produce_output(low) == poly(2, (0,))
    high = C.envelope_subcircuit(c, "higher")
    assert C.produce_output(high) == poly(2, (0, 1))
    perm = G.build_naive(G.gen_perm(3))
    assert C.produce_output(C.envelope_subcircuit(perm, "lower")) == G.gen_perm(3)


def test_bellman_ford_higher_envelope_is_longest_walks():
    n = 4
    c = G.build_bellman_ford(n)
    env = C.produce_output(C.envelope_subcircuit(c, "higher"))
    # (n-1)-edge walks from node 0 to node n-1 that never return to node 0
    walks = set()
    for mid in itertools.product(range(1, n), repeat=n - 2):
        nodes = (0,) + mid + (n - 1,)
        if all(a != b for a, b in zip(nodes, nodes[1:])):
            walks.add(P.monomial(*(G.edge_index(n, a, b) for a, b in zip(nodes, nodes[1:]))))
    assert env.monomial_set() == frozenset(walks)
    simple = {P.monomial(*(G.edge_index(n, a, b) for a, b in zip(nodes, nodes[1:])))
              for nodes in ((0,) + m + (n - 1,) for m in itertools.permutations(range(1, n - 1)))}
    assert simple <= env.monomial_set()
    assert all(P.degree(p) == n - 1 for p in env)


def test_envelope_of_empty_raises():
    b = CircuitBuilder(1)
    with pytest.raises(PreconditionError):
        C.envelope_subcircuit(b.build([b.mul(b.var(0), b.zero())]))


@given(small_circuits(), st.sampled_from(["lower", "higher"]))
def test_envelope_property(c, which):
    f = C.produce_output(c)
    assume(f)
    env = C.envelope_subcircuit(c, which)
    assert env.size <= c.size
    assert C.is_homogeneous_circuit(env)
    expect = P.lower_envelope(f) if which == "lower" else P.higher_envelope(f)
    assert C.produce_output(env).same_monomials(expect)


# ---------------------------------------------------------------- ext, split, cuts


def test_restrict_and_ext_examples():
    b = CircuitBuilder(2)
    x, y = b.var(0), b.var(1)
    s = b.add(x, y)
    c = b.build([s])
    assert C.produce_output(C.restrict_gate_zero(c, x)) == poly(2, (1,))
    assert C.ext_polynomial(c, s) == Polynomial.one(2)
    assert C.edge_ext(c, x, s) == Polynomial.one(2)

    b = CircuitBuilder(3)
    w = b.add(b.var(1), b.var(2))
    g = b.mul(b.var(0), b.var(0))
    out = b.mul(g, w)
    c = b.build([out])
    assert C.ext_polynomial(c, g) == poly(3, (1,), (2,))
    assert C.edge_ext(c, g, out) == poly(3, (1,), (2,))
    assert not C.produce_output(C.restrict_gate_zero(c, g))
    with pytest.raises(PreconditionError):
        C.edge_ext(c, w, g)
    with pytest.raises(CircuitError):
        C.restrict_gate_zero(c, 99)


@given(small_circuits(max_gates=10))
def test_ext_matches_path_formula(c):
    o = c.outputs[0]
    exts = C.ext_polynomials(c)
    for g in c.ancestors([o]):
        assert exts[g] == ext_by_paths(c, g, o)


@given(small_circuits())
def test_gate_split_identity(c):
    f = C.produce_output(c)
    produced = C.produce_gates(c)
    exts = C.ext_polynomials(c)
    for g in c.ancestors(c.outputs):
        fg = P.set_mul(produced[g], exts[g])
        assert fg.issubset(f)
        rest = C.produce_output(C.restrict_gate_zero(c, g))
        assert P.set_union(fg, rest).same_monomials(f)


@given(small_circuits(max_gates=9))
def test_restrict_keeps_parse_graphs_avoiding_gate(c):
    o = c.outputs[0]
    for g in c.ancestors([o]):
        if c.gates[g].op == "zero":
            continue
        got = C.produce_output(C.restrict_gate_zero(c, g))
        assert Counter(dict(got.items())) == parse_graph_multiset(c, avoid=g)


def threshold_node_cut(c: Circuit, t: int):
    o = c.outputs[0]
    anc = c.ancestors([o])
    cut = {o} if o <= t else set()
    for v in anc:
        g = c.gates[v]
        if g.is_leaf and v > t:
            cut.add(v)
        for u in g.inputs:
            if u <= t < v:
                cut.add(u)
    return cut


@given(small_circuits(), st.data())
def test_node_cut_decomposition(c, data):
    o = c.outputs[0]
    t = data.draw(st.integers(0, o))
    cut = threshold_node_cut(c, t)
    assert C.is_node_cut(c, cut)
    assert not reaches_avoiding(c, o, nodes=cut)
    pairs = C.cut_decompose(c, nodes=cut)
    assert C.union_of_products(pairs, c.n_vars).same_monomials(C.produce_output(c))


@given(small_circuits(), st.data())
def test_edge_cut_decomposition(c, data):
    o = c.outputs[0]
    anc = c.ancestors([o])
    leaves = [k for k in anc if c.gates[k].is_leaf]
    assume(o not in leaves)
    t = data.draw(st.integers(max(leaves), o - 1))
    cut = {(u, v) for v in anc for u in c.gates[v].inputs if u <= t < v}
    assert C.is_edge_cut(c, cut)
    pairs = C.cut_decompose(c, edges=cut)
    assert C.union_of_products(pairs, c.n_vars).same_monomials(C.produce_output(c))


@given(small_circuits(max_gates=8), st.data())
def test_is_node_cut_matches_brute_force(c, data):
    o = c.outputs[0]
    nodes = data.draw(st.sets(st.sampled_from(sorted(c.ancestors([o])))))
    assert C.is_node_cut(c, nodes) == (not reaches_avoiding(c, o, nodes=nodes))


def test_cut_examples():
    c = G.build_naive(G.gen_perm(3))
    o = c.outputs[0]
    f = C.produce_output(c)
    [(a, b)] = C.cut_decompose(c, nodes=[o])
    assert a == f and b == Polynomial.one(c.n_vars)
    leaves = [k for k, g in enumerate(c.gates) if g.is_leaf]
    pairs = C.cut_decompose(c, nodes=leaves)
    assert C.union_of_products(pairs, c.n_vars).same_monomials(f)
    with pytest.raises(PreconditionError):
        C.cut_decompose(c, nodes=[leaves[0]])
    with pytest.raises(ValueError):
        C.cut_decompose(c)


def test_redundant_gates_reported():
    b = CircuitBuilder(1)
    x = b.var(0)
    s = b.add(x, x)
    c = b.build([s])
    # each wire alone already produces x as a set
    assert C.redundant_gates(c) == []
    b = CircuitBuilder(2)
    x, y = b.var(0), b.var(1)
    xy = b.mul(x, y)
    s = b.add(x, xy)
    t = b.add(s, xy)
    c = b.build([t])
    assert xy not in C.redundant_gates(c)
    assert s not in C.redundant_gates(c)


# ---------------------------------------------------------------- balanced decomposition


def test_balanced_gate_examples():
    b = CircuitBuilder(3)
    xy = b.mul(b.var(0), b.var(1))
    c = b.build([b.mul(xy, b.var(2))])
    assert C.find_balanced_product_gate(c, 3) == xy

    b = CircuitBuilder(9)
    c = b.build([b.mul_all([b.var(i) for i in range(9)])])
    g = C.find_balanced_product_gate(c, 9)
    deg = C.gate_min_degrees(c)
    assert c.gates[g].op == "prod" and 3 <= deg[g] <= 6
    assert any(3 <= deg[k] <= 6 for k in c.product_gates)

    perm = G.build_naive(G.gen_perm(3))
    g = C.find_balanced_product_gate(perm, 3)
    assert C.gate_min_degrees(perm)[g] == 2

    with pytest.raises(PreconditionError):
        C.find_balanced_product_gate(perm, 2)
    with pytest.raises(PreconditionError):
        C.find_balanced_product_gate(perm, 4)


def check_sop(c, parts, measure="degree"):
    f = C.produce_output(c)
    m = f.min_degree() if measure == "degree" else f.min_length()
    lo, hi = -(-m // 3), (2 * m) // 3
    assert len(parts) <= len(c.product_gates)
    union = Polynomial.zero(c.n_vars)
    for part in parts:
        a_m = part.a.min_degree() if measure == "degree" else part.a.min_length()
        assert lo <= a_m <= hi
        assert c.gates[part.gate].op == "prod"
        union = P.set_union(union, P.set_mul(part.a, part.b))
    assert union.same_monomials(f)


def test_sop_examples():
    perm = G.build_naive(G.gen_perm(3))
    check_sop(perm, C.sum_of_products_decompose(perm))

    b = CircuitBuilder(4)
    left = b.mul(b.var(0), b.var(1))
    right = b.mul(b.var(2), b.var(3))
    c = b.build([b.mul(left, right)])
    parts = C.sum_of_products_decompose(c)
    assert len(parts) == 1
    check_sop(c, parts)

    with pytest.raises(PreconditionError):
        C.sum_of_products_decompose(x_one_plus_y())


@st.composite
def deep_circuits(draw):
    """Constant-free random circuits whose output multiplies three gates,
    so the produced minimum degree is at least 3."""
    n = draw(st.integers(1, 4))
    b = CircuitBuilder(n)
    pool = [b.var(i) for i in range(n)]
    for _ in range(draw(st.integers(0, 9))):
        u, v = draw(st.sampled_from(pool)), draw(st.sampled_from(pool))
        pool.append(b.add(u, v) if draw(st.booleans()) else b.mul(u, v))
    a, c_, d = (draw(st.sampled_from(pool)) for _ in range(3))
    return b.build([b.mul(b.mul(a, c_), d)])


@given(deep_circuits(), st.sampled_from(["degree", "length"]))
def test_sop_property(c, measure):
    if measure == "length":
        assume(C.produce_output(c).min_length() >= 3)
    check_sop(c, C.sum_of_products_decompose(c, measure=measure), measure)


@given(deep_circuits())
def test_balanced_gate_in_window(c):
    m = C.produce_output(c).min_degree()
    g = C.find_balanced_product_gate(c, m)
    deg = C.gate_min_degrees(c)[g]
    assert c.gates[g].op == "prod" and -(-m // 3) <= deg <= 2 * m // 3


# ---------------------------------------------------------------- parse graphs, depth, export


def test_parse_graph_examples():
    b = CircuitBuilder(2)
    c = b.build([b.add(b.var(0), b.var(1))])
    assert len(C.parse_graphs(c)) == 2
    for t in C.parse_graphs(c):
        chosen = t.chosen()
        assert len(chosen[c.outputs[0]]) == 1

    perm = G.build_naive(G.gen_perm(3))
    graphs = C.parse_graphs(perm)
    assert Counter(t.monomial(perm) for t in graphs) == Counter(dict(G.gen_perm(3).items()))
    assert all(t.is_tree(perm) for t in graphs)

    with pytest.raises(ExplosionError):
        C.parse_graphs(G.build_floyd_warshall(5), limit=10)


@given(small_circuits())
def test_parse_graph_rules(c):
    for t in C.parse_graphs(c, limit=200_000):
        for g, picked in t.chosen().items():
            op = c.gates[g].op
            if op == "sum":
                assert len(picked) == 1 and picked[0] in c.gates[g].inputs
            elif op == "prod":
                assert picked == c.gates[g].inputs
            else:
                assert picked == ()


@given(small_circuits())
def test_multilinear_circuit_parse_graphs_are_trees(c):
    if C.is_multilinear_circuit(c):
        assert all(t.is_tree(c) for t in C.parse_graphs(c, limit=200_000))


def test_depth_examples():
    b = CircuitBuilder(2)
    assert C.depth(b.build([b.add(b.var(0), b.var(1))])) == 1
    b = CircuitBuilder(8)
    assert C.depth(b.build([b.add_all([b.var(i) for i in range(8)])])) == 3
    b = CircuitBuilder(1)
    assert C.depth(b.build([b.var(0)])) == 0
    # each pivot round adds a product level and a sum level
    assert [C.depth(G.build_floyd_warshall(n)) for n in (3, 4, 5)] == [6, 8, 10]


@given(small_circuits())
def test_json_round_trip(c):
    again = Circuit.from_json(json.loads(c.dumps()))
    assert again == c


def test_dot_export():
    c = x_one_plus_y()
    dot = C.to_dot(c, names=["x", "y"])
    assert dot.startswith("digraph circuit {")
    assert 'label="⊕", shape=ellipse' in dot
    assert 'label="⊗", shape=box, peripheries=2' in dot
    assert dot.count("->") == 4
