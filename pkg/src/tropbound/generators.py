"""Benchmark polynomial families and dynamic-programming circuits.

Variable indexing (0-based nodes throughout):

* ``K_{n,n}`` edges (PERM): ``x[i][j]`` is variable ``i*n + j``.
* ``K_n`` undirected edges (HC, clique, stconn, FW, BF): pairs ``i < j`` in
  lexicographic order, see :func:`edge_index`.
* Spanning trees: directed edges ``(i, j)`` with ``i >= 1`` (node 0 is the
  root), ``i != j``, in lexicographic order; ``(n-1)^2`` variables.
* Triangle: ``x_ik = i*n+k``, ``y_kj = n^2 + k*n + j``, ``z_ij = 2n^2 + i*n + j``.
* Matrix product: ``x_ik = i*n+k``, ``y_kj = n^2 + k*n + j``.
* Layered stconn: ``n`` edges out of ``s``, then ``n^2`` per inner layer
  transition, then ``n`` edges into ``t``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tropbound import polynomial as P
from tropbound.circuit import Circuit, CircuitBuilder, prune
from tropbound.errors import DomainError, RangeError
from tropbound.polynomial import Monomial, Polynomial

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        clean = set()
        for e in self.edges:
            a, b = e
            if a == b:
                raise DomainError(f"loop at node {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise DomainError(f"edge {e} outside node range 0..{self.n - 1}")
            clean.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = [tuple(e) for e in edges]
        seen = set()
        for a, b in edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                raise DomainError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(edges))

    def neighbours(self) -> List[set]:
        adj: List[set] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        try:
            return cls.from_edges(int(data["n"]), data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed graph JSON: {exc}") from None


@dataclass(frozen=True)
class PolyFamily:
    name: str
    members: Tuple[Tuple[str, Polynomial], ...]

    @property
    def n_vars(self) -> int:
        return self.members[0][1].n_vars if self.members else 0

    def __post_init__(self):
        if len({f.n_vars for _, f in self.members}) > 1:
            raise DomainError("family members must share a variable universe")

    def __len__(self):
        return len(self.members)

    def __getitem__(self, label: str) -> Polynomial:
        for lab, f in self.members:
            if lab == label:
                return f
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"name": self.name, "members": [{"label": lab, "polynomial": f.to_json()}
                                                for lab, f in self.members]}


def _range(name: str, value: int, lo: int, hi: int):
    if not lo <= value <= hi:
        raise RangeError(f"{name}={value} outside supported range [{lo}, {hi}]")


def edge_index(n: int, i: int, j: int) -> int:
    """Index of the undirected edge {i, j} of K_n (i != j)."""
    if i == j:
        raise DomainError("no loops in K_n")
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def edge_names(n: int) -> List[str]:
    return [f"x{i + 1}_{j + 1}" for i in range(n) for j in range(i + 1, n)]


def n_edges(n: int) -> int:
    return n * (n - 1) // 2


# --------------------------------------------------------------------------
# polynomial families


def gen_perm(n: int) -> Polynomial:
    _range("n", n, 1, 7)
    return Polynomial.from_set(n * n, (P.monomial(*(i * n + s[i] for i in range(n)))
                                       for s in itertools.permutations(range(n))))


def gen_hc(n: int) -> Polynomial:
    _range("n", n, 3, 8)
    N = n_edges(n)
    monos = set()
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue
        cyc = (0,) + rest
        monos.add(P.monomial(*(edge_index(n, cyc[k], cyc[(k + 1) % n]) for k in range(n))))
    return Polynomial.from_set(N, monos)


def gen_clique(n: int, k: int) -> Polynomial:
    _range("n", n, 2, 10)
    _range("k", k, 2, n)
    return Polynomial.from_set(n_edges(n), (
        P.monomial(*(edge_index(n, a, b) for a, b in itertools.combinations(S, 2)))
        for S in itertools.combinations(range(n), k)))


def st_index(n: int, i: int, j: int) -> int:
    """Variable of the directed edge i -> j (i >= 1, j != i)."""
    if not (1 <= i < n and 0 <= j < n and i != j):
        raise DomainError(f"no spanning-tree variable for ({i}, {j})")
    return (i - 1) * (n - 1) + (j if j < i else j - 1)


def gen_spanning_tree(n: int) -> Polynomial:
    """Monomials x_{i,pi(i)} (i = 2..n in 1-based terms) over all parent
    maps pi whose iteration from every node reaches the root."""
    _range("n", n, 3, 7)
    monos = []
    choices = [[j for j in range(n) if j != i] for i in range(1, n)]
    for parents in itertools.product(*choices):
        par = (None,) + parents
        ok = True
        for start in range(1, n):
            v, steps = start, 0
            while v != 0 and steps < n:
                v = par[v]
                steps += 1
            if v != 0:
                ok = False
                break
        if ok:
            monos.append(P.monomial(*(st_index(n, i, par[i]) for i in range(1, n))))
    return Polynomial.from_set((n - 1) ** 2, monos)


def spanning_tree_undirected(n: int) -> Polynomial:
    """ST_n with every directed edge variable (i, j) renamed to the
    undirected edge {i, j} of K_n, so it lives in the same universe as the
    connectivity polynomials."""
    f = gen_spanning_tree(n)
    rename = {st_index(n, i, j): edge_index(n, i, j)
              for i in range(1, n) for j in range(n) if j != i}
    return Polynomial.from_set(n_edges(n), (P.monomial(*(rename[v] for v, e in p for _ in range(e)))
                                            for p in f))


def _simple_paths(n: int, s: int, t: int) -> Iterable[Tuple[int, ...]]:
    inner = [v for v in range(n) if v not in (s, t)]
    for k in range(len(inner) + 1):
        for mid in itertools.permutations(inner, k):
            yield (s,) + mid + (t,)


def gen_stconn_pair(n: int, s: int, t: int) -> Polynomial:
    return Polynomial.from_set(n_edges(n), (
        P.monomial(*(edge_index(n, a, b) for a, b in zip(path, path[1:])))
        for path in _simple_paths(n, s, t)))


def gen_stconn(n: int) -> Polynomial:
    """All simple paths from node 1 to node n of K_n."""
    _range("n", n, 2, 8)
    return gen_stconn_pair(n, 0, n - 1)


def layered_n_vars(n: int, d: int) -> int:
    return 2 * n + (d - 2) * n * n


def gen_layered_stconn(n: int, d: int, cap: int = DEFAULT_CAP) -> Polynomial:
    """Paths s -> a_1 -> ... -> a_{d-1} -> t through d-1 layers of n nodes."""
    if n < 1 or d < 2:
        raise RangeError("layered stconn needs n >= 1 and d >= 2")
    if n ** (d - 1) > cap:
        raise RangeError(f"n^(d-1) = {n ** (d - 1)} monomials exceed cap {cap}")
    t_base = n + (d - 2) * n * n
    monos = []
    for a in itertools.product(range(n), repeat=d - 1):
        vs = [a[0]]
        for layer in range(d - 2):
            vs.append(n + layer * n * n + a[layer] * n + a[layer + 1])
        vs.append(t_base + a[-1])
        monos.append(P.monomial(*vs))
    return Polynomial.from_set(layered_n_vars(n, d), monos)


def gen_triangle(n: int) -> Polynomial:
    _range("n", n, 1, 6)
    n2 = n * n
    return Polynomial.from_set(3 * n2, (
        P.monomial(i * n + k, n2 + k * n + j, 2 * n2 + i * n + j)
        for i in range(n) for j in range(n) for k in range(n)))


def gen_mp(n: int) -> PolyFamily:
    _range("n", n, 1, 6)
    n2 = n * n
    members = []
    for i in range(n):
        for j in range(n):
            f = Polynomial.from_set(2 * n2, (P.monomial(i * n + k, n2 + k * n + j) for k in range(n)))
            members.append((f"{i + 1},{j + 1}", f))
    return PolyFamily("mp", tuple(members))


def gen_apsp(n: int) -> PolyFamily:
    """The C(n,2) path polynomials, one per pair s < t."""
    _range("n", n, 2, 8)
    return PolyFamily("apsp", tuple((f"{s + 1},{t + 1}", gen_stconn_pair(n, s, t))
                                    for s in range(n) for t in range(s + 1, n)))


def gen_conn(n: int, cap: int = DEFAULT_CAP) -> Union[Polynomial, PolyFamily]:
    """Product of all APSP members (as monomial sets). Materialized only for
    n <= 4; larger n returns the unexpanded APSP family as a handle."""
    _range("n", n, 2, 8)
    fam = gen_apsp(n)
    if n > 4:
        return PolyFamily("conn", fam.members)
    acc = Polynomial.one(n_edges(n))
    for _, f in fam.members:
        acc = P.set_mul(acc, f, cap)
    return acc


def gen_bilinear(matrix: Sequence[Sequence[int]]) -> Polynomial:
    """f_A(x, y) = sum of x_i y_j over the 1-entries a_ij of a 0/1 matrix;
    x_i is variable i and y_j is variable rows + j."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    return Polynomial.from_set(rows + cols, (P.monomial(i, rows + j) for i in range(rows)
                                             for j in range(cols) if matrix[i][j]))


def gen_fG(g: Graph) -> Polynomial:
    """Multilinear monomials over node subsets inducing an odd number of edges."""
    _range("n", g.n, 1, 16)
    adj = [0] * g.n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    monos = []
    for S in range(1 << g.n):
        cnt = 0
        for v in range(g.n):
            if S >> v & 1:
                cnt += bin(adj[v] & S).count("1")
        if (cnt // 2) % 2 == 1:
            monos.append(P.monomial(*(v for v in range(g.n) if S >> v & 1)))
    return Polynomial.from_set(g.n, monos)


# --------------------------------------------------------------------------
# circuits


def floyd_warshall_size(n: int) -> int:
    """Exact number of sum/product gates of :func:`build_floyd_warshall`."""
    return n * (n - 1) * (n - 2)


def build_floyd_warshall(n: int) -> Circuit:
    """Outputs f^n_{ij} for all i < j (lexicographic). Only pairs avoiding
    the pivot k are updated in round k; the others are unchanged."""
    _range("n", n, 2, 32)
    b = CircuitBuilder(n_edges(n))
    f: Dict[Tuple[int, int], int] = {(i, j): b.var(edge_index(n, i, j))
                                     for i in range(n) for j in range(i + 1, n)}

    def get(i, j):
        return f[(i, j)] if i < j else f[(j, i)]

    for k in range(n):
        nxt = dict(f)
        for i in range(n):
            for j in range(i + 1, n):
                if k in (i, j):
                    continue
                nxt[(i, j)] = b.add(f[(i, j)], b.mul(get(i, k), get(k, j)))
        f = nxt
    return b.build([f[(i, j)] for i in range(n) for j in range(i + 1, n)])


def fw_output_index(n: int, i: int, j: int) -> int:
    """Position of pair {i, j} among the Floyd-Warshall outputs."""
    return edge_index(n, i, j)


def build_bellman_ford(n: int) -> Circuit:
    """f_j^1 = x_{1j}; f_j^k = f_j^{k-1} + sum_{i != 1, j} f_i^{k-1} x_{ij};
    output f_n^{n-1}. Gates not feeding the output are pruned."""
    _range("n", n, 2, 32)
    b = CircuitBuilder(n_edges(n))
    f = {j: b.var(edge_index(n, 0, j)) for j in range(1, n)}
    for _ in range(2, n):
        nxt = {}
        for j in range(1, n):
            terms = [f[j]] + [b.mul(f[i], b.var(edge_index(n, i, j)))
                              for i in range(1, n) if i != j]
            acc = terms[0]
            for t in terms[1:]:
                acc = b.add(acc, t)
            nxt[j] = acc
        f = nxt
    return prune(b.build([f[n - 1]]))


def naive_size(f: Polynomial) -> int:
    if not f:
        return 0
    return (sum(max(P.degree(p) - 1, 0) for p in f) + (len(f) - 1)
            + sum(c - 1 for _, c in f.items()))


def build_naive(f: Polynomial, cap: int = DEFAULT_CAP) -> Circuit:
    """Sum of per-monomial product trees; a coefficient c > 1 becomes c
    copies of the monomial's gate summed together."""
    if len(f) > cap:
        raise RangeError(f"{len(f)} monomials exceed cap {cap}")
    b = CircuitBuilder(f.n_vars)
    if not f:
        return b.build([b.zero()])
    terms = []
    for p in f:
        leaves = [b.var(i) for i, e in p for _ in range(e)]
        g = b.mul_all(leaves)
        acc = g
        for _ in range(f.coeff(p) - 1):
            acc = b.add(acc, g)
        terms.append(acc)
    acc = terms[0]
    for t in terms[1:]:
        acc = b.add(acc, t)
    return b.build([acc])


# --------------------------------------------------------------------------
# random instances


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


def random_polynomial(n: int, terms: int, maxdeg: int, seed: int, multilinear: bool = False,
                      homogeneous: bool = False, coefficients: bool = False) -> Polynomial:
    """Up to ``terms`` distinct random monomials of degree <= maxdeg (exactly
    maxdeg when homogeneous)."""
    rng = random.Random(seed)
    out: Dict[Monomial, int] = {}
    for _ in range(terms * 4):
        if len(out) >= terms:
            break
        d = maxdeg if homogeneous else rng.randint(0, maxdeg)
        if multilinear:
            d = min(d, n)
            vs = rng.sample(range(n), d)
        else:
            vs = [rng.randrange(n) for _ in range(d)] if n else []
        p = P.monomial(*vs)
        if p not in out:
            out[p] = rng.randint(1, 3) if coefficients else 1
    return Polynomial(n, out)


def random_circuit(n_vars: int, n_gates: int, seed: int, p_const: float = 0.1) -> Circuit:
    """A single-output circuit of ``n_gates`` sum/product gates over random
    earlier gates; the output is the last gate."""
    rng = random.Random(seed)
    b = CircuitBuilder(n_vars)
    pool = [b.var(i) for i in range(n_vars)]
    if rng.random() < p_const:
        pool.append(b.one())
    if rng.random() < p_const / 2:
        pool.append(b.zero())
    for _ in range(n_gates):
        u, v = rng.choice(pool), rng.choice(pool)
        g = b.add(u, v) if rng.random() < 0.5 else b.mul(u, v)
        pool.append(g)
    return b.build([pool[-1]])


