"""Lower-bound certificates for circuit size and depth.

Every bound whose underlying argument only asserts the existence of a good
parameter (a split degree, a degree sequence) is certified by taking the
minimum over the whole admissible range, so the reported value never
depends on a choice the argument does not let us make.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tropbound import polynomial as P
from tropbound.errors import (InvariantViolation, PreconditionError, RangeError,
                              UnlicensedTransfer)
from tropbound.generators import Graph, gen_fG
from tropbound.polynomial import Monomial, Polynomial

SCHEMA_VERSION = 1

MEASURES = (
    "produce-size",       # monotone arithmetic circuits producing f
    "min-produce-size",   # Min circuits producing f
    "max-produce-size",   # Max circuits producing f
    "arith-size",         # circuits computing f over nat-arith
    "min-size",           # circuits computing f over min-nat
    "max-size",           # circuits computing f over max-nat
    "mult-bool-size",     # multilinear monotone boolean circuits
    "bool-size",          # monotone boolean circuits
    "depth",              # depth of circuits producing f
)

EXACT_CLIQUE_CAP = 64
KL_FREE_CAP = 4096
KL_SUBMONOMIAL_CAP = 2_000_000


def _mono_json(p: Monomial) -> list:
    return [[i, e] for i, e in p]


def _mono_from_json(data) -> Monomial:
    return P.monomial(exps={int(i): int(e) for i, e in data})


@dataclass
class Certificate:
    kind: str
    value: int
    applies_to: str
    subject: Polynomial
    witness: dict = field(default_factory=dict)
    chain: List[Tuple[str, str, str]] = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        if self.value < 0:
            raise InvariantViolation("certificate value must be nonnegative")
        if self.applies_to not in MEASURES:
            raise ValueError(f"unknown measure {self.applies_to!r}")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "value": self.value,
            "applies_to": self.applies_to,
            "subject": self.subject.to_json(),
            "witness": self.witness,
            "chain": [list(step) for step in self.chain],
            "note": self.note,
        }

    @classmethod
    def from_json(cls, data) -> "Certificate":
        return cls(data["kind"], int(data["value"]), data["applies_to"],
                   Polynomial.from_json(data["subject"]), data.get("witness", {}),
                   [tuple(s) for s in data.get("chain", [])], data.get("note", ""))


# --------------------------------------------------------------------------
# maximum clique (bitset branch and bound with greedy colouring bound)


def _greedy_clique(adj: Sequence[int], cand: int) -> List[int]:
    clique: List[int] = []
    while cand:
        best_v, best_d = -1, -1
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            d = bin(adj[v] & cand).count("1")
            if d > best_d:
                best_v, best_d = v, d
        clique.append(best_v)
        cand &= adj[best_v]
    return clique


def _colour_sort(P_: int, adj: Sequence[int]) -> Tuple[List[int], List[int]]:
    order: List[int] = []
    colours: List[int] = []
    uncoloured = P_
    colour = 0
    while uncoloured:
        colour += 1
        Q = uncoloured
        while Q:
            v = (Q & -Q).bit_length() - 1
            Q &= ~(1 << v)
            Q &= ~adj[v]
            uncoloured &= ~(1 << v)
            order.append(v)
            colours.append(colour)
    return order, colours


def max_clique(adj: Sequence[int], exact: bool = True, stop_at: Optional[int] = None) -> List[int]:
    """A maximum clique of the graph given by adjacency bitsets. With
    ``stop_at`` the search ends as soon as a clique of that size is found."""
    n = len(adj)
    everything = (1 << n) - 1
    best = sorted(_greedy_clique(adj, everything))
    if not exact:
        return best
    best_box = [best]

    def expand(R: List[int], P_: int):
        if stop_at is not None and len(best_box[0]) >= stop_at:
            return
        order, colours = _colour_sort(P_, adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colours[idx] <= len(best_box[0]):
                return
            v = order[idx]
            R.append(v)
            nxt = P_ & adj[v]
            if nxt:
                expand(R, nxt)
            elif len(R) > len(best_box[0]):
                best_box[0] = sorted(R)
            R.pop()
            P_ &= ~(1 << v)

    expand([], everything)
    return best_box[0]


# --------------------------------------------------------------------------
# separated sub-polynomials (Schnorr's measure)


def _containment_index(f: Polynomial):
    mons = f.sorted_monomials()
    uses: Dict[int, int] = {}
    for k, p in enumerate(mons):
        for i, _ in p:
            uses[i] = uses.get(i, 0) | (1 << k)
    every = (1 << len(mons)) - 1

    def contained_in(q: Monomial) -> List[int]:
        """Indices of monomials of f that are factors of q."""
        sup = P.support(q)
        bad = 0
        for i, m in uses.items():
            if i not in sup:
                bad |= m
        cand = every & ~bad
        out = []
        while cand:
            k = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if P.monomial_contains(q, mons[k]):
                out.append(k)
        return out

    return mons, contained_in


def separated_check(f: Polynomial, Psub: Sequence[Monomial]) -> bool:
    """No product of two distinct members of ``Psub`` contains a monomial of
    the whole ``f`` other than those two."""
    Psub = [tuple(p) for p in Psub]
    for p in Psub:
        if p not in f:
            raise PreconditionError(f"{P.mono_str(p)} is not a monomial of f")
    mons, contained_in = _containment_index(f)
    for p, q in itertools.combinations(sorted(set(Psub)), 2):
        for k in contained_in(P.mono_mul(p, q)):
            if mons[k] != p and mons[k] != q:
                return False
    return True


def compatibility_graph(f: Polynomial) -> Tuple[List[Monomial], List[int]]:
    """p ~ q iff pq contains no monomial of f besides p and q."""
    mons, contained_in = _containment_index(f)
    n = len(mons)
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            third = any(k not in (a, b) for k in contained_in(P.mono_mul(mons[a], mons[b])))
            if not third:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return mons, adj


def max_separated(f: Polynomial, mode: str = "exact") -> Certificate:
    if mode not in ("exact", "greedy"):
        raise ValueError("mode must be 'exact' or 'greedy'")
    if not f:
        raise PreconditionError("Schnorr's measure of the empty polynomial")
    if mode == "exact" and len(f) > EXACT_CLIQUE_CAP:
        raise RangeError(f"exact mode supports at most {EXACT_CLIQUE_CAP} monomials, got {len(f)}")
    mons, adj = compatibility_graph(f)
    clique = max_clique(adj, exact=(mode == "exact"))
    chosen = [mons[k] for k in clique]
    return Certificate("schnorr", max(0, len(chosen) - 1), "produce-size", f.as_set(),
                       {"mode": mode, "separated": [_mono_json(p) for p in chosen]},
                       note="separated sub-polynomial of size value+1")


def schnorr_measure(f: Polynomial, mode: str = "exact") -> int:
    return max_separated(f, mode).value


@dataclass
class ProgressReport:
    checks: int = 0
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def progress_measure_suite(samples: Sequence[Polynomial], enrichments_per_sample: int = 1,
                           seed: int = 0, mode: str = "exact") -> ProgressReport:
    """Check that Schnorr's measure vanishes on variables and grows by at
    most one per sum enrichment and not at all per product enrichment."""
    rng = random.Random(seed)
    report = ProgressReport()
    for g in samples:
        for i in range(g.n_vars):
            report.checks += 1
            if schnorr_measure(Polynomial.variable(g.n_vars, i), mode) != 0:
                report.violations.append({"kind": "variable", "var": i})
        if g.n_vars < 3 or not g:
            continue
        base = schnorr_measure(g, mode)
        for _ in range(enrichments_per_sample):
            k = rng.choice(sorted(g.variables()) or [0])
            others = [v for v in range(g.n_vars) if v != k]
            i, j = rng.choice(others), rng.choice(others)
            for how in ("sum", "product"):
                h = P.enrich(g, k, i, j, how)
                if not h or (mode == "exact" and len(h) > EXACT_CLIQUE_CAP):
                    continue
                after = schnorr_measure(h, mode)
                limit = base + 1 if how == "sum" else base
                report.checks += 1
                if after > limit:
                    report.violations.append({"kind": how, "g": g.to_string(), "k": k, "i": i, "j": j,
                                              "before": base, "after": after})
    return report


# --------------------------------------------------------------------------
# (k, l)-freeness


def _mask(p: Monomial) -> int:
    m = 0
    for i, _ in p:
        m |= 1 << i
    return m


def _unmask(m: int) -> Monomial:
    return P.monomial(*(i for i in range(m.bit_length()) if m >> i & 1))


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def kl_free_check(f: Polynomial, k: int, l: int) -> Tuple[bool, Optional[dict]]:
    """Whether f contains no product A*B with |A| > k and |B| > l.

    Returns ``(True, None)`` or ``(False, {"A": [...], "B": [...]})``. For a
    multilinear f every such product splits the variables, so A ranges over
    factors of monomials of f and B over the matching cofactors.
    """
    if not 1 <= k <= l:
        raise PreconditionError("need 1 <= k <= l")
    if not P.is_multilinear(f):
        raise PreconditionError("(k,l)-freeness search needs a multilinear polynomial")
    if len(f) > KL_FREE_CAP:
        raise RangeError(f"|f| = {len(f)} exceeds cap {KL_FREE_CAP}")
    masks = sorted(_mask(p) for p in f)
    nbr: Dict[int, set] = {}
    work = 0
    for p in masks:
        for a in _submasks(p):
            nbr.setdefault(a, set()).add(p ^ a)
            work += 1
            if work > KL_SUBMONOMIAL_CAP:
                raise RangeError("factor enumeration exceeds cap")
    # b -> a's it pairs with
    back: Dict[int, set] = {}
    for a, bs in nbr.items():
        for b in bs:
            back.setdefault(b, set()).add(a)
    # prune to the (k+1, l+1)-core
    alive_a = {a for a, bs in nbr.items() if len(bs) > l}
    alive_b = {b for b, as_ in back.items() if len(as_) > k}
    changed = True
    while changed:
        changed = False
        for a in list(alive_a):
            if len(nbr[a] & alive_b) <= l:
                alive_a.discard(a)
                changed = True
        for b in list(alive_b):
            if len(back[b] & alive_a) <= k:
                alive_b.discard(b)
                changed = True
    order = sorted(alive_a)

    def search(chosen: List[int], common: set):
        if len(chosen) == k + 1:
            return chosen, common
        counts: Dict[int, int] = {}
        for b in common:
            for a in back[b]:
                if a in alive_a and (not chosen or a > chosen[-1]):
                    counts[a] = counts.get(a, 0) + 1
        for a in sorted(x for x, c in counts.items() if c > l):
            got = search(chosen + [a], common & nbr[a])
            if got:
                return got
        return None

    for a in order:
        got = search([a], nbr[a] & alive_b)
        if got:
            A, B = got
            return False, {"A": [_mono_json(_unmask(x)) for x in A],
                           "B": [_mono_json(_unmask(y)) for y in sorted(B)]}
    return True, None


def kl_bound(f: Polynomial, k: int, l: int) -> Certificate:
    free, witness = kl_free_check(f, k, l)
    if not free:
        raise PreconditionError(f"f is not ({k},{l})-free")
    value = -(-len(f) // (2 * k * l * l))
    return Certificate("kl-free", value, "produce-size", f.as_set(),
                       {"k": k, "l": l, "size": len(f)},
                       note="no product A*B inside f with |A|>k, |B|>l (exhaustive split search)")


# --------------------------------------------------------------------------
# rectangle bound


def rectangle_bound(f: Polynomial, measure: str = "degree") -> Certificate:
    """min over r in [ceil(m/3), floor(2m/3)] of ceil(|f| / (d(f,r) d(f,m-r)))."""
    if not f:
        raise PreconditionError("rectangle bound of the empty polynomial")
    if measure == "degree":
        m = f.min_degree()
    elif measure == "length":
        m = f.min_length()
    else:
        raise ValueError("measure must be 'degree' or 'length'")
    if m < 3:
        raise PreconditionError(f"min {measure} {m} < 3")
    lo, hi = -(-m // 3), (2 * m) // 3
    dens = {}
    rows = []
    for r in range(lo, hi + 1):
        for x in (r, m - r):
            if x not in dens:
                dens[x] = P.factor_density(f, x)
        v = -(-len(f) // (dens[r] * dens[m - r]))
        rows.append({"r": r, "d_r": dens[r], "d_m_minus_r": dens[m - r], "value": v})
    best = min(rows, key=lambda t: (t["value"], t["r"]))
    return Certificate("rectangle", best["value"], "produce-size", f.as_set(),
                       {"measure": measure, "m": m, "size": len(f), "r": best["r"],
                        "d_r": best["d_r"], "d_m_minus_r": best["d_m_minus_r"], "window": rows},
                       note="minimum over the whole split window; counts product gates")


# --------------------------------------------------------------------------
# expander machinery


def balanced_sizes(n: int) -> range:
    return range(-(-n // 3), (2 * n) // 3 + 1)


def balanced_partitions(n: int):
    """Node sets S (containing node 0) of every balanced partition {S, T}."""
    sizes = set(balanced_sizes(n))
    for size in sorted(sizes):
        for rest in itertools.combinations(range(1, n), size - 1):
            S = frozenset((0,) + rest)
            if n - size in sizes:
                yield S


def max_induced_matching(g: Graph, S: frozenset, stop_at: Optional[int] = None) -> List[Tuple[int, int]]:
    """Largest set of crossing edges no two of which touch or are joined by
    a crossing edge."""
    cross = sorted(e for e in g.edges if (e[0] in S) != (e[1] in S))
    cross_set = set(cross)

    def joined(u, v):
        return u == v or (min(u, v), max(u, v)) in cross_set

    n = len(cross)
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            (p, q), (r, s) = cross[a], cross[b]
            if not any(joined(x, y) for x in (p, q) for y in (r, s)):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    if n == 0:
        return []
    return [cross[k] for k in max_clique(adj, exact=True, stop_at=stop_at)]


def matching_number(g: Graph) -> Tuple[int, dict]:
    if g.n < 2:
        raise RangeError("matching number needs at least 2 nodes")
    if g.n > 14:
        raise RangeError("matching number supports at most 14 nodes")
    best = None
    witness = None
    for S in balanced_partitions(g.n):
        M = max_induced_matching(g, S, stop_at=None if best is None else best)
        if best is None or len(M) < best:
            best = len(M)
            witness = {"S": sorted(S), "matching": [list(e) for e in M]}
            if best == 0:
                break
    return best, witness


def is_induced_crossing_matching(g: Graph, S: Sequence[int], M: Sequence[Sequence[int]]) -> bool:
    S = set(S)
    cross = {e for e in g.edges if (e[0] in S) != (e[1] in S)}
    edges = [tuple(sorted(e)) for e in M]
    if any(e not in cross for e in edges):
        return False
    for (p, q), (r, s) in itertools.combinations(edges, 2):
        for x in (p, q):
            for y in (r, s):
                if x == y or (min(x, y), max(x, y)) in cross:
                    return False
    return True


def expander_bound(g: Graph) -> Certificate:
    if not g.edges:
        raise PreconditionError("expander bound needs a nonempty graph")
    m, wit = matching_number(g)
    value = 2 ** (m - 2) if m >= 2 else 1
    f = gen_fG(g)
    return Certificate("expander", value, "produce-size", f,
                       {"graph": g.to_json(), "matching_number": m, "partition": wit},
                       note="2^(m(G)-2), rounded up")


def rectangle_cap_search(g: Graph) -> Tuple[int, dict]:
    """Largest |A*B| over balanced variable splits Y|Z with A on Y, B on Z
    and A*B inside f_G (exhaustive)."""
    adj = [0] * g.n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def odd(S: int) -> bool:
        cnt = 0
        x = S
        while x:
            v = (x & -x).bit_length() - 1
            x &= x - 1
            cnt += bin(adj[v] & S).count("1")
        return (cnt // 2) % 2 == 1

    best, best_w = 0, {}
    for Yset in balanced_partitions(g.n):
        Y = sorted(Yset)
        Z = [v for v in range(g.n) if v not in Yset]
        small, large = (Y, Z) if len(Y) <= len(Z) else (Z, Y)

        def embed(bits, nodes):
            m = 0
            for t, v in enumerate(nodes):
                if bits >> t & 1:
                    m |= 1 << v
            return m

        rows = [embed(a, small) for a in range(1 << len(small))]
        cols = [embed(b, large) for b in range(1 << len(large))]
        row_masks = []
        for r in rows:
            mask = 0
            for c_idx, c in enumerate(cols):
                if odd(r | c):
                    mask |= 1 << c_idx
            row_masks.append(mask)
        closed = {(1 << len(cols)) - 1}
        for rm in row_masks:
            closed |= {c & rm for c in closed}
        for c in closed:
            if not c:
                continue
            n_rows = sum(1 for rm in row_masks if rm & c == c)
            val = n_rows * bin(c).count("1")
            if val > best:
                best = val
                best_w = {"Y": Y, "Z": Z, "rows": n_rows, "cols": bin(c).count("1")}
    return best, best_w


def mixedness_check(g: Graph, s: int) -> bool:
    """Every two disjoint s-element node sets are joined by an edge."""
    if g.n > 14:
        raise RangeError("mixedness check supports at most 14 nodes")
    if s < 1:
        return False
    adj = g.neighbours()
    for S in itertools.combinations(range(g.n), s):
        Sset = set(S)
        free = [v for v in range(g.n) if v not in Sset and not (adj[v] & Sset)]
        if len(free) >= s:
            return False
    return True


def mixedness_matching_bound(n: int, s: int, d: int) -> Fraction:
    return Fraction(n // 3 - s, 2 * d + 1)


# --------------------------------------------------------------------------
# depth


def depth_decrease(f: Polynomial, r: int, s: int, _dens=None) -> Fraction:
    """N(f; r, s) = d(f, d-r) / (d(f, d-s) * d(f, d-r+s)) with d the min degree."""
    if not f:
        raise PreconditionError("depth decrease of the empty polynomial")
    d = f.min_degree()
    if not 1 <= s < r <= d:
        raise RangeError(f"need 1 <= s < r <= {d}, got r={r}, s={s}")

    def dens(x):
        if _dens is not None:
            if x not in _dens:
                _dens[x] = P.factor_density(f, x)
            return _dens[x]
        return P.factor_density(f, x)

    return Fraction(dens(d - r), dens(d - s) * dens(d - r + s))


def _ceil_log2(q: Fraction) -> int:
    if q <= 0:
        raise ValueError("log of a nonpositive number")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    while Fraction(2) ** k < q:
        k += 1
    while Fraction(2) ** (k - 1) >= q:
        k -= 1
    return k


def depth_lower_bound(f: Polynomial) -> Certificate:
    """min over sequences d = r_0 > ... > r_t = 1 with r_{i+1} >= r_i/2 of
    t + log2 prod N(f; r_i, r_{i+1}), rounded up."""
    if not f:
        raise PreconditionError("depth bound of the empty polynomial")
    d = f.min_degree()
    if d < 2:
        raise PreconditionError("depth bound needs min degree >= 2")
    dens: Dict[int, int] = {}
    best: Dict[int, Tuple[Fraction, List[int]]] = {1: (Fraction(1), [1])}
    for r in range(2, d + 1):
        cand = None
        for s in range(-(-r // 2), r):
            q = 2 * depth_decrease(f, r, s, dens) * best[s][0]
            if cand is None or q < cand[0]:
                cand = (q, [r] + best[s][1])
        best[r] = cand
    q, seq = best[d]
    value = max(0, _ceil_log2(q))
    steps = [{"r": a, "s": b, "decrease": str(depth_decrease(f, a, b, dens))}
             for a, b in zip(seq, seq[1:])]
    return Certificate("depth", value, "depth", f.as_set(),
                       {"d": d, "sequence": seq, "steps": steps, "product_2N": str(q)},
                       note="minimum over all admissible degree sequences")


# --------------------------------------------------------------------------
# transfer between measures


def transfer(cert: Certificate, f: Polynomial, target: str) -> Certificate:
    """Move a lower bound to another measure along a licensed inequality.

    * ``eq1``: producing f costs the same in every additively idempotent
      semiring, and computing over nat-arith costs at least producing.
    * ``thm3-homog``: for multilinear homogeneous f the Min, Max,
      multilinear-Bool and producing sizes coincide.
    * ``eq2``: for multilinear f, Min(f) >= R[lenv f] and Max(f) >= R[henv f];
      also R[f] >= Mult_B(f) >= Min(f).
    * ``lemma-bool``: Bool-size lower-bounds every zero-characteristic size.
    """
    if target not in MEASURES:
        raise ValueError(f"unknown measure {target!r}")
    subj = cert.subject
    steps: List[Tuple[str, str, str]] = []
    if cert.applies_to == "produce-size":
        same = subj.same_monomials(f)
        ml = P.is_multilinear(f)
        homog = P.is_homogeneous(f)
        if same and target in ("min-produce-size", "max-produce-size", "arith-size", "produce-size"):
            steps = [("produce-size", target, "eq1")]
        elif same and ml and homog and target in ("min-size", "max-size", "mult-bool-size"):
            steps = [("produce-size", target, "thm3-homog")]
        elif f and ml and P.lower_envelope(f).same_monomials(subj) and target in (
                "min-size", "mult-bool-size", "produce-size"):
            steps = [("produce-size[lenv]", "min-size", "eq2")]
            if target == "mult-bool-size":
                steps.append(("min-size", "mult-bool-size", "eq2"))
            elif target == "produce-size":
                steps.append(("min-size", "produce-size", "eq2"))
        elif f and ml and P.higher_envelope(f).same_monomials(subj) and target in (
                "max-size", "produce-size"):
            steps = [("produce-size[henv]", "max-size", "eq2")]
            if target == "produce-size":
                steps.append(("max-size", "produce-size", "eq2"))
    elif cert.applies_to == "bool-size" and subj.same_monomials(f):
        if target in ("min-size", "max-size", "arith-size", "mult-bool-size"):
            steps = [("bool-size", target, "lemma-bool")]
    if not steps:
        raise UnlicensedTransfer(
            f"no licensed step from {cert.applies_to} of the certificate's subject to {target} of f")
    return Certificate("transfer", cert.value, target, f.as_set(),
                       {"source": cert.to_json()}, list(cert.chain) + steps,
                       note=" -> ".join(t for _, _, t in steps))


# --------------------------------------------------------------------------
# independent re-verification


def verify_certificate(cert: Certificate) -> bool:
    """Recheck the witness of a certificate from scratch."""
    f = cert.subject
    w = cert.witness
    if cert.kind == "schnorr":
        sep = [_mono_from_json(p) for p in w["separated"]]
        return separated_check(f, sep) and cert.value == max(0, len(sep) - 1)
    if cert.kind == "kl-free":
        free, _ = kl_free_check(f, w["k"], w["l"])
        return free and cert.value == -(-len(f) // (2 * w["k"] * w["l"] ** 2))
    if cert.kind == "rectangle":
        m = f.min_degree() if w["measure"] == "degree" else f.min_length()
        lo, hi = -(-m // 3), (2 * m) // 3
        vals = [-(-len(f) // (P.factor_density(f, r) * P.factor_density(f, m - r)))
                for r in range(lo, hi + 1)]
        return m == w["m"] and cert.value == min(vals)
    if cert.kind == "expander":
        g = Graph.from_json(w["graph"])
        part = w["partition"]
        S = part["S"]
        if not (len(S) in balanced_sizes(g.n) and is_induced_crossing_matching(g, S, part["matching"])):
            return False
        m, _ = matching_number(g)
        return (m == w["matching_number"] == len(part["matching"])
                and cert.value == (2 ** (m - 2) if m >= 2 else 1)
                and gen_fG(g).same_monomials(f))
    if cert.kind == "depth":
        seq = w["sequence"]
        d = f.min_degree()
        if seq[0] != d or seq[-1] != 1:
            return False
        q = Fraction(1)
        for a, b in zip(seq, seq[1:]):
            if not (b < a and 2 * b >= a):
                return False
            q *= 2 * depth_decrease(f, a, b)
        return cert.value == max(0, _ceil_log2(q)) and cert.value == depth_lower_bound(f).value
    if cert.kind == "transfer":
        src = Certificate.from_json(w["source"])
        if not verify_certificate(src):
            return False
        again = transfer(src, f, cert.applies_to)
        return again.value == cert.value and again.chain == cert.chain
    raise ValueError(f"unknown certificate kind {cert.kind!r}")
