"""Sparse formal polynomials with nonnegative integer coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
index, with no zero exponents; the empty tuple is the constant monomial 1.
Polynomials are immutable mappings monomial -> positive coefficient over a
fixed universe of ``n_vars`` variables.

Two notions of equality are used throughout: ``f == h`` compares monomials
*and* coefficients, ``f.same_monomials(h)`` compares monomial sets only.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from tropbound import semiring as sr
from tropbound.errors import DomainError, ExplosionError, PreconditionError, RangeError
from tropbound.semiring import INF, NEG_INF

Monomial = Tuple[Tuple[int, int], ...]

ONE: Monomial = ()

DEFAULT_MUL_CAP = 10**6
DEFAULT_FACTOR_CAP = 10**7


def monomial(*items, exps: Optional[Mapping[int, int]] = None) -> Monomial:
    """Build a monomial from variable indices (repeats raise the exponent)
    or from an explicit ``exps`` mapping."""
    c: Counter = Counter()
    for i in items:
        c[int(i)] += 1
    if exps:
        for i, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            c[int(i)] += int(e)
    return tuple(sorted((i, e) for i, e in c.items() if e > 0))


def degree(p: Monomial) -> int:
    return sum(e for _, e in p)


def length(p: Monomial) -> int:
    return len(p)


def support(p: Monomial) -> frozenset:
    return frozenset(i for i, _ in p)


def is_multilinear_monomial(p: Monomial) -> bool:
    return all(e == 1 for _, e in p)


def mono_mul(p: Monomial, q: Monomial) -> Monomial:
    if not p:
        return q
    if not q:
        return p
    out = []
    i = j = 0
    while i < len(p) and j < len(q):
        a, b = p[i], q[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(p[i:])
    out.extend(q[j:])
    return tuple(out)


def monomial_contains(p: Monomial, q: Monomial) -> bool:
    """True iff ``p = q * q'`` for some monomial ``q'``."""
    if len(q) > len(p):
        return False
    exps = dict(p)
    return all(exps.get(i, 0) >= e for i, e in q)


def mono_div(p: Monomial, q: Monomial) -> Monomial:
    """``p / q``; requires ``monomial_contains(p, q)``."""
    exps = dict(p)
    for i, e in q:
        exps[i] -= e
    return tuple((i, e) for i, e in sorted(exps.items()) if e > 0)


def factors(p: Monomial, r: int) -> Iterator[Monomial]:
    """All distinct degree-``r`` monomials dividing ``p``."""
    items = list(p)

    def rec(k: int, left: int, acc: list):
        if left == 0:
            yield tuple(acc)
            return
        if k == len(items):
            return
        rest = sum(e for _, e in items[k + 1:])
        i, e = items[k]
        for take in range(min(e, left), -1, -1):
            if left - take > rest:
                break
            if take:
                acc.append((i, take))
            yield from rec(k + 1, left - take, acc)
            if take:
                acc.pop()

    yield from rec(0, r, [])


def mono_key(p: Monomial, n_vars: int) -> tuple:
    """Canonical order: degree first, then the dense exponent vector."""
    dense = [0] * n_vars
    for i, e in p:
        dense[i] = e
    return (degree(p), tuple(dense))


def mono_str(p: Monomial, names: Optional[Sequence[str]] = None) -> str:
    if not p:
        return "1"
    parts = []
    for i, e in p:
        name = names[i] if names else f"x{i}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("_terms", "n_vars", "_hash")

    def __init__(self, n_vars: int, terms: Optional[Mapping[Monomial, int]] = None):
        self.n_vars = int(n_vars)
        clean: Dict[Monomial, int] = {}
        if terms:
            for p, c in terms.items():
                if c < 0:
                    raise ValueError("coefficients must be nonnegative")
                if c == 0:
                    continue
                for i, e in p:
                    if not 0 <= i < self.n_vars:
                        raise DomainError(f"variable index {i} outside universe of size {self.n_vars}")
                    if e <= 0:
                        raise ValueError("stored exponents must be positive")
                clean[p] = clean.get(p, 0) + c
        self._terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_monomials(cls, n_vars: int, monomials: Iterable[Monomial]) -> "Polynomial":
        c: Counter = Counter()
        for p in monomials:
            c[tuple(p)] += 1
        return cls(n_vars, c)

    @classmethod
    def from_set(cls, n_vars: int, monomials: Iterable[Monomial]) -> "Polynomial":
        return cls(n_vars, {tuple(p): 1 for p in monomials})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "Polynomial":
        return cls(n_vars, {((i, 1),): 1})

    @classmethod
    def one(cls, n_vars: int) -> "Polynomial":
        return cls(n_vars, {ONE: 1})

    @classmethod
    def zero(cls, n_vars: int) -> "Polynomial":
        return cls(n_vars)

    # mapping protocol -----------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_monomials())

    def __contains__(self, p) -> bool:
        return p in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, p: Monomial) -> int:
        return self._terms.get(p, 0)

    def items(self):
        return [(p, self._terms[p]) for p in self.sorted_monomials()]

    def monomial_set(self) -> frozenset:
        return frozenset(self._terms)

    def sorted_monomials(self) -> list:
        n = self.n_vars
        return sorted(self._terms, key=lambda p: mono_key(p, n))

    # equality -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    def same_monomials(self, other: "Polynomial") -> bool:
        """Set equality: same monomials, coefficients ignored."""
        return self.n_vars == other.n_vars and self._terms.keys() == other._terms.keys()

    def issubset(self, other: "Polynomial") -> bool:
        return all(p in other._terms for p in self._terms)

    def as_set(self) -> "Polynomial":
        """Copy with all coefficients set to 1."""
        return Polynomial(self.n_vars, {p: 1 for p in self._terms})

    # arithmetic -----------------------------------------------------------
    def _check_universe(self, other: "Polynomial"):
        if self.n_vars != other.n_vars:
            raise DomainError(f"variable universes differ ({self.n_vars} vs {other.n_vars})")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return poly_add(self, other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    # degree data ----------------------------------------------------------
    def min_degree(self):
        return min((degree(p) for p in self._terms), default=INF)

    def max_degree(self):
        return max((degree(p) for p in self._terms), default=NEG_INF)

    def min_length(self):
        return min((len(p) for p in self._terms), default=INF)

    def variables(self) -> frozenset:
        out = set()
        for p in self._terms:
            out.update(i for i, _ in p)
        return frozenset(out)

    def __repr__(self) -> str:
        return f"Polynomial({self.n_vars}, {self.to_string()})"

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, c in self.items():
            s = mono_str(p, names)
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)

    # JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [
                {"exps": {str(i): e for i, e in p}, "coeff": c} for p, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        try:
            n = int(data["n_vars"])
            terms: Counter = Counter()
            for t in data["terms"]:
                p = monomial(exps={int(k): int(v) for k, v in t["exps"].items()})
                terms[p] += int(t.get("coeff", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed polynomial JSON: {exc}") from None
        return cls(n, terms)


def poly_add(f: Polynomial, h: Polynomial) -> Polynomial:
    f._check_universe(h)
    terms = dict(f._terms)
    for p, c in h._terms.items():
        terms[p] = terms.get(p, 0) + c
    return Polynomial(f.n_vars, terms)


def poly_mul(f: Polynomial, h: Polynomial, cap: int = DEFAULT_MUL_CAP) -> Polynomial:
    """Formal product. Raises ``ExplosionError`` past ``cap`` distinct monomials."""
    f._check_universe(h)
    terms: Dict[Monomial, int] = {}
    for p, c in f._terms.items():
        for q, d in h._terms.items():
            pq = mono_mul(p, q)
            terms[pq] = terms.get(pq, 0) + c * d
            if len(terms) > cap:
                raise ExplosionError(
                    f"product exceeds cap of {cap} monomials",
                    estimate=max(len(terms), max(len(f), len(h))),
                )
    out = Polynomial.__new__(Polynomial)
    out.n_vars = f.n_vars
    out._terms = terms
    out._hash = None
    return out


def set_mul(f: Polynomial, h: Polynomial, cap: int = DEFAULT_MUL_CAP) -> Polynomial:
    """Product as monomial sets (all coefficients 1)."""
    return poly_mul(f.as_set(), h.as_set(), cap).as_set()


def set_union(f: Polynomial, h: Polynomial) -> Polynomial:
    f._check_universe(h)
    return Polynomial(f.n_vars, {p: 1 for p in itertools.chain(f._terms, h._terms)})


def _nonempty(f: Polynomial, what: str):
    if not f:
        raise PreconditionError(f"{what} of the empty polynomial is undefined")


def lmin_set(f: Polynomial) -> Polynomial:
    """Monomials of ``f`` containing no other monomial of ``f``."""
    _nonempty(f, "lmin")
    mons = sorted(f._terms, key=degree)
    keep = []
    for p in mons:
        if not any(monomial_contains(p, q) for q in keep):
            keep.append(p)
    return Polynomial(f.n_vars, {p: f._terms[p] for p in keep})


def lmax_set(f: Polynomial) -> Polynomial:
    """Monomials of ``f`` not contained in any other monomial of ``f``."""
    _nonempty(f, "lmax")
    mons = sorted(f._terms, key=degree, reverse=True)
    keep = []
    for p in mons:
        if not any(monomial_contains(q, p) for q in keep):
            keep.append(p)
    return Polynomial(f.n_vars, {p: f._terms[p] for p in keep})


def lower_envelope(f: Polynomial) -> Polynomial:
    _nonempty(f, "lower envelope")
    d = f.min_degree()
    return Polynomial(f.n_vars, {p: c for p, c in f._terms.items() if degree(p) == d})


def higher_envelope(f: Polynomial) -> Polynomial:
    _nonempty(f, "higher envelope")
    d = f.max_degree()
    return Polynomial(f.n_vars, {p: c for p, c in f._terms.items() if degree(p) == d})


def is_multilinear(f: Polynomial) -> bool:
    return all(is_multilinear_monomial(p) for p in f._terms)


def is_homogeneous(f: Polynomial) -> bool:
    return len({degree(p) for p in f._terms}) <= 1


def factor_density(f: Polynomial, r: int, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """Largest number of monomials of ``f`` sharing one degree-``r`` factor."""
    if not f:
        raise PreconditionError("factor density of the empty polynomial")
    if not 0 <= r <= f.max_degree():
        raise RangeError(f"r={r} outside [0, {f.max_degree()}]")
    if r == 0:
        return len(f)
    counts: Counter = Counter()
    work = 0
    for p in f._terms:
        if is_multilinear_monomial(p):
            if len(p) < r:
                continue
            work += math.comb(len(p), r)
            if work > cap:
                raise ExplosionError(f"factor enumeration exceeds cap of {cap}", estimate=work)
            counts.update(itertools.combinations(p, r))
            continue
        for q in factors(p, r):
            counts[q] += 1
            work += 1
            if work > cap:
                raise ExplosionError(f"factor enumeration exceeds cap of {cap}", estimate=work)
    return max(counts.values())


def factor_densities(f: Polynomial, cap: int = DEFAULT_FACTOR_CAP) -> list:
    """``[d(f,0), d(f,1), ..., d(f, maxdeg)]``."""
    return [factor_density(f, r, cap) for r in range(int(f.max_degree()) + 1)]


def evaluate(f: Polynomial, id, assignment: Sequence) -> sr.ExtInt:
    """Value of ``f`` as a function over the given semiring."""
    s = sr.get(id)
    if len(assignment) != f.n_vars:
        raise DomainError(f"assignment has {len(assignment)} values, expected {f.n_vars}")
    vals = [s.check(a) for a in assignment]
    acc = s.zero
    for p, c in f._terms.items():
        term = s.one
        for i, e in p:
            term = s.mul(term, s.power(vals[i], e))
        acc = s.add(acc, s.scale(c, term))
    return acc


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    if not is_multilinear(f):
        raise PreconditionError("partial derivative is only defined here for multilinear polynomials")
    out: Dict[Monomial, int] = {}
    for p, c in f._terms.items():
        if any(v == i for v, _ in p):
            q = tuple(t for t in p if t[0] != i)
            out[q] = out.get(q, 0) + c
    return Polynomial(f.n_vars, out)


def _check_saturatable(f: Polynomial):
    if not (is_multilinear(f) and is_homogeneous(f)):
        raise PreconditionError("saturation needs a multilinear homogeneous polynomial")


def saturate_low(f: Polynomial) -> Polynomial:
    """Add every degree-1 monomial ``x_i``."""
    _check_saturatable(f)
    terms = dict(f._terms)
    for i in range(f.n_vars):
        terms.setdefault(((i, 1),), 1)
    return Polynomial(f.n_vars, terms)


def saturate_high(f: Polynomial) -> Polynomial:
    """Add the monomial ``x_1 x_2 ... x_n``."""
    _check_saturatable(f)
    terms = dict(f._terms)
    terms.setdefault(tuple((i, 1) for i in range(f.n_vars)), 1)
    return Polynomial(f.n_vars, terms)


def enrich(f: Polynomial, k: int, i: int, j: int, mode: str = "sum") -> Polynomial:
    """Replace ``x_k`` by ``x_i + x_j`` (mode ``"sum"``) or by ``x_i x_j``
    (mode ``"product"``). ``i`` and ``j`` may coincide."""
    if k in (i, j):
        raise PreconditionError("the replaced variable must differ from both replacements")
    if k not in f.variables():
        raise PreconditionError(f"x{k} does not occur in the polynomial")
    for v in (i, j):
        if not 0 <= v < f.n_vars:
            raise DomainError(f"variable index {v} outside universe")
    if mode not in ("sum", "product"):
        raise ValueError(f"unknown enrichment mode {mode!r}")
    out: Dict[Monomial, int] = {}
    for p, c in f._terms.items():
        m = dict(p).get(k, 0)
        rest = tuple(t for t in p if t[0] != k)
        if m == 0:
            out[rest] = out.get(rest, 0) + c
            continue
        if mode == "product":
            q = mono_mul(mono_mul(rest, monomial(exps={i: m})), monomial(exps={j: m}))
            out[q] = out.get(q, 0) + c
        else:
            for a in range(m + 1):
                q = mono_mul(rest, monomial(exps={i: a}))
                q = mono_mul(q, monomial(exps={j: m - a}))
                out[q] = out.get(q, 0) + c * math.comb(m, a)
    return Polynomial(f.n_vars, out)


def bool_multilinearize(f: Polynomial) -> Polynomial:
    """Clamp every exponent to 1 (valid because ``a*a = a`` in Bool)."""
    out: Dict[Monomial, int] = {}
    for p, c in f._terms.items():
        q = tuple((i, 1) for i, _ in p)
        out[q] = out.get(q, 0) + c
    return Polynomial(f.n_vars, out)


def restrict_variables(f: Polynomial, keep: Iterable[int]) -> Polynomial:
    """Monomials whose support lies inside ``keep`` (others set to 0)."""
    keep = set(keep)
    return Polynomial(f.n_vars, {p: c for p, c in f._terms.items() if all(i in keep for i, _ in p)})
