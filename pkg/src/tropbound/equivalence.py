"""Semantic equivalence of polynomials over each semiring.

Structural criteria decide equivalence whenever a multilinear side is
available (lower/higher envelopes for Min/Max over naturals, plain monomial
sets over the integers). Everything else is left undecided unless a concrete
distinguishing assignment turns up. Every ``False`` verdict carries a witness
that has been re-checked by evaluation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from tropbound import polynomial as P
from tropbound import semiring as sr
from tropbound.errors import InvariantViolation, NoCanonicalForm
from tropbound.polynomial import Polynomial
from tropbound.semiring import INF, NEG_INF, SemiringId

EXHAUSTIVE_DOMAINS = {
    SemiringId.NAT_ARITH: (0, 1, 2, 3),
    SemiringId.BOOL: (0, 1),
    SemiringId.MIN_NAT: (0, 1, 2, 3, INF),
    SemiringId.MIN_INT: (-2, -1, 0, 1, 2, INF),
    SemiringId.MAX_NAT: (0, 1, 2, 3),
    SemiringId.MAX_INT: (NEG_INF, -2, -1, 0, 1, 2),
}

# (value on the monomial's variables, value elsewhere); these are the
# assignments that separate distinct monomial sets. Inputs over
# max-nat are finite naturals: -inf is only the constant zero there, and
# feeding it to a variable would separate x + xy from xy.
_PROBES = {
    SemiringId.NAT_ARITH: [(1, 0), (1, 1), (2, 0)],
    SemiringId.BOOL: [(1, 0)],
    SemiringId.MIN_NAT: [(0, 1), (0, INF), (1, INF), (0, 2), (1, 2), (1, 0)],
    SemiringId.MIN_INT: [(-1, 0), (-1, INF), (0, INF), (1, INF), (0, 1), (-1, 1), (1, 0)],
    SemiringId.MAX_NAT: [(1, 0), (2, 0), (1, 2), (2, 1)],
    SemiringId.MAX_INT: [(1, 0), (1, NEG_INF), (0, NEG_INF), (-1, NEG_INF), (0, -1), (1, -1), (-1, 0)],
}

MAX_EXHAUSTIVE_POINTS = 200_000


@dataclass
class Verdict:
    """``value`` is True (equivalent), False (witness attached) or None
    (undecided: the structural criteria do not apply and no witness was found)."""

    value: Optional[bool]
    semiring: SemiringId
    method: str
    witness: Optional[list] = None
    values: Optional[tuple] = None
    reason: str = ""

    @property
    def label(self) -> str:
        return {True: "equivalent", False: "not-equivalent", None: "undecided"}[self.value]

    def to_json(self) -> dict:
        return {
            "verdict": self.label,
            "semiring": self.semiring.value,
            "method": self.method,
            "witness": None if self.witness is None else [sr.format_value(v) for v in self.witness],
            "values": None if self.values is None else [sr.format_value(v) for v in self.values],
            "reason": self.reason,
        }


def _used(f: Polynomial, h: Polynomial) -> List[int]:
    return sorted(f.variables() | h.variables())


def _distinguishes(f, h, id, a) -> Optional[tuple]:
    u, v = P.evaluate(f, id, a), P.evaluate(h, id, a)
    return (u, v) if u != v else None


def _probe_assignments(f, h, id) -> Iterable[list]:
    s = sr.get(id)
    n = f.n_vars
    for p in itertools.chain(f.sorted_monomials(), h.sorted_monomials()):
        sup = P.support(p)
        for a_in, a_out in _PROBES[s.id]:
            if s.contains(a_in) and s.contains(a_out):
                yield [a_in if i in sup else a_out for i in range(n)]


def _grid_assignments(f, h, id, domain) -> Iterable[list]:
    s = sr.get(id)
    used = _used(f, h)
    if len(domain) ** len(used) > MAX_EXHAUSTIVE_POINTS:
        return
    for vals in itertools.product(domain, repeat=len(used)):
        a = [s.one] * f.n_vars
        for i, v in zip(used, vals):
            a[i] = v
        yield a


def _kronecker(f: Polynomial, h: Polynomial) -> list:
    """Integer point where distinct coefficient vectors evaluate differently."""
    D = max(f.max_degree() if f else 0, h.max_degree() if h else 0) + 1
    B = max([c for _, c in f.items()] + [c for _, c in h.items()] + [1]) + 1
    return [B ** (D**i) for i in range(f.n_vars)]


def find_witness(f: Polynomial, h: Polynomial, id, domain: Optional[Sequence] = None,
                 trials: int = 2000, seed: int = 0) -> Optional[Verdict]:
    """Search for an assignment where f and h differ: structural probes, then
    an exhaustive grid on the used variables, then random points."""
    s = sr.get(id)
    domain = tuple(domain) if domain is not None else EXHAUSTIVE_DOMAINS[s.id]
    for how, gen in (("probe", _probe_assignments(f, h, s.id)),
                     ("exhaustive", _grid_assignments(f, h, s.id, domain))):
        for a in gen:
            d = _distinguishes(f, h, s.id, a)
            if d:
                return Verdict(False, s.id, how, a, d, "assignment separates the two polynomials")
    r = random_equivalence_test(f, h, s.id, domain, trials, seed)
    return r if r.value is False else None


def _negative(f, h, id, method, reason) -> Verdict:
    s = sr.get(id)
    if s.id is SemiringId.NAT_ARITH:
        w = find_witness(f, h, s.id, trials=0)
        if w is None:
            a = _kronecker(f, h)
            d = _distinguishes(f, h, s.id, a)
            if d:
                w = Verdict(False, s.id, "kronecker", a, d)
    else:
        w = find_witness(f, h, s.id)
    if w is None or w.value is not False:
        raise InvariantViolation(f"{method}: inequivalence decided but no witness found")
    w.method = f"{method}+{w.method}"
    w.reason = reason
    return w


def _positive(id, method, reason) -> Verdict:
    return Verdict(True, sr.get(id).id, method, reason=reason)


def _undecided(f, h, id, reason) -> Verdict:
    w = find_witness(f, h, id)
    if w is not None:
        w.reason = "no structural criterion applies; " + w.reason
        return w
    return Verdict(None, sr.get(id).id, "search", reason=reason)


def equivalent_arith(f: Polynomial, h: Polynomial) -> Verdict:
    if f == h:
        return _positive(SemiringId.NAT_ARITH, "coefficients", "identical coefficient vectors")
    return _negative(f, h, SemiringId.NAT_ARITH, "coefficients", "coefficient vectors differ")


def equivalent_min_nat(f: Polynomial, h: Polynomial) -> Verdict:
    id = SemiringId.MIN_NAT
    if not f or not h:
        return _empty_case(f, h, id)
    same = _same_set(f, h, id)
    if same:
        return same
    lf, lh = P.lmin_set(f), P.lmin_set(h)
    if P.is_multilinear(lf) or P.is_multilinear(lh):
        if lf.same_monomials(lh):
            return _positive(id, "lower-envelope", "lower envelopes agree and one is multilinear")
        return _negative(f, h, id, "lower-envelope", "lower envelopes differ and one is multilinear")
    return _undecided(f, h, id, "both lower envelopes are non-multilinear")


def equivalent_max_nat(f: Polynomial, h: Polynomial) -> Verdict:
    id = SemiringId.MAX_NAT
    if not f or not h:
        return _empty_case(f, h, id)
    same = _same_set(f, h, id)
    if same:
        return same
    lf, lh = P.lmax_set(f), P.lmax_set(h)
    if P.is_multilinear(lf) or P.is_multilinear(lh):
        if lf.same_monomials(lh):
            return _positive(id, "higher-envelope", "higher envelopes agree and are multilinear")
        return _negative(f, h, id, "higher-envelope",
                         "higher envelopes differ while one is multilinear")
    return _undecided(f, h, id, "neither higher envelope is multilinear")


def equal_tropical_int(f: Polynomial, h: Polynomial, id=SemiringId.MIN_INT) -> Verdict:
    s = sr.get(id)
    if s.id not in (SemiringId.MIN_INT, SemiringId.MAX_INT):
        raise ValueError("equal_tropical_int works over min-int or max-int")
    if not f or not h:
        return _empty_case(f, h, s.id)
    same = _same_set(f, h, s.id)
    if same:
        return same
    if P.is_multilinear(f) or P.is_multilinear(h):
        if f.same_monomials(h):
            return _positive(s.id, "monomial-set", "equal monomial sets with a multilinear side")
        return _negative(f, h, s.id, "monomial-set", "monomial sets differ with a multilinear side")
    return _undecided(f, h, s.id, "neither polynomial is multilinear")


def equivalent_bool(f: Polynomial, h: Polynomial) -> Verdict:
    id = SemiringId.BOOL
    cf, ch = canonical_form(f, id), canonical_form(h, id)
    if cf.same_monomials(ch):
        return _positive(id, "monotone-dnf", "minimal monotone DNFs agree")
    return _negative(f, h, id, "monotone-dnf", "minimal monotone DNFs differ")


def _same_set(f, h, id) -> Optional[Verdict]:
    # coefficients never matter in an additively idempotent semiring
    if f.same_monomials(h):
        return _positive(id, "monomial-set", "identical monomial sets")
    return None


def _empty_case(f, h, id) -> Verdict:
    # the empty polynomial is the constant zero; a nonempty one never is
    if not f and not h:
        return _positive(id, "empty", "both polynomials are empty")
    return _negative(f, h, id, "empty", "exactly one polynomial is empty")


def equivalent(f: Polynomial, h: Polynomial, id) -> Verdict:
    s = sr.get(id)
    if s.id is SemiringId.NAT_ARITH:
        return equivalent_arith(f, h)
    if s.id is SemiringId.BOOL:
        return equivalent_bool(f, h)
    if s.id is SemiringId.MIN_NAT:
        return equivalent_min_nat(f, h)
    if s.id is SemiringId.MAX_NAT:
        return equivalent_max_nat(f, h)
    return equal_tropical_int(f, h, s.id)


def random_equivalence_test(f: Polynomial, h: Polynomial, id, domain: Sequence,
                            trials: int, seed: int) -> Verdict:
    """Evaluate both sides on ``trials`` random points of ``domain``; a
    missing witness is reported as such, never as equivalence."""
    s = sr.get(id)
    domain = [s.check(v) for v in domain]
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        a = [rng.choice(domain) for _ in range(f.n_vars)]
        d = _distinguishes(f, h, s.id, a)
        if d:
            return Verdict(False, s.id, "random", a, d, f"witness found at trial {t}")
    return Verdict(None, s.id, "random", reason=f"no witness in {trials} trials")


def canonical_form(f: Polynomial, id) -> Polynomial:
    """A representative that two equivalent polynomials share."""
    s = sr.get(id)
    if s.id is SemiringId.NAT_ARITH:
        return f
    if not f:
        return f
    if s.id is SemiringId.BOOL:
        return P.lmin_set(P.bool_multilinearize(f)).as_set()
    if s.id is SemiringId.MIN_NAT:
        out = P.lmin_set(f).as_set()
        if not P.is_multilinear(out):
            raise NoCanonicalForm("no canonical form known: lower envelope is not multilinear")
        return out
    if s.id is SemiringId.MAX_NAT:
        out = P.lmax_set(f).as_set()
        if not P.is_multilinear(out):
            raise NoCanonicalForm("no canonical form known: higher envelope is not multilinear")
        return out
    if not P.is_multilinear(f):
        raise NoCanonicalForm("no canonical form known over the integers for non-multilinear input")
    return f.as_set()
