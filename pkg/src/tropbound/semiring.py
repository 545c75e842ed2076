"""The six concrete semirings: counting, boolean and the four tropical ones.

Elements are Python integers, extended by ``INF`` (+infinity, Min semirings)
or ``NEG_INF`` (-infinity, Max semirings). Python integers never overflow, so
the checked-overflow requirement reduces to rejecting non-integral values.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from tropbound.errors import DomainError

INF = math.inf
NEG_INF = -math.inf

ExtInt = Union[int, float]


class SemiringId(str, enum.Enum):
    NAT_ARITH = "nat-arith"
    BOOL = "bool"
    MIN_NAT = "min-nat"
    MIN_INT = "min-int"
    MAX_NAT = "max-nat"
    MAX_INT = "max-int"

    @classmethod
    def parse(cls, value: Union[str, "SemiringId"]) -> "SemiringId":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise DomainError(f"unknown semiring {value!r} (expected one of {names})") from None

    @property
    def is_min(self) -> bool:
        return self in (SemiringId.MIN_NAT, SemiringId.MIN_INT)

    @property
    def is_max(self) -> bool:
        return self in (SemiringId.MAX_NAT, SemiringId.MAX_INT)

    @property
    def is_tropical(self) -> bool:
        return self.is_min or self.is_max


@dataclass(frozen=True)
class SemiringFlags:
    additively_idempotent: bool
    multiplicatively_idempotent: bool
    zero_characteristic: bool


def _is_int(a) -> bool:
    return isinstance(a, int)


@dataclass(frozen=True)
class Semiring:
    id: SemiringId
    zero: ExtInt
    one: ExtInt
    flags: SemiringFlags
    _add: Callable[[ExtInt, ExtInt], ExtInt] = field(repr=False)
    _mul: Callable[[ExtInt, ExtInt], ExtInt] = field(repr=False)
    _member: Callable[[ExtInt], bool] = field(repr=False)

    def contains(self, a) -> bool:
        try:
            return bool(self._member(a))
        except TypeError:
            return False

    def check(self, a) -> ExtInt:
        if not self.contains(a):
            raise DomainError(f"{a!r} is not an element of {self.id.value}")
        return a

    def add(self, a: ExtInt, b: ExtInt) -> ExtInt:
        return self._add(self.check(a), self.check(b))

    def mul(self, a: ExtInt, b: ExtInt) -> ExtInt:
        return self._mul(self.check(a), self.check(b))

    def power(self, a: ExtInt, e: int) -> ExtInt:
        """``a`` multiplied with itself ``e`` times (``e >= 0``)."""
        self.check(a)
        if e == 0:
            return self.one
        if self.id is SemiringId.NAT_ARITH:
            return a**e
        if self.id is SemiringId.BOOL:
            return a
        # tropical: e-fold numeric addition; infinities are absorbing
        return a * e if _is_int(a) else a

    def scale(self, c: int, a: ExtInt) -> ExtInt:
        """The ``c``-fold sum ``a + a + ... + a`` (``c >= 1``)."""
        self.check(a)
        if self.id is SemiringId.NAT_ARITH:
            return c * a
        return a

    def sum(self, values: Iterable[ExtInt]) -> ExtInt:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values: Iterable[ExtInt]) -> ExtInt:
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc


def _min_add(a, b):
    return a if a <= b else b


def _max_add(a, b):
    return a if a >= b else b


def _trop_mul_min(a, b):
    if a == INF or b == INF:
        return INF
    return a + b


def _trop_mul_max(a, b):
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


_SEMIRINGS = {
    SemiringId.NAT_ARITH: Semiring(
        SemiringId.NAT_ARITH, 0, 1, SemiringFlags(False, False, True),
        lambda a, b: a + b, lambda a, b: a * b,
        lambda a: _is_int(a) and a >= 0,
    ),
    SemiringId.BOOL: Semiring(
        SemiringId.BOOL, 0, 1, SemiringFlags(True, True, True),
        lambda a, b: 1 if (a or b) else 0, lambda a, b: 1 if (a and b) else 0,
        lambda a: _is_int(a) and a in (0, 1),
    ),
    SemiringId.MIN_NAT: Semiring(
        SemiringId.MIN_NAT, INF, 0, SemiringFlags(True, False, True),
        _min_add, _trop_mul_min,
        lambda a: a == INF or (_is_int(a) and a >= 0),
    ),
    SemiringId.MIN_INT: Semiring(
        SemiringId.MIN_INT, INF, 0, SemiringFlags(True, False, True),
        _min_add, _trop_mul_min,
        lambda a: a == INF or _is_int(a),
    ),
    SemiringId.MAX_NAT: Semiring(
        SemiringId.MAX_NAT, NEG_INF, 0, SemiringFlags(True, False, True),
        _max_add, _trop_mul_max,
        lambda a: a == NEG_INF or (_is_int(a) and a >= 0),
    ),
    SemiringId.MAX_INT: Semiring(
        SemiringId.MAX_INT, NEG_INF, 0, SemiringFlags(True, False, True),
        _max_add, _trop_mul_max,
        lambda a: a == NEG_INF or _is_int(a),
    ),
}


def get(id: Union[str, SemiringId]) -> Semiring:
    return _SEMIRINGS[SemiringId.parse(id)]


def sr_add(id, a: ExtInt, b: ExtInt) -> ExtInt:
    return get(id).add(a, b)


def sr_mul(id, a: ExtInt, b: ExtInt) -> ExtInt:
    return get(id).mul(a, b)


def sr_constants(id) -> tuple[ExtInt, ExtInt]:
    s = get(id)
    return s.zero, s.one


def flags(id) -> SemiringFlags:
    return get(id).flags


def negate(a: ExtInt) -> ExtInt:
    """The order-reversing map carrying MinInt onto MaxInt."""
    return -a


@dataclass
class AxiomReport:
    semiring: SemiringId
    ok: bool
    violation: Optional[str] = None
    additively_idempotent: bool = True
    multiplicatively_idempotent: bool = True
    checked_triples: int = 0


def axiom_suite(id, samples: Sequence[ExtInt]) -> AxiomReport:
    """Check the semiring axioms on every triple drawn from ``samples``.

    Also records whether idempotence of either operation was observed on
    all samples, which is how the capability flags are cross-checked.
    """
    s = get(id)
    for a in samples:
        s.check(a)
    report = AxiomReport(s.id, ok=True)
    pool = list(samples) + [s.zero, s.one]

    def fail(msg):
        report.ok = False
        report.violation = msg
        return report

    for a in pool:
        if s.add(a, a) != a:
            report.additively_idempotent = False
        if s.mul(a, a) != a:
            report.multiplicatively_idempotent = False
        if s.add(a, s.zero) != a:
            return fail(f"additive identity fails at {a!r}")
        if s.mul(a, s.one) != a:
            return fail(f"multiplicative identity fails at {a!r}")
        if s.mul(a, s.zero) != s.zero:
            return fail(f"annihilation fails at {a!r}")
    for a, b, c in itertools.product(pool, repeat=3):
        report.checked_triples += 1
        if s.add(a, b) != s.add(b, a):
            return fail(f"additive commutativity fails at ({a!r}, {b!r})")
        if s.mul(a, b) != s.mul(b, a):
            return fail(f"multiplicative commutativity fails at ({a!r}, {b!r})")
        if s.add(s.add(a, b), c) != s.add(a, s.add(b, c)):
            return fail(f"additive associativity fails at ({a!r}, {b!r}, {c!r})")
        if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)):
            return fail(f"multiplicative associativity fails at ({a!r}, {b!r}, {c!r})")
        if s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)):
            return fail(f"distributivity fails at ({a!r}, {b!r}, {c!r})")
    return report


def parse_value(text: Union[str, int, float]) -> ExtInt:
    """Parse a JSON/CLI element: integers, ``"inf"``/``"+inf"``, ``"-inf"``."""
    if isinstance(text, bool):
        return int(text)
    if isinstance(text, int):
        return text
    if isinstance(text, float):
        if math.isinf(text):
            return text
        if text.is_integer():
            return int(text)
        raise DomainError(f"non-integral value {text!r}")
    t = str(text).strip().lower()
    if t in ("inf", "+inf", "infinity", "+infinity", "∞"):
        return INF
    if t in ("-inf", "-infinity", "-∞"):
        return NEG_INF
    try:
        return int(t)
    except ValueError:
        raise DomainError(f"cannot parse semiring value {text!r}") from None


def format_value(a: ExtInt) -> Union[int, str]:
    if a == INF:
        return "inf"
    if a == NEG_INF:
        return "-inf"
    return int(a)
