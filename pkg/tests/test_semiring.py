import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropbound import semiring as sr
from tropbound.errors import DomainError
from tropbound.semiring import INF, NEG_INF, SemiringId as S

SAMPLES = {
    S.NAT_ARITH: [0, 1, 2, 3],
    S.BOOL: [0, 1],
    S.MIN_NAT: [0, 1, 2, INF],
    S.MIN_INT: [-2, -1, 0, 1, 2, INF],
    S.MAX_NAT: [NEG_INF, 0, 1, 2],
    S.MAX_INT: [NEG_INF, -2, -1, 0, 1, 2],
}


def test_add_examples():
    assert sr.sr_add(S.MIN_NAT, 3, 5) == 3
    assert sr.sr_add(S.MAX_INT, NEG_INF, 7) == 7
    for id, samples in SAMPLES.items():
        zero, _ = sr.sr_constants(id)
        for a in samples:
            assert sr.sr_add(id, a, zero) == a


def test_mul_examples():
    assert sr.sr_mul(S.MIN_NAT, 3, 5) == 8
    assert sr.sr_mul(S.MIN_NAT, 3, INF) == INF
    assert sr.sr_mul(S.BOOL, 1, 1) == 1
    assert sr.sr_mul(S.NAT_ARITH, 3, 5) == 15
    assert sr.sr_mul(S.MAX_NAT, NEG_INF, 4) == NEG_INF


def test_constants():
    assert sr.sr_constants(S.MIN_NAT) == (INF, 0)
    assert sr.sr_constants(S.MIN_INT) == (INF, 0)
    assert sr.sr_constants(S.MAX_INT) == (NEG_INF, 0)
    assert sr.sr_constants(S.MAX_NAT) == (NEG_INF, 0)
    assert sr.sr_constants(S.NAT_ARITH) == (0, 1)
    assert sr.sr_constants(S.BOOL) == (0, 1)


def test_ids_and_parsing():
    assert sorted(s.value for s in S) == sorted(
        ["nat-arith", "bool", "min-nat", "min-int", "max-nat", "max-int"])
    assert sr.get("min-nat").id is S.MIN_NAT
    assert sr.parse_value("inf") == INF and sr.parse_value("-inf") == NEG_INF
    assert sr.parse_value("+inf") == INF and sr.parse_value(7) == 7
    assert sr.format_value(INF) == "inf" and sr.format_value(NEG_INF) == "-inf"
    assert sr.format_value(5) == 5


@pytest.mark.parametrize("id,bad", [
    (S.MIN_NAT, -1), (S.MIN_NAT, NEG_INF), (S.MAX_NAT, INF), (S.MAX_INT, INF),
    (S.MIN_INT, NEG_INF), (S.BOOL, 2), (S.NAT_ARITH, -3), (S.NAT_ARITH, INF), (S.MIN_NAT, 1.5),
])
def test_carrier_violations(id, bad):
    with pytest.raises(DomainError):
        sr.sr_add(id, bad, sr.sr_constants(id)[1])
    with pytest.raises(DomainError):
        sr.sr_mul(id, sr.sr_constants(id)[1], bad)


def test_flags():
    for id in S:
        f = sr.flags(id)
        assert f.zero_characteristic
        assert f.additively_idempotent == (id is not S.NAT_ARITH)
        assert f.multiplicatively_idempotent == (id is S.BOOL)
    assert sr.flags(S.MIN_INT) == sr.flags(S.MAX_INT)


@pytest.mark.parametrize("id", list(S))
def test_axiom_suite_passes(id):
    rep = sr.axiom_suite(id, SAMPLES[id])
    assert rep.ok, rep.violation
    assert rep.additively_idempotent == sr.flags(id).additively_idempotent
    assert rep.multiplicatively_idempotent == sr.flags(id).multiplicatively_idempotent


def test_axiom_suite_examples():
    assert sr.axiom_suite(S.MIN_NAT, [0, 1, 2, INF]).ok
    b = sr.axiom_suite(S.BOOL, [0, 1])
    assert b.ok and b.multiplicatively_idempotent
    r = sr.axiom_suite(S.NAT_ARITH, [0, 1, 2, 3])
    assert r.ok and not r.additively_idempotent


def _ext(id):
    s = sr.get(id)
    if id is S.BOOL:
        return st.sampled_from([0, 1])
    lo = 0 if id in (S.NAT_ARITH, S.MIN_NAT, S.MAX_NAT) else -50
    base = st.integers(lo, 50)
    if id is S.NAT_ARITH:
        return base
    return st.one_of(base, st.just(s.zero))


@pytest.mark.parametrize("id", list(S))
def test_distributivity_property(id):
    @given(_ext(id), _ext(id), _ext(id))
    def check(a, b, c):
        lhs = sr.sr_mul(id, a, sr.sr_add(id, b, c))
        rhs = sr.sr_add(id, sr.sr_mul(id, a, b), sr.sr_mul(id, a, c))
        assert lhs == rhs
        assert sr.sr_add(id, sr.sr_add(id, a, b), c) == sr.sr_add(id, a, sr.sr_add(id, b, c))
        assert sr.sr_mul(id, sr.sr_mul(id, a, b), c) == sr.sr_mul(id, a, sr.sr_mul(id, b, c))
    check()


@given(st.one_of(st.integers(-40, 40), st.just(INF)), st.one_of(st.integers(-40, 40), st.just(INF)))
def test_min_max_isomorphism(a, b):
    neg = sr.negate
    assert neg(sr.sr_add(S.MIN_INT, a, b)) == sr.sr_add(S.MAX_INT, neg(a), neg(b))
    assert neg(sr.sr_mul(S.MIN_INT, a, b)) == sr.sr_mul(S.MAX_INT, neg(a), neg(b))


@pytest.mark.parametrize("id", list(S))
def test_zero_characteristic(id):
    s = sr.get(id)
    acc = s.zero
    for _ in range(64):
        acc = s.add(acc, s.one)
        assert acc != s.zero


def test_infinity_absorbing():
    assert sr.sr_mul(S.MIN_INT, -7, INF) == INF
    assert sr.sr_mul(S.MAX_INT, 7, NEG_INF) == NEG_INF
    assert math.isinf(sr.sr_mul(S.MIN_NAT, INF, INF))
