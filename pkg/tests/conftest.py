import os

from hypothesis import HealthCheck, settings

from tropbound.polynomial import Polynomial, monomial

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def mono(*vs, **kw):
    return monomial(*vs, **kw)


def poly(n, *monos, coeffs=None):
    """Set polynomial from tuples of variable indices (repeats = powers)."""
    if coeffs is None:
        return Polynomial.from_set(n, [monomial(*m) for m in monos])
    return Polynomial(n, {monomial(*m): c for m, c in zip(monos, coeffs)})
