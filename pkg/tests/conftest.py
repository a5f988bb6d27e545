import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from carlitz_goss.algebra import LaurentSeries, PAdicElem, ThetaPoly, field_for_q, field_make

# Fixed seed: examples are derived from the test itself, not from a clock.
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

# invariants of the algebra / carlitz layers run at this many cases
MANY = 1000

F2, F3 = field_for_q(2), field_for_q(3)
F4, F9 = field_for_q(4), field_for_q(9)
FIELDS = (F2, F3, F4, F9)


def polys(field, max_deg=6, nonzero=False):
    """Random ThetaPoly over ``field`` of degree <= max_deg."""
    coeffs = st.lists(st.integers(0, field.q - 1), min_size=0, max_size=max_deg + 1)
    out = coeffs.map(lambda c: ThetaPoly(field, c))
    return out.filter(bool) if nonzero else out


def monics(field, min_deg=0, max_deg=5):
    return st.integers(min_deg, max_deg).flatmap(
        lambda d: st.lists(st.integers(0, field.q - 1), min_size=d, max_size=d).map(
            lambda c: ThetaPoly(field, list(c) + [1])
        )
    )


def laurents(field, prec=12, min_order=-4, nonzero=False):
    """Random Laurent series with v_inf >= min_order to absolute precision prec."""

    def build(order, coeffs):
        coeffs = coeffs[: prec - order] + [0] * max(0, prec - order - len(coeffs))
        return LaurentSeries(field, order, prec, coeffs)

    out = st.builds(
        build,
        st.integers(min_order, prec - 1),
        st.lists(st.integers(0, field.q - 1), min_size=1, max_size=prec - min_order),
    )
    return out.filter(lambda x: not x.is_zero()) if nonzero else out


def padics(P, N=6, min_val=0, max_val=3, unit=False):
    """Random P-adic elements of absolute precision N with val in [min_val, max_val]."""
    F = P.field

    def build(v, f):
        if unit:
            f = f + ThetaPoly.one(F) if not (f % P) else f
        g = P**v * f if f else f
        return PAdicElem.from_poly(g, P, abs_prec=N) if g else PAdicElem.zero(P, N)

    return st.builds(build, st.integers(min_val, max_val), polys(F, P.degree * N))


st_field = st.sampled_from(FIELDS)


# --- acceptance report ------------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=_criterion_order):
            terminalreporter.write_line(line)


def _criterion_order(line: str):
    m = line.split("criterion ", 1)
    if len(m) == 2:
        return int(m[1].split(":", 1)[0])
    return 99
