from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from freeconv.coeffs import formal_t
from freeconv.series import (
    CompositionDomainError,
    LaurentAtInfinity,
    NotInvertibleError,
    TruncSeries,
)

rationals = st.builds(F, st.integers(min_value=-6, max_value=6),
                      st.integers(min_value=1, max_value=4))


def series(order):
    return st.lists(rationals, min_size=0, max_size=order + 1).map(
        lambda cs: TruncSeries(order, cs))


def test_add_mul_examples():
    z = TruncSeries.identity(4)
    z2 = z * z
    assert (z + z2).coeffs() == (F(0), F(1), F(1), F(0), F(0))
    assert ((z + z2) * z).coeffs() == (F(0), F(0), F(1), F(1), F(0))
    # (z - z^3)(z + z^3) = z^2 at order 4: z^6 truncated, z^4 coefficient 0
    a = TruncSeries(4, (0, 1, 0, -1))
    b = TruncSeries(4, (0, 1, 0, 1))
    assert (a * b).coeffs() == (F(0), F(0), F(1), F(0), F(0))


def test_reciprocal_examples():
    one_plus_z = TruncSeries(5, (1, 1))
    assert one_plus_z.reciprocal().coeffs() == (
        F(1), F(-1), F(1), F(-1), F(1), F(-1))
    assert TruncSeries.one(4).reciprocal() == TruncSeries.one(4)
    a = TruncSeries(6, (1, 0, 1))
    assert (a * a.reciprocal()) == TruncSeries.one(6)
    with pytest.raises(NotInvertibleError):
        TruncSeries(3, (0, 1)).reciprocal()


def test_compose_examples():
    z = TruncSeries.identity(5)
    s = TruncSeries(5, (0, 2, 1, 0, 3))
    assert z.compose(s) == s
    z2 = TruncSeries(4, (0, 0, 1))
    inner = TruncSeries(4, (0, 1, 1))
    assert z2.compose(inner).coeffs() == (F(0), F(0), F(1), F(2), F(1))
    with pytest.raises(CompositionDomainError):
        z2.compose(TruncSeries(4, (1, 1)))


def test_reversion_examples():
    z = TruncSeries.identity(5)
    assert z.reversion() == z
    a = TruncSeries(5, (0, 1, 1))
    assert a.reversion().coeffs() == (F(0), F(1), F(-1), F(2), F(-5), F(14))
    assert a.compose(a.reversion()) == TruncSeries.identity(5)
    two_z = TruncSeries(3, (0, 2))
    assert two_z.reversion().coeffs() == (F(0), F(1, 2), F(0), F(0))
    with pytest.raises(NotInvertibleError):
        TruncSeries(3, (0, 0, 1)).reversion()


@settings(max_examples=40, deadline=None)
@given(series(10), series(10), series(10))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=25, deadline=None)
@given(series(8))
def test_reciprocal_inverts(a):
    shifted = TruncSeries(8, (1,) + a.coeffs()[1:])  # force c0 = 1
    assert shifted * shifted.reciprocal() == TruncSeries.one(8)


@settings(max_examples=25, deadline=None)
@given(series(8))
def test_reversion_inverts(a):
    val = TruncSeries(8, (0, 1) + a.coeffs()[2:])  # force c0 = 0, c1 = 1
    assert val.compose(val.reversion()) == TruncSeries.identity(8)
    assert val.reversion().compose(val) == TruncSeries.identity(8)


@settings(max_examples=20, deadline=None)
@given(series(8), series(8), series(8))
def test_composition_associativity(a, b, c):
    bv = TruncSeries(8, (0,) + b.coeffs()[1:])
    cv = TruncSeries(8, (0,) + c.coeffs()[1:])
    assert a.compose(bv).compose(cv) == a.compose(bv.compose(cv))


@settings(max_examples=20, deadline=None)
@given(series(6), series(6),
       st.builds(F, st.integers(min_value=-4, max_value=4),
                 st.integers(min_value=1, max_value=3)))
def test_t_specialization_commutes(a, b, q):
    """Evaluating t |-> q before or after arithmetic gives the same result."""
    t = formal_t()
    at = TruncSeries(6, [c + t * k for k, c in enumerate(a.coeffs())])
    bt = TruncSeries(6, [c - t * c for c in b.coeffs()])

    def specialize(s):
        from freeconv.coeffs import evaluate
        return TruncSeries(s.order, [evaluate(c, q) for c in s.coeffs()])

    spec_a, spec_b = specialize(at), specialize(bt)
    assert specialize(at * bt) == spec_a * spec_b
    assert specialize(at + bt) == spec_a + spec_b


def test_t_derivative():
    t = formal_t()
    s = TruncSeries(3, (t, t * t, 1 + t))
    assert s.t_derivative() == TruncSeries(3, (1, 2 * t, 1))


# -- Laurent expansions at infinity -------------------------------------------


def test_laurent_construction_rejects_high_top():
    with pytest.raises(ValueError):
        LaurentAtInfinity(F(2), 0, ())


def test_laurent_derivative():
    f = LaurentAtInfinity(1, 0, (-1,), 3)  # z - 1/z
    df = f.derivative()
    assert df.top == 0 and df.coeff(0) == 1
    assert df.coeff(2) == 1 and df.coeff(1) == 0 and df.coeff(3) == 0
    const = LaurentAtInfinity(0, F(5), (), 3)
    assert const.derivative().is_zero()


def test_laurent_t_derivative():
    t = formal_t()
    f = LaurentAtInfinity(0, t * t, (t, 1), 3)
    df = f.t_derivative()
    assert df.coeff(0) == 2 * t and df.coeff(1) == 1 and df.coeff(2) == 0


def test_laurent_compose_examples():
    # outer = 1/z composed with F_{delta_0} = z gives back 1/z
    outer = LaurentAtInfinity(0, 0, (1,), 4)
    inner = LaurentAtInfinity.ident_z(4)
    assert outer.compose_descending(inner) == outer
    # constant outer stays constant
    const = LaurentAtInfinity(0, F(7), (), 4)
    assert const.compose_descending(inner).coeff(0) == 7
    with pytest.raises(CompositionDomainError):
        inner.compose_descending(inner)


def test_laurent_mul_rejects_double_top():
    f = LaurentAtInfinity.ident_z(4)
    with pytest.raises(ValueError):
        f * f


def test_laurent_monic_reciprocal():
    # 1/(z - 1/z) = 1/z + 1/z^3 + 1/z^5 + ...
    f = LaurentAtInfinity(1, 0, (-1,), 4)
    g = f.reciprocal_of_monic()
    assert [g.coeff(k) for k in range(1, 6)] == [F(1), F(0), F(1), F(0), F(1)]
    assert (f * g).coeff(0) == 1
    assert all((f * g).coeff(k) == 0 for k in range(1, (f * g).tail_order + 1))
