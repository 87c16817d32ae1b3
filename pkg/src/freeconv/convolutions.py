"""The four convolutions and their (fractional or formal-t) powers.

Free convolution adds free cumulants, Boolean convolution adds eta
coefficients, monotone convolution composes F-transforms, and two-state free
convolution adds two-state R-transforms on pairs.  In the algebraic setting
every power t is defined, including a formal parameter.
"""

from __future__ import annotations

from .coeffs import as_coeff
from .functionals import TwoStatePair
from .series import LaurentAtInfinity
from .transforms import (
    eta_from_moments,
    f_at_infinity,
    functional_from_f,
    moments_from_eta,
    moments_from_r,
    r_from_moments,
    tilde_from_two_state_r,
    two_state_r,
)


def free_convolve(a, b):
    return moments_from_r(r_from_moments(a) + r_from_moments(b),
                          min(a.order, b.order))


def free_power(a, t):
    t = as_coeff(t)
    return moments_from_r(r_from_moments(a).scale(t), a.order)


def free_deconvolve(a, b):
    """The functional c with c boxplus b = a."""
    return moments_from_r(r_from_moments(a) - r_from_moments(b),
                          min(a.order, b.order))


def boolean_convolve(a, b):
    return moments_from_eta(eta_from_moments(a) + eta_from_moments(b),
                            min(a.order, b.order))


def boolean_power(a, t):
    t = as_coeff(t)
    return moments_from_eta(eta_from_moments(a).scale(t), a.order)


def monotone_convolve(a, b):
    """F-composition F_{a |> b} = F_a o F_b (the definition; normative path)."""
    n = min(a.order, b.order)
    fa = f_at_infinity(a.truncate(n))
    fb = f_at_infinity(b.truncate(n))
    # F_a(F_b) = F_b + (F_a - z)(F_b); the second factor is descending.
    desc = fa - LaurentAtInfinity.ident_z(fa.tail_order)
    composed = fb + desc.compose_descending(fb)
    return functional_from_f(composed)


def two_state_convolve(p, q):
    """(rho, mu boxplus nu) with the two-state R-transforms adding."""
    n = min(p.order, q.order)
    p = TwoStatePair(p.tilde.truncate(n), p.base.truncate(n))
    q = TwoStatePair(q.tilde.truncate(n), q.base.truncate(n))
    base = free_convolve(p.base, q.base)
    r2 = two_state_r(p) + two_state_r(q)
    return TwoStatePair(tilde_from_two_state_r(r2, base), base)


def two_state_power(p, t):
    t = as_coeff(t)
    base = free_power(p.base, t)
    r2 = two_state_r(p).scale(t)
    return TwoStatePair(tilde_from_two_state_r(r2, base), base)
