"""The transform dictionary: M, eta, R, F, phi and the two-state R-transform.

The primary computation path is combinatorial: triangular solves of

    R(z(1 + M(z))) = M(z)                    (moments <-> free cumulants)
    eta = M - eta*M                           (moments <-> Boolean cumulants)
    eta_tilde = R2(z(1 + M)) * (1 + M)^{-1}   (two-state R-transform)

working with the coefficient table p[k][j] = [z^j](1+M)^k, so that
[z^n] (z(1+M))^k = p[k][n-k].  A second, reversion-based path through the
Laurent expansions at infinity (F^{<-1>}(z) - z) is provided purely as a
cross-check; the two paths share no code.
"""

from __future__ import annotations

from .coeffs import ZERO, ONE, is_zero
from .functionals import MomentFunctional
from .series import LaurentAtInfinity, TruncSeries


def m_series(mf):
    """The moment generating series M(z) = sum m_n z^n (zero constant term)."""
    return TruncSeries(mf.order, (ZERO,) + mf.moments())


def _power_table(m, order):
    """p[k][j] = [z^j](1+M)^k for 0 <= k, j <= order, with m[i] = m_i (m[0]=1)."""
    p = [[ONE] + [ZERO] * order]
    for k in range(1, order + 1):
        prev = p[-1]
        row = [ZERO] * (order + 1)
        for j in range(order + 1 - k):
            s = prev[j]
            for i in range(1, j + 1):
                if not is_zero(m[i]):
                    s = s + m[i] * prev[j - i]
            row[j] = s
        p.append(row)
    return p


def _moment_table(mf):
    return [ONE] + list(mf.moments())


def r_from_moments(mf):
    """Free cumulants kappa_1..kappa_N as the coefficients of R(z)."""
    n = mf.order
    p = _power_table(_moment_table(mf), n)
    kappa = [ZERO] * (n + 1)
    for k in range(1, n + 1):
        s = mf.m(k)
        for j in range(1, k):
            s = s - kappa[j] * p[j][k - j]
        kappa[k] = s  # [z^k] W^k = 1
    return TruncSeries(n, kappa)


def moments_from_r(r, order):
    """Solve R(z(1+M)) = M forward for the moments."""
    if order > r.order:
        raise ValueError(f"cumulants known to order {r.order} < {order}")
    m = [ONE] + [ZERO] * order
    # p[k][j] filled along anti-diagonals: stage n computes p[k][n-k]
    p = [[ONE] + [ZERO] * order]
    for n in range(1, order + 1):
        p.append([ZERO] * (order + 1))
        p[n][0] = ONE
        for k in range(1, n + 1):
            j = n - k
            prev = p[k - 1]
            s = prev[j]
            for i in range(1, j + 1):
                if not is_zero(m[i]):
                    s = s + m[i] * prev[j - i]
            p[k][j] = s
        t = ZERO
        for k in range(1, n + 1):
            c = r.coeff(k)
            if not is_zero(c):
                t = t + c * p[k][n - k]
        m[n] = t
    return MomentFunctional(order, m[1:])


def eta_from_moments(mf):
    """Boolean cumulant series eta = M(1+M)^{-1}, via eta_n = m_n - sum eta_j m_{n-j}."""
    n = mf.order
    eta = [ZERO] * (n + 1)
    for k in range(1, n + 1):
        s = mf.m(k)
        for j in range(1, k):
            s = s - eta[j] * mf.m(k - j)
        eta[k] = s
    return TruncSeries(n, eta)


def moments_from_eta(eta, order):
    """Solve M = eta + eta*M forward for the moments."""
    if order > eta.order:
        raise ValueError(f"eta known to order {eta.order} < {order}")
    m = [ZERO] * (order + 1)
    for k in range(1, order + 1):
        s = eta.coeff(k)
        for j in range(1, k):
            s = s + eta.coeff(j) * m[k - j]
        m[k] = s
    return MomentFunctional(order, m[1:])


def f_at_infinity(mf):
    """Expansion F(z) = z - eta_1 - eta_2/z - eta_3/z^2 - ...

    From the dictionary F(1/w) = (1 - eta(w))/w; the tail is exact through
    z^-(N-1).
    """
    eta = eta_from_moments(mf)
    n = mf.order
    return LaurentAtInfinity(
        ONE, -eta.coeff(1), [-eta.coeff(k + 1) for k in range(1, n)], n - 1)


def functional_from_f(f):
    """Inverse of f_at_infinity: moments of the functional with this F-expansion."""
    order = f.tail_order + 1
    eta = TruncSeries(order, [ZERO, -f.coeff(0)]
                      + [-f.coeff(k) for k in range(1, f.tail_order + 1)])
    return moments_from_eta(eta, order)


def cauchy_g(mf):
    """Expansion G(z) = 1/z + m_1/z^2 + ... + m_N/z^(N+1)."""
    return LaurentAtInfinity(ZERO, ZERO, (ONE,) + mf.moments(), mf.order + 1)


def voiculescu_phi(mf):
    """phi(z) = kappa_1 + kappa_2/z + kappa_3/z^2 + ... (from R(z) = z*phi(1/z))."""
    return phi_from_r_series(r_from_moments(mf))


def phi_from_r_series(r):
    """Descending expansion with [z^-(n-1)] = kappa_n."""
    n = r.order
    return LaurentAtInfinity(
        ZERO, r.coeff(1), [r.coeff(k + 1) for k in range(1, n)], n - 1)


def r_series_from_phi(phi):
    """Convert a descending phi-expansion back to the R-series."""
    order = phi.tail_order + 1
    return TruncSeries(order, [ZERO, phi.coeff(0)]
                       + [phi.coeff(k) for k in range(1, phi.tail_order + 1)])


def f_inverse_at_infinity(mf):
    """The compositional inverse F^{<-1>}(z) = z + d_0 + d_1/z + ...

    Computed through series reversion in the w = 1/z chart: with
    f(w) = w/(1 - eta(w)) = 1/F(1/w), the compositional inverse of F
    corresponds to the reversion h of f, and F^{<-1>}(z) = 1/h(1/z).
    """
    eta = eta_from_moments(mf)
    n = mf.order
    one_minus = TruncSeries.one(n) - eta
    f = one_minus.reciprocal().shift_up(1)
    h = f.reversion()
    g = h.shift_down(1).reciprocal()  # h(w) = w/g(w)
    return LaurentAtInfinity(ONE, g.coeff(1),
                             [g.coeff(k) for k in range(2, n + 1)], n - 1)


def voiculescu_phi_by_reversion(mf):
    """phi = F^{<-1>}(z) - z; redundant cross-check for voiculescu_phi."""
    h = f_inverse_at_infinity(mf)
    return h - LaurentAtInfinity.ident_z(h.tail_order)


def two_state_r(pair):
    """Solve eta^tilde = R2(z(1+M)) (1+M)^{-1} for the two-state R-transform."""
    n = pair.order
    rhs = eta_from_moments(pair.tilde) * (
        TruncSeries.one(n) + m_series(pair.base))
    p = _power_table(_moment_table(pair.base), n)
    kappa = [ZERO] * (n + 1)
    for k in range(1, n + 1):
        s = rhs.coeff(k)
        for j in range(1, k):
            s = s - kappa[j] * p[j][k - j]
        kappa[k] = s
    return TruncSeries(n, kappa)


def tilde_from_two_state_r(r2, base):
    """The functional mu_tilde with two_state_r((mu_tilde, base)) = r2."""
    n = min(base.order, r2.order)
    base = base.truncate(n)
    p = _power_table(_moment_table(base), n)
    rhs = [ZERO] * (n + 1)  # R2(W) = eta_tilde * (1+M), coefficientwise
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            c = r2.coeff(j)
            if not is_zero(c):
                s = s + c * p[j][k - j]
        rhs[k] = s
    eta = [ZERO] * (n + 1)  # divide by (1+M): eta_n = rhs_n - sum eta_j m_{n-j}
    for k in range(1, n + 1):
        s = rhs[k]
        for j in range(1, k):
            s = s - eta[j] * base.m(k - j)
        eta[k] = s
    return moments_from_eta(TruncSeries(n, eta), n)


def two_state_phi_by_reversion(pair):
    """phi_{tilde,base}(z) = (z - F_tilde) o F_base^{<-1>}; cross-check path."""
    h = f_inverse_at_infinity(pair.base)
    d = LaurentAtInfinity.ident_z(pair.order - 1) - f_at_infinity(pair.tilde)
    return d.compose_descending(h)


def two_state_r_by_reversion(pair):
    return r_series_from_phi(two_state_phi_by_reversion(pair))
