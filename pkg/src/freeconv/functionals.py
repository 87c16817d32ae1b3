"""Moment-truncated unital linear functionals and Jacobi parameters.

A :class:`MomentFunctional` is the sequence m_1..m_N of a unital linear
functional on polynomials (m_0 = 1 implicit); positivity is never assumed.
:class:`JacobiParams` holds the rows (beta_0..; gamma_0..) of the continued
fraction of the Cauchy transform, with optional early termination
(gamma_k = 0) and an optional repeating tail for the eventually-constant
families.
"""

from __future__ import annotations

from .coeffs import ZERO, ONE, as_coeff, exact_div, is_zero


class JacobiDepthError(ValueError):
    """Not enough Jacobi levels (or moment order) for the request."""


class NoJacobiRepresentationError(ArithmeticError):
    """gamma_j = 0 mid-sequence but deeper moments are inconsistent."""


class ZeroVarianceError(ArithmeticError):
    """Operation requires nonzero variance."""


class MomentFunctional:
    __slots__ = ("order", "_m")

    def __init__(self, order, moments):
        if order < 1:
            raise ValueError("order must be >= 1")
        ms = [as_coeff(m) for m in moments]
        if len(ms) > order:
            ms = ms[:order]
        ms += [ZERO] * (order - len(ms))
        self.order = order
        self._m = tuple(ms)

    @classmethod
    def point_mass_zero(cls, order):
        return cls(order, ())

    def m(self, k):
        """The k-th moment; m(0) = 1."""
        if k == 0:
            return ONE
        if 1 <= k <= self.order:
            return self._m[k - 1]
        raise IndexError(f"moment m_{k} beyond order {self.order}")

    def moments(self):
        return self._m

    def truncate(self, order):
        if order >= self.order:
            return self
        return MomentFunctional(order, self._m[:order])

    def mean_var(self):
        if self.order < 2:
            raise ValueError("need order >= 2 for mean and variance")
        return self._m[0], self._m[1] - self._m[0] * self._m[0]

    def agrees_with(self, other, order=None):
        """Exact coefficientwise equality through the given (or min) order."""
        n = min(self.order, other.order)
        if order is not None:
            if order > n:
                raise ValueError(f"cannot compare to order {order}: have {n}")
            n = order
        return all(self.m(k) == other.m(k) for k in range(1, n + 1))

    def __eq__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        return self.agrees_with(other)

    def __hash__(self):
        return hash((self.order, self._m))

    def __repr__(self):
        return f"<MomentFunctional order={self.order}: {list(self._m)}>"


class TwoStatePair:
    """A pair (tilde, base) sharing one truncation order."""

    __slots__ = ("tilde", "base")

    def __init__(self, tilde, base):
        n = min(tilde.order, base.order)
        self.tilde = tilde.truncate(n)
        self.base = base.truncate(n)

    @property
    def order(self):
        return self.tilde.order

    def __eq__(self, other):
        if not isinstance(other, TwoStatePair):
            return NotImplemented
        return self.tilde == other.tilde and self.base == other.base

    def __repr__(self):
        return f"<TwoStatePair tilde={self.tilde!r} base={self.base!r}>"


class CanonicalTriple:
    """(beta, gamma, rho); rho is absent exactly when gamma = 0."""

    __slots__ = ("beta", "gamma", "rho")

    def __init__(self, beta, gamma, rho=None):
        self.beta = as_coeff(beta)
        self.gamma = as_coeff(gamma)
        if is_zero(self.gamma):
            if rho is not None:
                raise ValueError("rho must be absent when gamma = 0")
            self.rho = None
        else:
            if rho is None:
                raise ValueError("rho required when gamma != 0")
            self.rho = rho

    def __repr__(self):
        return f"<CanonicalTriple beta={self.beta} gamma={self.gamma} rho={self.rho!r}>"


class JacobiParams:
    __slots__ = ("betas", "gammas", "terminated", "repeat")

    def __init__(self, betas, gammas, terminated=False, repeat=None):
        betas = tuple(as_coeff(b) for b in betas)
        gammas = tuple(as_coeff(g) for g in gammas)
        if len(betas) != len(gammas):
            raise ValueError("beta and gamma rows must have equal length")
        if terminated:
            if repeat is not None:
                raise ValueError("terminated parameters take no repeating tail")
            if not gammas or not is_zero(gammas[-1]):
                raise ValueError("termination requires a final gamma = 0")
        if repeat is not None:
            repeat = (as_coeff(repeat[0]), as_coeff(repeat[1]))
        self.betas = betas
        self.gammas = gammas
        self.terminated = terminated
        self.repeat = repeat

    def depth(self):
        return len(self.betas)

    def level(self, j):
        """(beta_j, gamma_j), extending by the repeating tail if present."""
        if j < len(self.betas):
            return self.betas[j], self.gammas[j]
        if self.repeat is not None:
            return self.repeat
        if self.terminated:
            raise JacobiDepthError(
                f"continued fraction terminates at level {len(self.betas) - 1}")
        raise JacobiDepthError(f"Jacobi level {j} not available")

    def levels(self, n):
        return [self.level(j) for j in range(n)]

    def __eq__(self, other):
        if not isinstance(other, JacobiParams):
            return NotImplemented
        if self.terminated != other.terminated:
            return False
        if self.terminated:
            return self.betas == other.betas and self.gammas == other.gammas
        n = max(self.depth(), other.depth())
        try:
            return self.levels(n) == other.levels(n)
        except JacobiDepthError:
            return (self.betas == other.betas and self.gammas == other.gammas
                    and self.repeat == other.repeat)

    def __repr__(self):
        tail = ""
        if self.repeat is not None:
            tail = f" repeat=({self.repeat[0]}, {self.repeat[1]})"
        if self.terminated:
            tail = " terminated"
        return (f"<JacobiParams betas={list(self.betas)} "
                f"gammas={list(self.gammas)}{tail}>")


def moments_from_jacobi(j, order):
    """Expand the continued fraction to exact moments m_1..m_order.

    Computed as weighted Motzkin paths (equivalently <e_0, J^n e_0> for the
    tridiagonal matrix): up-steps weight 1, flat at level i weight beta_i,
    down onto level i weight gamma_i.  Division-free, so it works verbatim
    over Q[t].
    """
    levels_needed = (order + 1) // 2
    if j.terminated:
        levels_needed = min(levels_needed, j.depth())
    rows = j.levels(levels_needed) if levels_needed else []
    betas = [r[0] for r in rows]
    gammas = [r[1] for r in rows]
    size = levels_needed + 1
    v = [ONE] + [ZERO] * (levels_needed)
    out = []
    for _ in range(order):
        nv = [ZERO] * size
        for i in range(size):
            c = v[i]
            if is_zero(c):
                continue
            if i < levels_needed:
                nv[i + 1] = nv[i + 1] + c  # up-step out of level i
            if i < len(betas):
                nv[i] = nv[i] + c * betas[i]  # flat step
            if i > 0:
                nv[i - 1] = nv[i - 1] + c * gammas[i - 1]  # down-step
        v = nv
        out.append(v[0])
    return MomentFunctional(order, out)


def _strip_once(mf, beta, gamma):
    """Moments of the once-stripped functional, via (eta - beta*w)/(gamma*w^2).

    The eta coefficients are computed with the division-free recursion
    eta_n = m_n - sum_{j<n} eta_j m_{n-j}; only the final division by gamma
    must be exact (it always is over Q; over Q[t] it validates that the
    functional really strips within the polynomial ring).
    """
    n = mf.order
    eta = [ZERO] * (n + 1)
    for k in range(1, n + 1):
        s = mf.m(k)
        for j in range(1, k):
            s = s - eta[j] * mf.m(k - j)
        eta[k] = s
    # eta_1 = m_1 = beta cancels; eta_2 / gamma = 1 restores unitality
    out = [exact_div(eta[k], gamma) for k in range(2, n + 1)]
    if not (out[0] == 1):
        raise AssertionError("stripped series must be unital")
    return MomentFunctional(n - 2, out[1:])


def jacobi_from_moments(mf, levels):
    """Extract (beta_j, gamma_j) rows by successive coefficient stripping.

    ``levels`` is the number of rows requested; requires order >= 2*levels.
    Terminates early (with ``terminated=True``) when some gamma_j = 0 and the
    remaining moments are consistent with the closed fraction; otherwise a
    gamma_j = 0 raises NoJacobiRepresentationError.
    """
    if mf.order < 2 * levels:
        raise JacobiDepthError(
            f"order {mf.order} supports at most {mf.order // 2} levels")
    betas, gammas = [], []
    work = mf
    for j in range(levels):
        b, g = work.mean_var()
        betas.append(b)
        gammas.append(g)
        if is_zero(g):
            candidate = JacobiParams(betas, gammas, terminated=True)
            if moments_from_jacobi(candidate, mf.order) == mf:
                return candidate
            raise NoJacobiRepresentationError(
                "gamma = 0 but deeper moments are inconsistent with termination")
        if j + 1 < levels:
            work = _strip_once(work, b, g)
    return JacobiParams(betas, gammas)


# -- named families -----------------------------------------------------------


def free_meixner(b, c, beta, gamma, order):
    """Jacobi rows (beta, b+beta, b+beta, ...; gamma, c+gamma, c+gamma, ...)."""
    b, c = as_coeff(b), as_coeff(c)
    beta, gamma = as_coeff(beta), as_coeff(gamma)
    j = JacobiParams((beta,), (gamma,), repeat=(b + beta, c + gamma))
    return moments_from_jacobi(j, order)


def semicircular(beta, gamma, order):
    return free_meixner(0, 0, beta, gamma, order)


def point_mass(beta, order):
    j = JacobiParams((as_coeff(beta),), (ZERO,), terminated=True)
    return moments_from_jacobi(j, order)


def bernoulli_sym(order):
    """Two atoms at +-1 with weight 1/2 each."""
    return free_meixner(0, -1, 0, 1, order)


def arcsine(gamma, order):
    return free_meixner(0, -as_coeff(gamma), 0, 2 * as_coeff(gamma), order)


def free_poisson(b, beta, gamma, order):
    return free_meixner(b, 0, beta, gamma, order)


FAMILIES = {
    "free_meixner": (free_meixner, ("b", "c", "beta", "gamma")),
    "semicircular": (semicircular, ("beta", "gamma")),
    "point_mass": (point_mass, ("beta",)),
    "bernoulli_sym": (bernoulli_sym, ()),
    "arcsine": (arcsine, ("gamma",)),
    "free_poisson": (free_poisson, ("b", "beta", "gamma")),
}


def family(name, params, order):
    """Construct a named distribution family from a parameter mapping."""
    try:
        fn, argnames = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None
    missing = [a for a in argnames if a not in params]
    if missing:
        raise ValueError(f"family {name!r} needs parameters {missing}")
    extra = [k for k in params if k not in argnames]
    if extra:
        raise ValueError(f"family {name!r} got unknown parameters {extra}")
    args = [params[a] for a in argnames]
    return fn(*args, order)
