"""Truncated formal power series and Laurent expansions at infinity.

:class:`TruncSeries` is an ordinary truncated power series
c_0 + c_1 z + ... + c_N z^N, exact through z^N.  :class:`LaurentAtInfinity`
is top*z + c_0 + c_1/z + ... + c_K/z^K with top restricted to 0 or 1 (every
F-transform expansion used here has the form z - beta - gamma/z - ...).

All values are immutable; operations return fresh objects and propagate the
guaranteed-exact order as the minimum of the inputs' orders.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import ZERO, ONE, as_coeff, is_zero, reciprocal, t_derivative


class NotInvertibleError(ArithmeticError):
    """Series has no multiplicative inverse (zero constant term)."""


class CompositionDomainError(ValueError):
    """Inner series outside the domain of formal composition."""


class TruncSeries:
    __slots__ = ("order", "_c")

    def __init__(self, order, coeffs):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [as_coeff(c) for c in coeffs]
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.order = order
        self._c = tuple(cs)

    @classmethod
    def zero(cls, order):
        return cls(order, ())

    @classmethod
    def one(cls, order):
        return cls(order, (ONE,))

    @classmethod
    def identity(cls, order):
        """The series z."""
        return cls(order, (ZERO, ONE))

    def coeff(self, k):
        return self._c[k] if 0 <= k <= self.order else ZERO

    def coeffs(self):
        return self._c

    def is_zero(self):
        return all(is_zero(c) for c in self._c)

    def valuation(self):
        for k, c in enumerate(self._c):
            if not is_zero(c):
                return k
        return self.order + 1

    def truncate(self, order):
        if order >= self.order:
            return self
        return TruncSeries(order, self._c[: order + 1])

    def __add__(self, other):
        other = self._promote(other)
        n = min(self.order, other.order)
        return TruncSeries(n, [self._c[k] + other._c[k] for k in range(n + 1)])

    def __sub__(self, other):
        other = self._promote(other)
        n = min(self.order, other.order)
        return TruncSeries(n, [self._c[k] - other._c[k] for k in range(n + 1)])

    def __neg__(self):
        return TruncSeries(self.order, [-c for c in self._c])

    def __mul__(self, other):
        other = self._promote(other)
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self._c[i]
            if is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other._c[j]
                if not is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(n, out)

    def _promote(self, other):
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries(self.order, (as_coeff(other),))

    def scale(self, c):
        c = as_coeff(c)
        return TruncSeries(self.order, [c * x for x in self._c])

    def shift_up(self, k):
        """Multiply by z^k (raises the exact order by k)."""
        return TruncSeries(self.order + k, [ZERO] * k + list(self._c))

    def shift_down(self, k):
        """Divide by z^k; the low-order coefficients must vanish."""
        if any(not is_zero(c) for c in self._c[:k]):
            raise ValueError(f"series not divisible by z^{k}")
        return TruncSeries(self.order - k, self._c[k:])

    def reciprocal(self):
        if is_zero(self._c[0]):
            raise NotInvertibleError("constant term is zero")
        inv0 = reciprocal(self._c[0])
        out = [inv0]
        for k in range(1, self.order + 1):
            s = ZERO
            for j in range(1, k + 1):
                s = s + self._c[j] * out[k - j]
            out.append(-inv0 * s)
        return TruncSeries(self.order, out)

    def compose(self, inner):
        """self(inner(z)); inner must have zero constant term."""
        if not isinstance(inner, TruncSeries):
            raise TypeError("inner must be a TruncSeries")
        if not is_zero(inner.coeff(0)):
            raise CompositionDomainError("inner constant term must vanish")
        n = min(self.order, inner.order)
        # Horner evaluation from the top coefficient down.
        acc = TruncSeries(n, (self.coeff(n),))
        for k in range(n - 1, -1, -1):
            acc = acc * inner + TruncSeries(n, (self.coeff(k),))
        return acc

    def reversion(self):
        """Compositional inverse; requires c_0 = 0 and c_1 invertible."""
        if not is_zero(self._c[0]):
            raise CompositionDomainError("reversion needs zero constant term")
        if is_zero(self.coeff(1)):
            raise NotInvertibleError("linear coefficient is zero")
        n = self.order
        inv1 = reciprocal(self.coeff(1))
        out = [ZERO, inv1] + [ZERO] * (n - 1)
        for k in range(2, n + 1):
            partial = TruncSeries(k, out[: k + 1])
            val = self.truncate(k).compose(partial).coeff(k)
            out[k] = -inv1 * val
        return TruncSeries(n, out)

    def t_derivative(self):
        return TruncSeries(self.order, [t_derivative(c) for c in self._c])

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self._c[k] == other._c[k] for k in range(n + 1))

    def __hash__(self):
        return hash((self.order, self._c))

    def __repr__(self):
        parts = []
        for k, c in enumerate(self._c):
            if not is_zero(c):
                parts.append(f"({c})" + ("" if k == 0 else f"*z^{k}"))
        body = " + ".join(parts) if parts else "0"
        return f"<TruncSeries order={self.order}: {body}>"


class LaurentAtInfinity:
    """top*z + c_0 + c_1/z + ... + c_K/z^K, exact through z^-K."""

    __slots__ = ("tail_order", "top", "_c")

    def __init__(self, top, constant, tail, tail_order=None):
        top = as_coeff(top)
        if not (top == 0 or top == 1):
            raise ValueError("coefficient of z must be 0 or 1")
        tail = [as_coeff(c) for c in tail]
        if tail_order is None:
            tail_order = len(tail)
        if len(tail) > tail_order:
            tail = tail[:tail_order]
        tail += [ZERO] * (tail_order - len(tail))
        self.top = top
        self.tail_order = tail_order
        self._c = (as_coeff(constant),) + tuple(tail)

    @classmethod
    def zero(cls, tail_order):
        return cls(ZERO, ZERO, (), tail_order)

    @classmethod
    def ident_z(cls, tail_order):
        """The expansion z."""
        return cls(ONE, ZERO, (), tail_order)

    def coeff(self, k):
        """Coefficient of z^(-k); k = -1 gives the z coefficient."""
        if k == -1:
            return self.top
        return self._c[k] if 0 <= k <= self.tail_order else ZERO

    def is_descending(self):
        return is_zero(self.top)

    def is_zero(self):
        return is_zero(self.top) and all(is_zero(c) for c in self._c)

    def truncate(self, tail_order):
        if tail_order >= self.tail_order:
            return self
        return LaurentAtInfinity(self.top, self._c[0],
                                 self._c[1: tail_order + 1], tail_order)

    def _effective_degree(self):
        """Largest z-degree carrying a nonzero known coefficient."""
        if not is_zero(self.top):
            return 1
        for k, c in enumerate(self._c):
            if not is_zero(c):
                return -k
        return -(self.tail_order + 1)

    def __add__(self, other):
        other = self._promote(other)
        n = min(self.tail_order, other.tail_order)
        return LaurentAtInfinity(
            self.top + other.top,
            self._c[0] + other._c[0],
            [self._c[k] + other._c[k] for k in range(1, n + 1)], n)

    def __sub__(self, other):
        other = self._promote(other)
        n = min(self.tail_order, other.tail_order)
        return LaurentAtInfinity(
            self.top - other.top,
            self._c[0] - other._c[0],
            [self._c[k] - other._c[k] for k in range(1, n + 1)], n)

    def __neg__(self):
        return LaurentAtInfinity(-self.top, -self._c[0], [-c for c in self._c[1:]],
                                 self.tail_order)

    def _promote(self, other):
        if isinstance(other, LaurentAtInfinity):
            return other
        return LaurentAtInfinity(ZERO, as_coeff(other), (), self.tail_order)

    def scale(self, c):
        c = as_coeff(c)
        if not is_zero(self.top) and not (c == 1):
            raise ValueError("cannot scale a series with a z term")
        return LaurentAtInfinity(self.top, c * self._c[0],
                                 [c * x for x in self._c[1:]], self.tail_order)

    def __mul__(self, other):
        other = self._promote(other)
        if not is_zero(self.top) and not is_zero(other.top):
            raise ValueError("product would carry a z^2 term")
        da, db = self._effective_degree(), other._effective_degree()
        n = min(self.tail_order - db, other.tail_order - da)
        if n < 0:
            raise ValueError("operands too short to determine the product")
        # degrees run from +1 down to -n; accumulate into index = 1 - degree
        out = [ZERO] * (n + 2)
        for i in range(-1, self.tail_order + 1):
            a = self.coeff(i)
            if is_zero(a):
                continue
            for j in range(-1, other.tail_order + 1):
                b = other.coeff(j)
                if is_zero(b):
                    continue
                deg = -(i + j)  # z-degree of the product term
                if deg > 1 or deg < -n:
                    continue
                idx = 1 - deg
                out[idx] = out[idx] + a * b
        return LaurentAtInfinity(out[0], out[1], out[2:], n)

    def derivative(self):
        """d/dz, term by term: c_k/z^k -> -k*c_k/z^(k+1)."""
        n = self.tail_order
        tail = [ZERO] * (n + 2)
        for k in range(1, n + 1):
            tail[k + 1] = self._c[k] * Fraction(-k)
        return LaurentAtInfinity(ZERO, self.top, tail[1:], n + 1)

    def t_derivative(self):
        return LaurentAtInfinity(
            t_derivative(self.top), t_derivative(self._c[0]),
            [t_derivative(c) for c in self._c[1:]], self.tail_order)

    def reciprocal_of_monic(self):
        """1/self for top = 1: a descending series with zero constant term."""
        if is_zero(self.top) or not (self.top == 1):
            raise NotInvertibleError("only z - c0 - c1/z - ... is inverted here")
        # 1/(z + c0 + c1/z + ...) = (1/z) * 1/(1 + u), u = (c0 + c1/z + ...)/z
        n = self.tail_order
        u = [ZERO] + [self._c[k] for k in range(0, n + 1)]  # u_k at z^-k, k>=1
        inv = [ONE] + [ZERO] * (n + 1)  # series in 1/z for 1/(1+u)
        for k in range(1, n + 2):
            s = ZERO
            for j in range(1, min(k, n + 1) + 1):
                s = s + u[j] * inv[k - j]
            inv[k] = -s
        # multiply by 1/z: coefficient of z^-k in result is inv[k-1]
        return LaurentAtInfinity(ZERO, ZERO, inv[: n + 2], n + 2)

    def compose_descending(self, inner):
        """self(inner(z)) for descending self (top = 0) and monic inner (top = 1)."""
        if not self.is_descending():
            raise CompositionDomainError("outer series must have no z term")
        if is_zero(inner.top) or not (inner.top == 1):
            raise CompositionDomainError("inner series must be z - c0 - ...")
        u = inner.reciprocal_of_monic()
        n = self.tail_order
        acc = LaurentAtInfinity(ZERO, self._c[n], (), u.tail_order)
        for k in range(n - 1, -1, -1):
            acc = acc * u + LaurentAtInfinity(ZERO, self._c[k], (), u.tail_order)
        return acc.truncate(min(acc.tail_order, n))

    def __eq__(self, other):
        if not isinstance(other, LaurentAtInfinity):
            return NotImplemented
        n = min(self.tail_order, other.tail_order)
        if not (self.top == other.top and self._c[0] == other._c[0]):
            return False
        return all(self._c[k] == other._c[k] for k in range(1, n + 1))

    def __repr__(self):
        parts = []
        if not is_zero(self.top):
            parts.append("z")
        if not is_zero(self._c[0]):
            parts.append(f"({self._c[0]})")
        for k in range(1, self.tail_order + 1):
            if not is_zero(self._c[k]):
                parts.append(f"({self._c[k]})/z^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"<Laurent tail_order={self.tail_order}: {body}>"
