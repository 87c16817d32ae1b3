"""Exact coefficient arithmetic: rationals and polynomials in one formal parameter.

Two coefficient rings are supported throughout the package:

* plain ``fractions.Fraction`` for Q, and
* :class:`TPoly` for Q[t], polynomials in a formal parameter (named ``t``
  by default) with Fraction coefficients.

Fractions promote into the polynomial ring automatically; polynomials with
distinct parameter names do not mix (``RingMismatchError``).

A ``TPoly`` may carry a truncation *cap*: ``cap=None`` means the value is an
exact polynomial, ``cap=k`` means coefficients of degree <= k are exact and
higher degrees are unknown.  Caps only enter through :meth:`TPoly.reciprocal`
of a non-constant polynomial (e.g. 1/(1+t)); every moment of the semigroup
objects handled here has t-degree bounded by its index, so a generous cap
keeps all identity checks exact polynomial comparisons.
"""

from __future__ import annotations

from fractions import Fraction


class RingMismatchError(TypeError):
    """Operands live in incompatible coefficient rings."""


class ExactDivisionError(ArithmeticError):
    """Division in Q[t] did not come out exact."""


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TPoly:
    """Polynomial in one formal parameter over Q, optionally truncated."""

    __slots__ = ("coeffs", "var", "cap")

    def __init__(self, coeffs=(), var="t", cap=None):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if cap is not None:
            cs = cs[: cap + 1]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self.cap = cap

    @classmethod
    def constant(cls, value, var="t"):
        return cls((Fraction(value),), var=var)

    @classmethod
    def gen(cls, var="t"):
        """The parameter itself."""
        return cls((0, 1), var=var)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.constant_term()

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        """Return other as a TPoly in the same variable, or None."""
        if isinstance(other, TPoly):
            if other.var == self.var or other.is_constant():
                return TPoly(other.coeffs, var=self.var, cap=other.cap)
            if self.is_constant():
                return None  # handled by caller: switch to other's ring
            raise RingMismatchError(
                f"cannot mix Q[{self.var}] and Q[{other.var}]")
        if isinstance(other, (int, Fraction)):
            return TPoly((Fraction(other),), var=self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, TPoly):  # self constant, other's ring wins
                return other + self.constant_term()
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return TPoly(
            [self.coeff(k) + o.coeff(k) for k in range(n)],
            var=self.var, cap=_min_cap(self.cap, o.cap))

    __radd__ = __add__

    def __neg__(self):
        return TPoly([-c for c in self.coeffs], var=self.var, cap=self.cap)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, TPoly):
                return other * self.constant_term()
            return NotImplemented
        cap = _min_cap(self.cap, o.cap)
        n = len(self.coeffs) + len(o.coeffs) - 1
        if n <= 0:
            return TPoly((), var=self.var, cap=cap)
        if cap is not None:
            n = min(n, cap + 1)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if i + j < n:
                    out[i + j] += a * b
        return TPoly(out, var=self.var, cap=cap)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = TPoly.constant(1, var=self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def valuation(self):
        """Index of the lowest nonzero coefficient (-1 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return -1

    def __truediv__(self, other):
        """Exact division; raises ExactDivisionError if not exact in Q[t]."""
        o = self._coerce(other)
        if o is None:
            if isinstance(other, TPoly):
                return TPoly.constant(self.constant_term(), var=other.var) / other
            return NotImplemented
        if not o.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if o.is_constant():
            c = o.constant_term()
            return TPoly([a / c for a in self.coeffs], var=self.var,
                         cap=_min_cap(self.cap, o.cap))
        if not self.coeffs:
            return TPoly((), var=self.var, cap=_min_cap(self.cap, o.cap))
        cap = _min_cap(self.cap, o.cap)
        if cap is None:
            return self._exact_long_division(o)
        return self._truncated_division(o, cap)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TPoly.constant(other, var=self.var) / self
        return NotImplemented

    def _exact_long_division(self, o):
        rem = list(self.coeffs)
        dn, dd = len(o.coeffs) - 1, o.coeffs[-1]
        if len(rem) - 1 < dn:
            raise ExactDivisionError(f"({self}) not divisible by ({o})")
        q = [Fraction(0)] * (len(rem) - dn)
        for k in range(len(rem) - 1, dn - 1, -1):
            c = rem[k] / dd
            q[k - dn] = c
            if c != 0:
                for j, b in enumerate(o.coeffs):
                    rem[k - dn + j] -= c * b
        if any(c != 0 for c in rem):
            raise ExactDivisionError(f"({self}) not divisible by ({o})")
        return TPoly(q, var=self.var)

    def _truncated_division(self, o, cap):
        v = o.valuation()
        if self.valuation() < v:
            raise ExactDivisionError(f"({self}) not divisible by ({o})")
        num = self.coeffs[v:]
        den = o.coeffs[v:]
        out_cap = cap - v
        inv = _series_inverse(den, out_cap)
        out = _series_mul(num, inv, out_cap)
        return TPoly(out, var=self.var, cap=out_cap)

    def reciprocal(self, cap=None):
        """Multiplicative inverse.

        Exact for nonzero constants; for non-constant polynomials the inverse
        is a power series in the parameter, so a truncation cap is required
        (explicit, or inherited from self).
        """
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no reciprocal")
        if self.is_constant():
            return TPoly((1 / self.constant_term(),), var=self.var, cap=self.cap)
        if self.constant_term() == 0:
            raise ZeroDivisionError("constant term is zero; not invertible")
        cap = _min_cap(cap, self.cap)
        if cap is None:
            raise ExactDivisionError(
                "inverse of a non-constant polynomial needs a truncation cap")
        return TPoly(_series_inverse(self.coeffs, cap), var=self.var, cap=cap)

    def t_derivative(self):
        return TPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:],
            var=self.var,
            cap=None if self.cap is None else max(self.cap - 1, 0))

    def evaluate(self, value):
        """Specialize the parameter to a rational value."""
        value = Fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TPoly((Fraction(other),), var=self.var)
        if not isinstance(other, TPoly):
            return NotImplemented
        if (self.var != other.var
                and not (self.is_constant() or other.is_constant())):
            return False
        cap = _min_cap(self.cap, other.cap)
        if cap is None:
            return self.coeffs == other.coeffs
        return all(self.coeff(k) == other.coeff(k) for k in range(cap + 1))

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{self.var}" if c != 1 else self.var)
            else:
                parts.append(f"{c}*{self.var}^{k}" if c != 1 else f"{self.var}^{k}")
        s = " + ".join(parts).replace("+ -", "- ")
        if self.cap is not None:
            s += f" (+O({self.var}^{self.cap + 1}))"
        return s


def _series_inverse(cs, cap):
    """Inverse of a coefficient list with cs[0] != 0, through degree cap."""
    inv0 = 1 / cs[0]
    out = [inv0]
    for k in range(1, cap + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(cs) - 1) + 1):
            s += cs[j] * out[k - j]
        out.append(-inv0 * s)
    return out


def _series_mul(a, b, cap):
    out = [Fraction(0)] * (cap + 1)
    for i, x in enumerate(a):
        if i > cap or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > cap:
                break
            out[i + j] += x * y
    return out


# -- ring-generic helpers used by the series layer ---------------------------

ZERO = Fraction(0)
ONE = Fraction(1)


def as_coeff(x):
    if isinstance(x, (Fraction, TPoly)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a coefficient: {x!r}")


def is_zero(c):
    return c == 0


def t_derivative(c):
    """d/dt on a coefficient; rationals are constants."""
    if isinstance(c, TPoly):
        return c.t_derivative()
    return ZERO


def exact_div(a, b):
    """a / b in the coefficient ring; exact or raises."""
    if isinstance(a, TPoly) or isinstance(b, TPoly):
        if not isinstance(a, TPoly):
            a = TPoly.constant(a, var=b.var)
        return a / b
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(a) / Fraction(b)


def reciprocal(c, cap=None):
    if isinstance(c, TPoly):
        return c.reciprocal(cap=cap)
    if c == 0:
        raise ZeroDivisionError("division by zero")
    return ONE / Fraction(c)


def evaluate(c, value):
    """Specialize a coefficient at a rational parameter value."""
    if isinstance(c, TPoly):
        return c.evaluate(value)
    return Fraction(c)


def formal_t(var="t"):
    return TPoly.gen(var=var)
