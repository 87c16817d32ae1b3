"""Word-indexed series over d non-commuting variables.

Functionals are maps from words over {1..d} (length <= N) to coefficients,
with the empty word at 1.  The transform equations are the same as in one
variable,

    R(z_1(1+M), ..., z_d(1+M)) = M,
    eta = (1+M)^{-1} M,
    eta~ = R2(z_i(1+M)) (1+M)^{-1},
    R^{mu |> nu} = R^mu(z_i(1+M^nu)) (1+M^nu)^{-1},

solved word by word.  Substituting z_i -> z_i(1+M) places (1+M) to the right
of each letter, following the displayed order of the defining equations; the
coefficient extraction runs over the subsets of letter positions containing
the first position, with the gaps carrying moments.

Everything reduces bit-for-bit to the single-variable modules at d = 1; the
test suite asserts this.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from .coeffs import ZERO, ONE, as_coeff, formal_t, is_zero, reciprocal
from .evolution import VerifyReport, check_eq
from .functionals import MomentFunctional
from .series import NotInvertibleError

MAX_NC_ORDER = 8


def words(d, order, include_empty=False):
    """All words over {1..d} of length 1..order (optionally also empty)."""
    if include_empty:
        yield ()
    for n in range(1, order + 1):
        yield from itertools.product(range(1, d + 1), repeat=n)


class NCFunctional:
    """Unital functional on words; stored sparsely, empty word -> 1."""

    __slots__ = ("d", "order", "_m")

    def __init__(self, d, order, moments):
        if not 1 <= order <= MAX_NC_ORDER:
            raise ValueError(f"order must be in 1..{MAX_NC_ORDER}")
        self.d = d
        self.order = order
        clean = {}
        for w, c in moments.items():
            w = tuple(w)
            if not w:
                if not (as_coeff(c) == 1):
                    raise ValueError("empty word must map to 1")
                continue
            if len(w) > order:
                continue
            if any(not 1 <= x <= d for x in w):
                raise ValueError(f"word {w} outside alphabet 1..{d}")
            c = as_coeff(c)
            if not is_zero(c):
                clean[w] = c
        self._m = clean

    def m(self, w):
        w = tuple(w)
        if not w:
            return ONE
        if len(w) > self.order:
            raise IndexError(f"word {w} beyond order {self.order}")
        return self._m.get(w, ZERO)

    def items(self):
        return self._m.items()

    def truncate(self, order):
        if order >= self.order:
            return self
        return NCFunctional(
            self.d, order, {w: c for w, c in self._m.items() if len(w) <= order})

    def __eq__(self, other):
        if not isinstance(other, NCFunctional):
            return NotImplemented
        if self.d != other.d:
            return False
        n = min(self.order, other.order)
        for w in words(self.d, n):
            if not (self.m(w) == other.m(w)):
                return False
        return True

    def __repr__(self):
        return f"<NCFunctional d={self.d} order={self.order} ({len(self._m)} words)>"


class NCPair:
    """A two-state pair of word functionals with one truncation order."""

    __slots__ = ("tilde", "base")

    def __init__(self, tilde, base):
        if tilde.d != base.d:
            raise ValueError("alphabet sizes differ")
        n = min(tilde.order, base.order)
        self.tilde = tilde.truncate(n)
        self.base = base.truncate(n)

    @property
    def d(self):
        return self.tilde.d

    @property
    def order(self):
        return self.tilde.order


class NCSeries:
    """Sparse word-indexed series (empty word allowed) under concatenation."""

    __slots__ = ("d", "order", "_c")

    def __init__(self, d, order, coeffs):
        if not 1 <= order <= MAX_NC_ORDER:
            raise ValueError(f"order must be in 1..{MAX_NC_ORDER}")
        self.d = d
        self.order = order
        clean = {}
        for w, c in coeffs.items():
            w = tuple(w)
            if len(w) > order:
                continue
            if any(not 1 <= x <= d for x in w):
                raise ValueError(f"word {w} outside alphabet 1..{d}")
            c = as_coeff(c)
            if not is_zero(c):
                clean[w] = c
        self._c = clean

    @classmethod
    def one(cls, d, order):
        return cls(d, order, {(): ONE})

    @classmethod
    def letter(cls, i, d, order):
        return cls(d, order, {(i,): ONE})

    def coeff(self, w):
        return self._c.get(tuple(w), ZERO)

    def items(self):
        return self._c.items()

    def valuation_positive(self):
        return () not in self._c

    def __add__(self, other):
        self._check(other)
        out = dict(self._c)
        for w, c in other._c.items():
            out[w] = out.get(w, ZERO) + c
        return NCSeries(self.d, min(self.order, other.order), out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self._c)
        for w, c in other._c.items():
            out[w] = out.get(w, ZERO) - c
        return NCSeries(self.d, min(self.order, other.order), out)

    def scale(self, c):
        c = as_coeff(c)
        return NCSeries(self.d, self.order,
                        {w: c * x for w, x in self._c.items()})

    def __mul__(self, other):
        """Concatenation (Cauchy) product; order is non-commutative."""
        self._check(other)
        order = min(self.order, other.order)
        out = {}
        for u, a in self._c.items():
            for v, b in other._c.items():
                if len(u) + len(v) <= order:
                    w = u + v
                    out[w] = out.get(w, ZERO) + a * b
        return NCSeries(self.d, order, out)

    def reciprocal(self):
        """Two-sided inverse; requires a nonzero empty-word coefficient."""
        c0 = self._c.get((), ZERO)
        if is_zero(c0):
            raise NotInvertibleError("empty-word coefficient is zero")
        inv0 = reciprocal(c0)
        rest = NCSeries(self.d, self.order,
                        {w: c for w, c in self._c.items() if w}).scale(inv0)
        # geometric series in the valuation-positive part
        acc = NCSeries.one(self.d, self.order)
        term = NCSeries.one(self.d, self.order)
        for _ in range(self.order):
            term = (term * rest).scale(-1)
            acc = acc + term
        return acc.scale(inv0)

    def substitute(self, subs):
        """Replace each letter i by subs[i-1]; substitutes need positive valuation."""
        if len(subs) != self.d:
            raise ValueError("need one substitute per letter")
        for s in subs:
            if not s.valuation_positive():
                raise ValueError("substitutes must have zero empty-word term")
        order = min([self.order] + [s.order for s in subs])
        total = NCSeries(self.d, order, {(): self._c.get((), ZERO)})
        for w, c in self._c.items():
            if not w:
                continue
            prod = None
            for i in w:
                prod = subs[i - 1] if prod is None else prod * subs[i - 1]
                if not prod._c:
                    break
            if prod is not None and prod._c:
                total = total + prod.scale(c)
        return total

    def _check(self, other):
        if not isinstance(other, NCSeries) or other.d != self.d:
            raise ValueError("operands over different alphabets")

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        if self.d != other.d:
            return False
        n = min(self.order, other.order)
        seen = set(self._c) | set(other._c)
        return all(self.coeff(w) == other.coeff(w)
                   for w in seen if len(w) <= n)

    def __repr__(self):
        return f"<NCSeries d={self.d} order={self.order} ({len(self._c)} words)>"


def nc_m_series(mu):
    """The moment series M = sum_w m_w z_w (no empty-word term)."""
    return NCSeries(mu.d, mu.order, dict(mu.items()))


def nc_series_from_cumulants(kappa, d, order):
    return NCSeries(d, order, dict(kappa))


def nc_point_mass(beta, d, order):
    """delta_beta with delta_beta[x_w] = prod_j beta_{w_j}."""
    beta = [as_coeff(x) for x in beta]
    if len(beta) != d:
        raise ValueError("need one coordinate per letter")
    ms = {}
    for w in words(d, order):
        prod = ONE
        for x in w:
            prod = prod * beta[x - 1]
        ms[w] = prod
    return NCFunctional(d, order, ms)


def nc_zero(d, order):
    return NCFunctional(d, order, {})


def nc_from_univariate(mf):
    """A MomentFunctional as the d = 1 word functional."""
    return NCFunctional(1, mf.order,
                        {(1,) * k: mf.m(k) for k in range(1, mf.order + 1)})


def nc_to_univariate(ncf):
    if ncf.d != 1:
        raise ValueError("only d = 1 converts to a moment sequence")
    return MomentFunctional(ncf.order,
                            [ncf.m((1,) * k) for k in range(1, ncf.order + 1)])


@lru_cache(maxsize=None)
def _splits(n):
    """Subsets S of positions {0..n-1} with 0 in S, plus the gap intervals.

    Returned as (marked_positions, gaps) pairs, gaps being (start, end)
    index ranges between consecutive marked positions and after the last.
    """
    out = []
    for mask in range(1 << (n - 1)):
        marked = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1]
        gaps = []
        for a, b in zip(marked, marked[1:] + [n]):
            gaps.append((a + 1, b))
        out.append((tuple(marked), tuple(gaps)))
    return tuple(out)


def _apply_w_substitution(coeff_of, mu, w):
    """[x_w] A(z_1(1+M^mu), ..., z_d(1+M^mu)) for A with coefficients coeff_of.

    Expands over the subsets of positions carrying the letters of A; the gaps
    between them (and after the last) carry moments of mu.
    """
    n = len(w)
    total = ZERO
    for marked, gaps in _splits(n):
        c = coeff_of(tuple(w[i] for i in marked))
        if is_zero(c):
            continue
        for a, b in gaps:
            if a < b:
                c = c * mu.m(w[a:b])
                if is_zero(c):
                    break
        else:
            total = total + c
    return total


def nc_r(mu):
    """Word-indexed free cumulants: solve R(z_i(1+M)) = M triangularly."""
    d, order = mu.d, mu.order
    kappa = {}
    get = lambda v: kappa.get(v, ZERO)
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            # the S = all-positions term contributes kappa_w itself
            rest = _apply_w_substitution(
                lambda v: ZERO if len(v) == n else get(v), mu, w)
            kappa[w] = mu.m(w) - rest
    return {w: c for w, c in kappa.items() if not is_zero(c)}


def nc_moments_from_r(kappa, d, order):
    """Forward solve of R(z_i(1+M)) = M."""
    get = lambda v: kappa.get(v, ZERO)
    out = nc_zero(d, order)
    ms = {}
    for n in range(1, order + 1):
        partial = NCFunctional(d, order, ms)
        for w in itertools.product(range(1, d + 1), repeat=n):
            val = _apply_w_substitution(get, partial, w)
            if not is_zero(val):
                ms[w] = val
    return NCFunctional(d, order, ms)


def nc_eta(mu):
    """Boolean word cumulants: eta_w = m_w - sum_{w=uv} eta_u m_v (u,v nonempty)."""
    eta = {}
    for n in range(1, mu.order + 1):
        for w in itertools.product(range(1, mu.d + 1), repeat=n):
            s = mu.m(w)
            for k in range(1, n):
                e = eta.get(w[:k], ZERO)
                if not is_zero(e):
                    s = s - e * mu.m(w[k:])
            if not is_zero(s):
                eta[w] = s
    return eta


def nc_moments_from_eta(eta, d, order):
    ms = {}
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            s = eta.get(w, ZERO)
            for k in range(1, n):
                e = eta.get(w[:k], ZERO)
                if not is_zero(e) and w[k:] in ms:
                    s = s + e * ms[w[k:]]
            if not is_zero(s):
                ms[w] = s
    return NCFunctional(d, order, ms)


def nc_two_state_r(pair):
    """Solve eta~ (1+M) = R2(z_i(1+M)) for the word two-state R-transform."""
    d, order = pair.d, pair.order
    eta_t = nc_eta(pair.tilde)
    base = pair.base
    kappa = {}
    get = lambda v: kappa.get(v, ZERO)
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            lhs = eta_t.get(w, ZERO)
            for k in range(1, n):
                e = eta_t.get(w[:k], ZERO)
                if not is_zero(e):
                    lhs = lhs + e * base.m(w[k:])
            rest = _apply_w_substitution(
                lambda v: ZERO if len(v) == n else get(v), base, w)
            kappa[w] = lhs - rest
    return {w: c for w, c in kappa.items() if not is_zero(c)}


def nc_tilde_from_two_state_r(r2, base):
    """Invert: eta~ = R2(z_i(1+M)) (1+M)^{-1}, then moments."""
    d, order = base.d, base.order
    get = lambda v: r2.get(v, ZERO)
    eta = {}
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            s = _apply_w_substitution(get, base, w)
            for k in range(1, n):
                e = eta.get(w[:k], ZERO)
                if not is_zero(e):
                    s = s - e * base.m(w[k:])
            if not is_zero(s):
                eta[w] = s
    return nc_moments_from_eta(eta, d, order)


def nc_free_convolve(a, b):
    d, order = a.d, min(a.order, b.order)
    ka, kb = nc_r(a.truncate(order)), nc_r(b.truncate(order))
    out = dict(ka)
    for w, c in kb.items():
        out[w] = out.get(w, ZERO) + c
    return nc_moments_from_r(out, d, order)


def nc_free_power(a, t):
    t = as_coeff(t)
    return nc_moments_from_r({w: t * c for w, c in nc_r(a).items()},
                             a.d, a.order)


def nc_free_deconvolve(a, b):
    d, order = a.d, min(a.order, b.order)
    ka, kb = nc_r(a.truncate(order)), nc_r(b.truncate(order))
    out = dict(ka)
    for w, c in kb.items():
        out[w] = out.get(w, ZERO) - c
    return nc_moments_from_r(out, d, order)


def nc_boolean_convolve(a, b):
    d, order = a.d, min(a.order, b.order)
    ea, eb = nc_eta(a.truncate(order)), nc_eta(b.truncate(order))
    out = dict(ea)
    for w, c in eb.items():
        out[w] = out.get(w, ZERO) + c
    return nc_moments_from_eta(out, d, order)


def nc_boolean_power(a, t):
    t = as_coeff(t)
    return nc_moments_from_eta({w: t * c for w, c in nc_eta(a).items()},
                               a.d, a.order)


def nc_phi(nu):
    """eta^{Phi[nu]} = sum_i z_i (1 + M^nu) z_i; output order nu.order + 2."""
    d, order = nu.d, nu.order + 2
    if order > MAX_NC_ORDER:
        order = MAX_NC_ORDER
    eta = {}
    for i in range(1, d + 1):
        eta[(i, i)] = ONE
        for w, c in nu.items():
            if len(w) + 2 <= order:
                eta[(i,) + w + (i,)] = c
    return nc_moments_from_eta(eta, d, order)


def nc_bp(mu):
    """R^{B[mu]} = eta^mu."""
    return nc_moments_from_r(nc_eta(mu), mu.d, mu.order)


def nc_bp_inverse(mu):
    return nc_moments_from_eta(nc_r(mu), mu.d, mu.order)


def nc_subordination(mu, nu):
    """R^{mu |> nu} (1+M^nu) = R^mu(z_i(1+M^nu)), solved triangularly."""
    d = mu.d
    order = min(mu.order, nu.order)
    mu, nu = mu.truncate(order), nu.truncate(order)
    kmu = nc_r(mu)
    get = lambda v: kmu.get(v, ZERO)
    ksub = {}
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            s = _apply_w_substitution(get, nu, w)
            for k in range(1, n):
                c = ksub.get(w[:k], ZERO)
                if not is_zero(c):
                    s = s - c * nu.m(w[k:])
            if not is_zero(s):
                ksub[w] = s
    return nc_moments_from_r(ksub, d, order)


def _composition_product(lam, nu):
    """(1 + M^lam)(1 + M^nu(z_i(1+M^lam))) - 1, as a word functional."""
    d, order = lam.d, min(lam.order, nu.order)
    lam, nu = lam.truncate(order), nu.truncate(order)
    get = lambda v: nu.m(v) if len(v) <= order else ZERO
    sub = {}  # [w] M^nu(W_lam), cached per word
    out = {}
    for n in range(1, order + 1):
        for w in itertools.product(range(1, d + 1), repeat=n):
            sub[w] = _apply_w_substitution(get, lam, w)
            s = sub[w] + lam.m(w)
            for k in range(1, n):
                c = lam.m(w[:k])
                if not is_zero(c):
                    s = s + c * sub[w[k:]]
            if not is_zero(s):
                out[w] = s
    return NCFunctional(d, order, out)


def nc_subordination_inverse(lam, nu):
    """The unique mu with mu |> nu = lam, via the composition identity

    1 + M^{mu boxplus nu} = (1 + M^lam)(1 + M^nu(z_i(1+M^lam))).
    """
    return nc_free_deconvolve(_composition_product(lam, nu), nu)


# -- verification ---------------------------------------------------------------


def _rand_nc(rng, d, order, span=2):
    ms = {}
    for w in words(d, order):
        ms[w] = Fraction(rng.randint(-span, span), rng.randint(1, 2))
    return NCFunctional(d, order, ms)


def _nc_verify_composition(order, rng, params):
    d = params.get("d", 2)
    mu = params.get("mu") or _rand_nc(rng, d, order)
    nu = params.get("nu") or _rand_nc(rng, d, order)
    lam = nc_subordination(mu, nu)
    lhs = nc_free_convolve(mu, nu)
    rhs = _composition_product(lam, nu)
    checks = [
        check_eq("1 + M^{mu boxplus nu} = "
                 "(1 + M^{mu|>nu})(1 + M^nu(z_i(1+M^{mu|>nu})))", lhs, rhs),
        check_eq("mu |> nu inverts: subordination_inverse recovers mu",
                 nc_subordination_inverse(lam, nu), mu),
    ]
    return checks, []


def _nc_verify_final_prop(order, rng, params):
    d = params.get("d", 2)
    rho_t = params.get("rho_t") or _rand_nc(rng, d, order)
    tau = params.get("tau") or _rand_nc(rng, d, order)
    beta_t = params.get("beta_t") or [
        Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(d)]
    gamma_t = as_coeff(params.get("gamma_t")
                       if params.get("gamma_t") is not None
                       else Fraction(rng.randint(1, 3), rng.randint(1, 2)))
    t = formal_t()
    mu = nc_subordination(tau, rho_t)
    mu_t = nc_free_power(mu, t)
    # two-state R: R~ = t beta~.z + t gamma~ sum_i z_i (1+M^{rho~}) z_i
    r2 = {}
    for i in range(1, d + 1):
        r2[(i,)] = as_coeff(beta_t[i - 1]) * t
        r2[(i, i)] = gamma_t * t
        for w, c in rho_t.items():
            if len(w) + 2 <= order:
                r2[(i,) + w + (i,)] = gamma_t * t * c
    tilde = nc_tilde_from_two_state_r(r2, mu_t)
    inner = nc_free_convolve(rho_t.truncate(order - 2),
                             nc_free_power(tau, t).truncate(order - 2))
    rhs = nc_boolean_convolve(
        nc_point_mass([as_coeff(x) * t for x in beta_t], d, order),
        nc_boolean_power(nc_phi(inner).truncate(order), gamma_t * t))
    checks = [check_eq(
        "mu~_t = delta_{t beta~} uplus "
        "Phi[rho~ boxplus tau^{boxplus t}]^{uplus gamma~ t}", tilde, rhs)]
    return checks, []


def _nc_verify_recover_tau(order, rng, params):
    # d = 1 reduction: recover tau from a two-state free Meixner semigroup and
    # reproduce its Jacobi display, cross-checked against the single-variable path.
    from .convolutions import free_convolve, free_power
    from .evolution import (maassen_semigroup, strip, subordination_inverse,
                            two_state_semigroup)
    from .functionals import (CanonicalTriple, JacobiParams, free_meixner,
                              jacobi_from_moments, semicircular)

    b_t = params.get("b_t", Fraction(1, 2))
    c_t = params.get("c_t", Fraction(2))
    b = params.get("b", Fraction(-1))
    c = params.get("c", Fraction(1))
    beta_t = params.get("beta_t", Fraction(1))
    gamma_t = params.get("gamma_t", Fraction(3, 2))
    beta = params.get("beta", Fraction(1, 3))
    gamma = params.get("gamma", Fraction(2))
    t = params.get("t", Fraction(1))
    order = min(order, MAX_NC_ORDER)
    rho = semicircular(b, c, order - 2)
    rho_t = free_meixner(b - b_t, c - c_t, b_t, c_t, order)
    rel = CanonicalTriple(beta_t, gamma_t, rho_t.truncate(order - 2))
    base = CanonicalTriple(beta, gamma, rho)
    pair = two_state_semigroup(rel, base, t, order)
    mu = maassen_semigroup(base, 1, order)
    tau_nc = nc_subordination_inverse(nc_from_univariate(mu),
                                      nc_from_univariate(rho_t))
    tau = nc_to_univariate(tau_nc)
    tau_sv = subordination_inverse(mu, rho_t)
    expect = JacobiParams((beta,), (gamma,),
                          repeat=(beta + b - b_t, gamma + c - c_t))
    checks = [
        check_eq("d=1 reduction: nc path matches single-variable inverse",
                 tau, tau_sv),
        check_eq("J(tau) = (beta, beta+b-b~, ...; gamma, gamma+c-c~, ...)",
                 jacobi_from_moments(tau, order // 2), expect),
        check_eq("J[mu~_t] = rho~ boxplus tau^{boxplus t} (J-level display)",
                 strip(pair.tilde), free_convolve(rho_t, free_power(tau, t))),
    ]
    return checks, []


NC_CATALOG = {
    "composition": (_nc_verify_composition, 6),
    "final-prop": (_nc_verify_final_prop, 6),
    "recover-tau": (_nc_verify_recover_tau, 8),
}


def nc_verify(name, params=None, order=None, seed=0):
    try:
        fn, default_order = NC_CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown nc verify entry {name!r}; "
                         f"choose from {sorted(NC_CATALOG)}") from None
    order = default_order if order is None else order
    rng = random.Random(seed)
    checks, notes = fn(order, rng, dict(params or {}))
    return VerifyReport(f"nc:{name}", order, checks, notes)


def nc_verify_all(order=None, seed=0):
    return [nc_verify(name, order=order, seed=seed) for name in NC_CATALOG]
