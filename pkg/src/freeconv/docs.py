"""Lossless JSON documents for functionals, pairs, Jacobi rows and triples.

Rationals are strings "p/q" in lowest terms ("/q" omitted when q = 1);
polynomial-in-t coefficients are arrays of such strings by ascending
t-degree.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coeffs import TPoly
from .functionals import (
    CanonicalTriple,
    FAMILIES,
    JacobiParams,
    MomentFunctional,
    TwoStatePair,
    family,
)


class DocumentError(ValueError):
    """Malformed or unknown-field functional document."""


def encode_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decode_rational(s):
    if not isinstance(s, str):
        raise DocumentError(f"rational must be a string, got {s!r}")
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(f"bad rational {s!r}: {e}") from None
    return x


def encode_coeff(c):
    if isinstance(c, TPoly):
        return [encode_rational(x) for x in c.coeffs] or ["0"]
    return encode_rational(c)


def decode_coeff(v):
    if isinstance(v, list):
        return TPoly([decode_rational(x) for x in v])
    return decode_rational(v)


def _expect_fields(doc, required, optional=()):
    keys = set(doc)
    missing = set(required) - keys
    if missing:
        raise DocumentError(f"missing fields {sorted(missing)}")
    unknown = keys - set(required) - set(optional)
    if unknown:
        raise DocumentError(f"unknown fields {sorted(unknown)}")


def encode_functional(mf):
    return {"type": "moments", "order": mf.order,
            "moments": [encode_coeff(m) for m in mf.moments()]}


def encode_jacobi(jp, order=None):
    doc = {"type": "jacobi",
           "betas": [encode_coeff(b) for b in jp.betas],
           "gammas": [encode_coeff(g) for g in jp.gammas],
           "terminated": jp.terminated}
    if jp.repeat is not None:
        doc["repeat"] = {"beta": encode_coeff(jp.repeat[0]),
                         "gamma": encode_coeff(jp.repeat[1])}
    if order is not None:
        doc["order"] = order
    return doc


def encode_pair(pair):
    return {"type": "pair", "order": pair.order,
            "tilde": encode_functional(pair.tilde),
            "base": encode_functional(pair.base)}


def encode_triple(triple, order=None):
    doc = {"type": "triple",
           "beta": encode_coeff(triple.beta),
           "gamma": encode_coeff(triple.gamma),
           "rho": None if triple.rho is None else encode_functional(triple.rho)}
    if order is not None:
        doc["order"] = order
    return doc


def decode(doc, order=None):
    """Decode any functional document into its library value."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise DocumentError("document must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "moments":
        _expect_fields(doc, ("type", "order", "moments"))
        n = doc["order"]
        if not isinstance(n, int) or n < 1:
            raise DocumentError("order must be a positive integer")
        ms = doc["moments"]
        if not isinstance(ms, list) or len(ms) != n:
            raise DocumentError(f"expected {n} moments")
        return MomentFunctional(n, [decode_coeff(m) for m in ms])
    if kind == "jacobi":
        _expect_fields(doc, ("type", "betas", "gammas", "terminated"),
                       ("repeat", "order"))
        repeat = None
        if "repeat" in doc:
            _expect_fields(doc["repeat"], ("beta", "gamma"))
            repeat = (decode_coeff(doc["repeat"]["beta"]),
                      decode_coeff(doc["repeat"]["gamma"]))
        try:
            return JacobiParams([decode_coeff(b) for b in doc["betas"]],
                                [decode_coeff(g) for g in doc["gammas"]],
                                terminated=doc["terminated"], repeat=repeat)
        except ValueError as e:
            raise DocumentError(str(e)) from None
    if kind == "family":
        _expect_fields(doc, ("type", "name", "order"), ("params",))
        name = doc["name"]
        if name not in FAMILIES:
            raise DocumentError(f"unknown family {name!r}")
        params = {k: decode_rational(v)
                  for k, v in doc.get("params", {}).items()}
        try:
            return family(name, params, doc["order"])
        except ValueError as e:
            raise DocumentError(str(e)) from None
    if kind == "pair":
        _expect_fields(doc, ("type", "order", "tilde", "base"))
        tilde = decode(doc["tilde"])
        base = decode(doc["base"])
        return TwoStatePair(as_functional(tilde, doc["order"]),
                            as_functional(base, doc["order"]))
    if kind == "triple":
        _expect_fields(doc, ("type", "beta", "gamma", "rho"), ("order",))
        rho = doc["rho"]
        rho_val = None
        if rho is not None:
            rho_val = as_functional(decode(rho), None)
        try:
            return CanonicalTriple(decode_coeff(doc["beta"]),
                                   decode_coeff(doc["gamma"]), rho_val)
        except ValueError as e:
            raise DocumentError(str(e)) from None
    raise DocumentError(f"unknown document type {kind!r}")


def as_functional(value, order):
    """Coerce a decoded document to a MomentFunctional at the given order."""
    from .functionals import moments_from_jacobi

    if isinstance(value, MomentFunctional):
        if order is None:
            return value
        if value.order < order:
            raise DocumentError(
                f"functional of order {value.order} cannot serve order {order}")
        return value.truncate(order)
    if isinstance(value, JacobiParams):
        if order is None:
            raise DocumentError("a jacobi document needs an order to convert")
        return moments_from_jacobi(value, order)
    raise DocumentError(f"expected a functional, got {type(value).__name__}")


def load(path_or_fp):
    if hasattr(path_or_fp, "read"):
        raw = path_or_fp.read()
    else:
        with open(path_or_fp, "r", encoding="utf-8") as fp:
            raw = fp.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
