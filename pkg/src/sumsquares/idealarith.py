"""Factorization, divisors and the Moebius function in O_K.

Both rings have class number one, so every ideal is principal and we can
work with generators throughout.  Rational primes are split with a square
root of the field discriminant and a Euclidean gcd.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .quadfield import (
    K3,
    NoTotallyPositiveAssociate,
    QuadInt,
    _MINPOLY,
    canonical_associate,
    canonical_tp_associate,
    div_exact,
    divides,
    euclid_gcd,
    make_context,
)


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class PrimeSplit:
    kind: str  # "inert", "split" or "ramified"
    primes: tuple[QuadInt, ...]


@dataclass(frozen=True)
class Factorization:
    unit: QuadInt
    factors: tuple[tuple[QuadInt, int], ...]

    def recompose(self) -> QuadInt:
        out = self.unit
        for p, e in self.factors:
            out = out * p ** e
        return out

    def primes(self) -> list[QuadInt]:
        return [p for p, _ in self.factors]


def _sort_key(z: QuadInt):
    return (abs(z.norm()), z.x, z.y)


@lru_cache(maxsize=None)
def rational_prime_split(p: int, field: str) -> PrimeSplit:
    """How the rational prime ``p`` decomposes in O_K."""
    pp, q = _MINPOLY[field]
    disc = q * q + 4 * pp
    P = QuadInt(p, 0, field)
    if p == 2:
        ctx = make_context(field)
        if ctx.pi2p is None:
            return PrimeSplit("ramified", (canonical_associate(ctx.pi2),))
        return PrimeSplit("split", (canonical_associate(ctx.pi2),
                                    canonical_associate(ctx.pi2p)))
    if disc % p == 0:
        # theta**2 - q*theta - pp has the double root q/2 mod p
        r = (q * pow(2, -1, p)) % p
        pi = euclid_gcd(P, QuadInt(-r, 1, field))
        return PrimeSplit("ramified", (canonical_associate(pi),))
    s = sqrt_mod(disc % p, p)
    if s is None:
        return PrimeSplit("inert", (P,))
    inv2 = pow(2, -1, p)
    roots = sorted({((q + s) * inv2) % p, ((q - s) * inv2) % p})
    pis = [canonical_associate(euclid_gcd(P, QuadInt(-r, 1, field))) for r in roots]
    for pi in pis:
        if abs(pi.norm()) != p:
            raise AssertionError(f"bad split of {p}: {pi}")
    return PrimeSplit("split", tuple(sorted(pis, key=_sort_key)))


def valuation(nu: QuadInt, pi: QuadInt) -> int:
    if nu.is_zero():
        raise ValueError("valuation of zero")
    e = 0
    while divides(nu, pi):
        nu = div_exact(nu, pi)
        e += 1
    return e


@lru_cache(maxsize=65536)
def factor(nu: QuadInt) -> Factorization:
    if nu.is_zero():
        raise ValueError("cannot factor zero")
    rest = nu
    found: list[tuple[QuadInt, int]] = []
    for p in sorted(factorint(abs(nu.norm()))):
        split = rational_prime_split(p, nu.field)
        for pi in split.primes:
            e = 0
            while divides(rest, pi):
                rest = div_exact(rest, pi)
                e += 1
            if e:
                found.append((pi, e))
    if not rest.is_unit():
        raise AssertionError(f"factorization of {nu} left non-unit {rest}")
    found.sort(key=lambda pe: _sort_key(pe[0]))
    return Factorization(rest, tuple(found))


def _divisor_elements(nu: QuadInt) -> list[QuadInt]:
    f = factor(nu)
    out = []
    ranges = [range(e + 1) for _, e in f.factors]
    for exps in product(*ranges):
        d = QuadInt(1, 0, nu.field)
        for (p, _), k in zip(f.factors, exps):
            if k:
                d = d * p ** k
        out.append(d)
    return out


def ideal_divisors(nu: QuadInt) -> list[QuadInt]:
    """One canonical generator for every ideal dividing ``(nu)``."""
    divs = [canonical_associate(d) for d in _divisor_elements(nu)]
    return sorted(divs, key=_sort_key)


def tp_divisors(nu: QuadInt) -> list[QuadInt]:
    """Canonical totally positive generators of the ideal divisors of ``(nu)``.

    Ideals with no totally positive generator are left out.
    """
    out = []
    for d in _divisor_elements(nu):
        try:
            out.append(canonical_tp_associate(d))
        except NoTotallyPositiveAssociate:
            continue
    return sorted(out, key=_sort_key)


def mobius(delta: QuadInt) -> int:
    f = factor(delta)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def is_squarefree(z: QuadInt) -> bool:
    return not z.is_zero() and all(e == 1 for _, e in factor(z).factors)


def reduce_by_unit_squares(z: QuadInt) -> tuple[QuadInt, int]:
    """Return ``(w, k)`` with ``w = z * eps0**(2k)`` in a fixed window.

    Two elements differing by a square of a unit map to the same ``w``.
    """
    from .quadfield import _reduce_into_window, unit_log

    if z.signs()[0] < 0:
        raise InvalidInput(f"{z} has a negative first embedding")
    u2 = make_context(z.field).fundamental_unit ** 2
    w = _reduce_into_window(z, u2)
    ratio = div_exact(w, z)
    sign, k = unit_log(ratio)
    if sign != 1 or k % 2:
        raise AssertionError("window reduction left the unit-square class")
    return w, k // 2


def squarefree_decompose(nu: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Split a totally positive ``nu`` as ``alpha * mu**2`` with ``(alpha)`` squarefree.

    ``alpha`` is totally positive and reduced modulo squares of units, so
    ``nu`` and ``eps0**2 * nu`` give the same ``alpha``.
    """
    if not nu.is_totally_positive():
        raise InvalidInput(f"{nu} is not totally positive")
    f = factor(nu)
    mu = QuadInt(1, 0, nu.field)
    for p, e in f.factors:
        if e >= 2:
            mu = mu * p ** (e // 2)
    alpha = div_exact(nu, mu * mu)
    alpha, k = reduce_by_unit_squares(alpha)
    eps = make_context(nu.field).fundamental_unit
    mu = mu * eps ** (-k)
    if mu.signs()[0] < 0:
        mu = -mu
    assert alpha * mu * mu == nu
    return alpha, mu


def prime_is_tp_principal(pi: QuadInt) -> bool:
    """Whether the prime ideal ``(pi)`` has a totally positive generator."""
    return pi.field != K3 or pi.norm() > 0
