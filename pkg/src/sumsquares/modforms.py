"""Truncated Fourier expansions over O_K with exact rational coefficients.

A series is indexed by totally positive elements (not ideals) of trace at
most ``trace_bound``.  Products stay exact below the bound because traces
of totally positive elements add.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .characters import (
    CHI4K,
    RHO2,
    RHO2P,
    TRIVIAL,
    CharSpec,
    one_of,
    product_of,
    sigma,
)
from .closedform import verify_cfc
from .idealarith import InvalidInput
from .quadfield import K3, K17, QuadInt, _MINPOLY, _sign_sqrt, make_context
from .repcount import _roots_in_box, r2_brute, tp_elements


class UnsupportedCharacterPair(InvalidInput):
    pass


@dataclass(frozen=True)
class FourierSeries:
    field: str
    trace_bound: int
    constant: Fraction
    coeffs: Mapping[QuadInt, Fraction] = dc_field(default_factory=dict)
    constant_determined: bool = True

    def __getitem__(self, nu: QuadInt) -> Fraction:
        if nu.is_zero():
            return self.constant
        if nu.trace() > self.trace_bound:
            raise KeyError(f"{nu} lies beyond trace bound {self.trace_bound}")
        return self.coeffs.get(nu, Fraction(0))

    def support(self) -> list[QuadInt]:
        return sorted(self.coeffs, key=_order)


def _order(z: QuadInt):
    return (z.trace(), z.x, z.y)


def _clean(coeffs: Mapping[QuadInt, Fraction]) -> dict[QuadInt, Fraction]:
    return {k: Fraction(v) for k, v in coeffs.items() if v}


def _check_compatible(f: FourierSeries, g: FourierSeries) -> None:
    if f.field != g.field:
        raise InvalidInput("series over different fields")


def truncate(f: FourierSeries, trace_bound: int) -> FourierSeries:
    if trace_bound > f.trace_bound:
        raise InvalidInput("cannot extend a truncated series")
    kept = {k: v for k, v in f.coeffs.items() if k.trace() <= trace_bound}
    return FourierSeries(f.field, trace_bound, f.constant, kept, f.constant_determined)


def series_add(f: FourierSeries, g: FourierSeries) -> FourierSeries:
    _check_compatible(f, g)
    t = min(f.trace_bound, g.trace_bound)
    out: dict[QuadInt, Fraction] = {}
    for src in (f.coeffs, g.coeffs):
        for k, v in src.items():
            if k.trace() <= t:
                out[k] = out.get(k, Fraction(0)) + v
    return FourierSeries(f.field, t, f.constant + g.constant, _clean(out),
                         f.constant_determined and g.constant_determined)


def series_scale(c, f: FourierSeries) -> FourierSeries:
    c = Fraction(c)
    return FourierSeries(f.field, f.trace_bound, c * f.constant,
                         _clean({k: c * v for k, v in f.coeffs.items()}),
                         f.constant_determined)


def linear_combination(terms: Iterable[tuple[object, FourierSeries]]) -> FourierSeries:
    terms = list(terms)
    out = series_scale(terms[0][0], terms[0][1])
    for c, f in terms[1:]:
        out = series_add(out, series_scale(c, f))
    return out


def series_mul(f: FourierSeries, g: FourierSeries) -> FourierSeries:
    """Truncated product; the constant terms take part in the convolution."""
    _check_compatible(f, g)
    t = min(f.trace_bound, g.trace_bound)
    fa = [(k.x, k.y, k.trace(), v) for k, v in f.coeffs.items() if k.trace() <= t]
    ga = [(k.x, k.y, k.trace(), v) for k, v in g.coeffs.items() if k.trace() <= t]
    acc: dict[tuple[int, int], Fraction] = {}
    for x1, y1, t1, v1 in fa:
        for x2, y2, t2, v2 in ga:
            if t1 + t2 <= t:
                key = (x1 + x2, y1 + y2)
                acc[key] = acc.get(key, Fraction(0)) + v1 * v2
    if g.constant:
        for x1, y1, _, v1 in fa:
            acc[(x1, y1)] = acc.get((x1, y1), Fraction(0)) + v1 * g.constant
    if f.constant:
        for x2, y2, _, v2 in ga:
            acc[(x2, y2)] = acc.get((x2, y2), Fraction(0)) + f.constant * v2
    coeffs = _clean({QuadInt(x, y, f.field): v for (x, y), v in acc.items()})
    return FourierSeries(f.field, t, f.constant * g.constant, coeffs,
                         f.constant_determined and g.constant_determined)


def series_mul_by_splits(f: FourierSeries, g: FourierSeries) -> FourierSeries:
    """Slow product: for each target, sum over every totally positive split."""
    _check_compatible(f, g)
    t = min(f.trace_bound, g.trace_bound)
    zero = QuadInt(0, 0, f.field)
    coeffs = {}
    for nu in tp_elements(f.field, t):
        total = f.constant * g[nu] + f[nu] * g.constant
        for a in tp_elements(f.field, nu.trace() - 1):
            b = nu - a
            if b.is_totally_positive():
                total += f[a] * g[b]
        coeffs[nu] = total
    return FourierSeries(f.field, t, f[zero] * g[zero], _clean(coeffs),
                         f.constant_determined and g.constant_determined)


# ---------------------------------------------------------------------------
# theta series

def theta(field: str, trace_bound: int) -> FourierSeries:
    """Sum over x in O_K of e(tr(x^2 z)), truncated at ``trace_bound``."""
    r = math.sqrt(trace_bound) + 1e-6
    coeffs: dict[QuadInt, Fraction] = {}
    for a, b in _roots_in_box(field, r, r):
        s = QuadInt(a, b, field) ** 2
        if s.is_zero() or s.trace() > trace_bound:
            continue
        coeffs[s] = coeffs.get(s, Fraction(0)) + 1
    return FourierSeries(field, trace_bound, Fraction(1), coeffs)


# ---------------------------------------------------------------------------
# Eisenstein series

@dataclass(frozen=True)
class EisensteinData:
    weight: int
    psi1: CharSpec
    psi2: CharSpec
    denom_scale: int
    constant: Fraction


def _eisenstein_table(field: str) -> dict[str, EisensteinData]:
    ctx = make_context(field)
    F = Fraction
    if field == K3:
        odd = one_of(ctx.pi2)
        return {
            "g1chi": EisensteinData(1, CHI4K, TRIVIAL, 1, F(1, 3)),
            "g1chi_odd": EisensteinData(1, CHI4K, odd, 1, F(0)),
            "g1chi_odd_half": EisensteinData(1, CHI4K, odd, 2, F(0)),
            "g1psi": EisensteinData(1, product_of(RHO2, CHI4K), product_of(RHO2, odd), 1, F(0)),
            "g2": EisensteinData(2, TRIVIAL, TRIVIAL, 1, F(1, 6)),
            "g2_odd": EisensteinData(2, odd, TRIVIAL, 1, F(-1, 6)),
        }
    return {
        "g1chi": EisensteinData(1, CHI4K, TRIVIAL, 1, F(2)),
        "g1rho": EisensteinData(1, RHO2, RHO2P, 1, F(0)),
        "g2": EisensteinData(2, TRIVIAL, TRIVIAL, 1, F(1, 3)),
        "g2_odd_p2": EisensteinData(2, one_of(ctx.pi2), TRIVIAL, 1, F(-1, 3)),
        "g2_odd_p2p": EisensteinData(2, one_of(ctx.pi2p), TRIVIAL, 1, F(-1, 3)),
        "g2_odd": EisensteinData(2, one_of(QuadInt(2, 0, K17)), TRIVIAL, 1, F(1, 3)),
    }


def eisenstein_names(field: str) -> list[str]:
    return sorted(_eisenstein_table(field))


def _lookup(field: str, weight: int, psi1: CharSpec, psi2: CharSpec,
            denom_scale: int) -> EisensteinData:
    for data in _eisenstein_table(field).values():
        if (data.weight, data.psi1, data.psi2, data.denom_scale) == (weight, psi1, psi2, denom_scale):
            return data
    raise UnsupportedCharacterPair(
        f"no instantiated weight {weight} series for ({psi1}, {psi2}) scale {denom_scale}")


def eisenstein(field: str, weight: int, psi1: CharSpec, psi2: CharSpec,
               denom_scale: int, trace_bound: int) -> FourierSeries:
    """Coefficient at nu is 4 * sigma_{k-1}(nu / denom_scale)."""
    data = _lookup(field, weight, psi1, psi2, denom_scale)
    return _eisenstein_from(field, data, trace_bound)


def eisenstein_named(field: str, name: str, trace_bound: int) -> FourierSeries:
    table = _eisenstein_table(field)
    if name not in table:
        raise UnsupportedCharacterPair(f"unknown series {name!r}; known: {', '.join(sorted(table))}")
    return _eisenstein_from(field, table[name], trace_bound)


def _eisenstein_from(field: str, data: EisensteinData, trace_bound: int) -> FourierSeries:
    return _eisenstein_cached(field, data, trace_bound)


@lru_cache(maxsize=64)
def _eisenstein_cached(field: str, data: EisensteinData, trace_bound: int) -> FourierSeries:
    coeffs = {}
    for nu in tp_elements(field, trace_bound):
        coeffs[nu] = Fraction(4 * sigma(data.weight - 1, data.psi1, data.psi2, nu,
                                        data.denom_scale))
    return FourierSeries(field, trace_bound, data.constant, _clean(coeffs))


# ---------------------------------------------------------------------------
# U operators and the cusp forms

def _max_embedding_at_most(mu: QuadInt, bound: Fraction) -> bool:
    p, q = _MINPOLY[mu.field]
    disc = q * q + 4 * p
    # bound - mu^{(i)} = (2 bound - 2x - q y -/+ y sqrt(disc)) / 2
    num = 2 * bound - 2 * mu.x - q * mu.y
    den = num.denominator
    a = int(num * den)
    return (_sign_sqrt(a, -mu.y * den, disc) >= 0
            and _sign_sqrt(a, mu.y * den, disc) >= 0)


def u_bound(mu: QuadInt, trace_bound: int) -> int:
    """Largest T' such that trace(mu * nu) <= trace_bound whenever trace(nu) <= T'."""
    t = 0
    while _max_embedding_at_most(mu, Fraction(trace_bound, t + 1)):
        t += 1
    return t


def u_op(mu: QuadInt, f: FourierSeries) -> FourierSeries:
    if not mu.is_totally_positive():
        raise InvalidInput(f"{mu} is not totally positive")
    t = u_bound(mu, f.trace_bound)
    coeffs = {}
    for nu in tp_elements(f.field, t):
        v = f.coeffs.get(mu * nu)
        if v:
            coeffs[nu] = v
    return FourierSeries(f.field, t, f.constant, coeffs, f.constant_determined)


def _needed_bound(mu: QuadInt, trace_bound: int) -> int:
    t = trace_bound
    while u_bound(mu, t) < trace_bound:
        t += 1
    return t


def u_image(mu: QuadInt, build, trace_bound: int) -> FourierSeries:
    """U(mu) applied to ``build(T)``, with T chosen so the result reaches ``trace_bound``."""
    return truncate(u_op(mu, build(_needed_bound(mu, trace_bound))), trace_bound)


def build_phi17(trace_bound: int) -> FourierSeries:
    g1 = eisenstein_named(K17, "g1chi", trace_bound)
    g2 = eisenstein_named(K17, "g1rho", trace_bound)
    return series_scale(Fraction(1, 8), series_mul(g1, g2))


def build_xi17(trace_bound: int) -> FourierSeries:
    return series_scale(Fraction(1, 3), u_image(QuadInt(2, 0, K17), build_phi17, trace_bound))


def build_pefe3(trace_bound: int) -> FourierSeries:
    g1 = eisenstein_named(K3, "g1chi_odd", trace_bound)
    g2 = eisenstein_named(K3, "g1psi", trace_bound)
    return series_scale(Fraction(1, 16), series_mul(g1, g2))


def build_xi3(trace_bound: int) -> FourierSeries:
    return u_image(QuadInt(2, 0, K3), build_pefe3, trace_bound)


def build_xi(field: str, trace_bound: int) -> FourierSeries:
    return build_xi3(trace_bound) if field == K3 else build_xi17(trace_bound)


def xi_doubled(xi: FourierSeries) -> FourierSeries:
    """The series f(2z): coefficient at 2 nu is the coefficient of ``xi`` at nu."""
    coeffs = {QuadInt(2 * k.x, 2 * k.y, k.field): v for k, v in xi.coeffs.items()}
    return FourierSeries(xi.field, 2 * xi.trace_bound, xi.constant, coeffs,
                         xi.constant_determined)


def theta_square_combination(field: str, trace_bound: int) -> FourierSeries:
    """The Eisenstein combination claimed to equal theta squared."""
    e = lambda name: eisenstein_named(field, name, trace_bound)
    if field == K3:
        return linear_combination([
            (3, e("g1chi")),
            (Fraction(-5, 2), e("g1chi_odd")),
            (-2, e("g1chi_odd_half")),
            (Fraction(1, 2), e("g1psi")),
        ])
    return linear_combination([(Fraction(1, 2), e("g1chi")), (Fraction(1, 2), e("g1rho"))])


# ---------------------------------------------------------------------------
# verification

@dataclass
class Mismatch:
    nu: QuadInt | None
    expected: Fraction
    found: Fraction

    def __str__(self) -> str:
        where = "constant" if self.nu is None else str(self.nu)
        return f"{where}: expected {self.expected} found {self.found}"


@dataclass
class SeriesReport:
    name: str
    checked: list[QuadInt]
    mismatches: list[Mismatch]
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_theta_sq(field: str, trace_bound: int) -> SeriesReport:
    """Compare the theta-squared coefficients (two-square counts) with the Eisenstein side."""
    lhs = series_mul(theta(field, trace_bound), theta(field, trace_bound))
    rhs = theta_square_combination(field, trace_bound)
    nus = tp_elements(field, trace_bound)
    bad = []
    for nu in nus:
        brute = Fraction(r2_brute(nu))
        if lhs[nu] != brute:
            raise AssertionError(f"theta square disagrees with r2 at {nu}")
        if rhs[nu] != brute:
            bad.append(Mismatch(nu, brute, rhs[nu]))
    if rhs.constant_determined and rhs.constant != lhs.constant:
        bad.append(Mismatch(None, lhs.constant, rhs.constant))
    return SeriesReport(f"theta2[{field}]", nus, bad)


def verify_lift(alpha: QuadInt, trace_bound: int) -> SeriesReport:
    """Check the lift identity coefficientwise at every nu of trace <= ``trace_bound``.

    On failure the residual is tested against a multiple of Xi; a clean
    multiple is reported in ``note``.
    """
    nus = tp_elements(alpha.field, trace_bound)
    bad = []
    for nu in nus:
        lhs, rhs = verify_cfc(alpha, nu)
        if lhs != rhs:
            bad.append(Mismatch(nu, rhs, lhs))
    note = ""
    if bad:
        xi = build_xi(alpha.field, trace_bound)
        multiple = fit_multiple({m.nu: m.found - m.expected for m in bad}, xi, nus)
        note = ("residual is not a multiple of Xi" if multiple is None
                else f"residual equals {multiple} * Xi")
    return SeriesReport(f"lift[{alpha}]", nus, bad, note)


def fit_multiple(residual: Mapping[QuadInt, Fraction], basis: FourierSeries,
                 nus: Iterable[QuadInt]) -> Fraction | None:
    """The c with residual = c * basis at every nu, when such a c exists."""
    c = None
    for nu in nus:
        r = residual.get(nu, Fraction(0))
        b = basis[nu]
        if b == 0:
            if r != 0:
                return None
            continue
        if c is None:
            c = r / b
        elif r != c * b:
            return None
    return c


def dump(f: FourierSeries, include_zero: bool = False) -> str:
    """One line per coefficient: ``trace x y num/den``, sorted by trace then coordinates."""
    lines = []
    nus = tp_elements(f.field, f.trace_bound) if include_zero else f.support()
    lines.append(f"0 0 0 {_fmt(f.constant)}")
    for nu in nus:
        lines.append(f"{nu.trace()} {nu.x} {nu.y} {_fmt(f[nu])}")
    return "\n".join(lines)


def _fmt(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"
