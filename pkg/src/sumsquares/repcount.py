"""Brute-force counts of representations as sums of two or three squares.

This module is the ground truth the closed formulas are checked against,
so it uses nothing beyond ring arithmetic and exhaustive enumeration.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .quadfield import QuadInt, _MINPOLY, _sign_sqrt


def _theta_embeddings(field: str) -> tuple[float, float, int]:
    p, q = _MINPOLY[field]
    disc = q * q + 4 * p
    r = math.sqrt(disc)
    return (q + r) / 2, (q - r) / 2, disc


def _roots_in_box(field: str, r1: float, r2: float) -> list[tuple[int, int]]:
    """All (a, b) with |a + b*theta_i| <= r_i, plus a margin of one unit."""
    t1, t2, _ = _theta_embeddings(field)
    span = t1 - t2
    bmax = int(math.floor((r1 + r2) / span)) + 1
    out = []
    for b in range(-bmax, bmax + 1):
        lo = max(-r1 - b * t1, -r2 - b * t2)
        hi = min(r1 - b * t1, r2 - b * t2)
        for a in range(math.floor(lo) - 1, math.ceil(hi) + 2):
            out.append((a, b))
    return out


def _below(value: Fraction, z: QuadInt, i: int) -> bool:
    """Exactly decide ``z^{(i)} <= value`` for rational ``value``."""
    p, q = _MINPOLY[z.field]
    disc = q * q + 4 * p
    # value - z^{(i)} = (2v - 2x - q y -/+ y sqrt(disc)) / 2
    num = 2 * value - 2 * z.x - q * z.y
    sgn_b = -z.y if i == 0 else z.y
    den = num.denominator
    return _sign_sqrt(int(num * den), sgn_b * den, disc) >= 0


def squares_bounded(field: str, b1, b2) -> dict[QuadInt, int]:
    """Distinct squares with both embeddings at most (b1, b2), with root counts."""
    f1, f2 = Fraction(b1), Fraction(b2)
    if f1 < 0 or f2 < 0:
        return {}
    out: dict[QuadInt, int] = {}
    for a, b in _roots_in_box(field, math.sqrt(f1) + 1e-9, math.sqrt(f2) + 1e-9):
        x = QuadInt(a, b, field)
        s = x * x
        if _below(f1, s, 0) and _below(f2, s, 1):
            out[s] = out.get(s, 0) + 1
    return out


def _tp_or_zero_mask(field: str, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    p, q = _MINPOLY[field]
    disc = q * q + 4 * p
    t = 2 * xs + q * ys
    zero = (xs == 0) & (ys == 0)
    return zero | ((t > 0) & (t * t > disc * ys * ys))


@lru_cache(maxsize=4096)
def _squares_below(nu: QuadInt) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Squares s with nu - s totally positive or zero: (xs, ys, root counts)."""
    e1, e2 = nu.embed()
    field = nu.field
    pts = np.array(_roots_in_box(field, math.sqrt(max(e1, 0)) + 1e-6,
                                 math.sqrt(max(e2, 0)) + 1e-6), dtype=np.int64)
    p, q = _MINPOLY[field]
    a, b = pts[:, 0], pts[:, 1]
    sx = a * a + p * b * b
    sy = 2 * a * b + q * b * b
    keep = _tp_or_zero_mask(field, nu.x - sx, nu.y - sy)
    sx, sy = sx[keep], sy[keep]
    if sx.size == 0:
        return sx, sy, sx
    key = np.stack([sx, sy], axis=1)
    uniq, counts = np.unique(key, axis=0, return_counts=True)
    return uniq[:, 0].copy(), uniq[:, 1].copy(), counts.astype(np.int64)


def _encode(xs: np.ndarray, ys: np.ndarray, span: int) -> np.ndarray:
    return xs * span + ys


def _count(nu: QuadInt, parts: int) -> int:
    if nu.is_zero():
        return 1
    if not nu.is_totally_positive():
        return 0
    sx, sy, cnt = _squares_below(nu)
    if sx.size == 0:
        return 0
    # wide enough that remainders never alias another key
    span = 2 * (abs(nu.y) + 2 * int(np.abs(sy).max())) + 3
    keys = _encode(sx, sy, span)
    order = np.argsort(keys)
    keys, cnt_sorted = keys[order], cnt[order]

    def lookup(tx: np.ndarray, ty: np.ndarray) -> np.ndarray:
        tk = _encode(tx, ty, span)
        idx = np.searchsorted(keys, tk)
        idx = np.clip(idx, 0, keys.size - 1)
        hit = keys[idx] == tk
        return np.where(hit, cnt_sorted[idx], 0)

    if parts == 2:
        return int((cnt * lookup(nu.x - sx, nu.y - sy)).sum())
    # three squares: pair sums, then look up the remainder
    px = sx[:, None] + sx[None, :]
    py = sy[:, None] + sy[None, :]
    w = cnt[:, None] * cnt[None, :]
    return int((w * lookup(nu.x - px, nu.y - py)).sum())


@lru_cache(maxsize=200_000)
def r2_brute(nu: QuadInt) -> int:
    """Ordered signed representations of ``nu`` as a sum of two squares."""
    return _count(nu, 2)


@lru_cache(maxsize=200_000)
def r3_brute(nu: QuadInt) -> int:
    """Ordered signed representations of ``nu`` as a sum of three squares."""
    return _count(nu, 3)


def two_square_solutions(nu: QuadInt) -> list[tuple[QuadInt, QuadInt]]:
    """Every ordered pair (x1, x2) with x1**2 + x2**2 = nu."""
    if not nu.is_totally_positive():
        return [(QuadInt(0, 0, nu.field),) * 2] if nu.is_zero() else []
    e1, e2 = nu.embed()
    roots = [QuadInt(a, b, nu.field)
             for a, b in _roots_in_box(nu.field, math.sqrt(e1) + 1e-6, math.sqrt(e2) + 1e-6)]
    by_square: dict[QuadInt, list[QuadInt]] = {}
    for x in roots:
        by_square.setdefault(x * x, []).append(x)
    out = []
    for s, xs in by_square.items():
        for y in by_square.get(nu - s, []):
            for x in xs:
                out.append((x, y))
    return sorted(set(out), key=lambda pr: (pr[0].x, pr[0].y, pr[1].x, pr[1].y))


def tp_elements(field: str, trace_bound: int) -> list[QuadInt]:
    """Totally positive elements with trace at most ``trace_bound``.

    Sorted by trace, then by coordinates.
    """
    p, q = _MINPOLY[field]
    disc = q * q + 4 * p
    out = []
    for t in range(1, trace_bound + 1):
        ymax = math.isqrt(t * t // disc + 1) + 1
        for y in range(-ymax, ymax + 1):
            if (t - q * y) % 2:
                continue
            if t * t <= disc * y * y:
                continue
            out.append(QuadInt((t - q * y) // 2, y, field))
    out.sort(key=lambda z: (z.trace(), z.x, z.y))
    return out


def solution_system_count(field: str, a: int, b: int) -> int:
    """Count integer solutions of the rational system equivalent to r3(a + b*theta).

    Written directly over Z as an independent cross-check of :func:`r3_brute`.
    """
    p, q = _MINPOLY[field]
    total = 0
    # each x_i = u_i + v_i theta contributes (u^2 + p v^2, 2uv + q v^2)
    nu = QuadInt(a, b, field)
    if not nu.is_totally_positive():
        return 1 if (a, b) == (0, 0) else 0
    e1, e2 = nu.embed()
    pairs = _roots_in_box(field, math.sqrt(e1) + 1e-6, math.sqrt(e2) + 1e-6)
    contrib: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        key = (u * u + p * v * v, 2 * u * v + q * v * v)
        contrib[key] = contrib.get(key, 0) + 1
    items = list(contrib.items())
    for (x1, y1), c1 in items:
        for (x2, y2), c2 in items:
            c3 = contrib.get((a - x1 - x2, b - y1 - y2))
            if c3:
                total += c1 * c2 * c3
    return total

