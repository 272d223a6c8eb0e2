"""Exact arithmetic in the rings of integers of Q(sqrt 3) and Q(sqrt 17).

An element is stored as ``x + y*theta`` with integer coordinates, where
``theta = sqrt(3)`` for ``q3`` and ``theta = (1 + sqrt(17))/2`` for ``q17``.
Both generators satisfy ``theta**2 = p + q*theta``; everything below is
written in terms of the pair ``(p, q)`` so the two fields share one code path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

K3 = "q3"
K17 = "q17"
FIELDS = (K3, K17)

# theta**2 = p + q*theta
_MINPOLY = {K3: (3, 0), K17: (4, 1)}


class NotDivisible(ArithmeticError):
    pass


class NoTotallyPositiveAssociate(ValueError):
    pass


class InternalError(RuntimeError):
    pass


def _check_field(field: str) -> str:
    if field not in _MINPOLY:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")
    return field


@dataclass(frozen=True, slots=True)
class QuadInt:
    x: int
    y: int
    field: str = K3

    # -- construction helpers -------------------------------------------
    @classmethod
    def of(cls, value, field: str) -> QuadInt:
        if isinstance(value, QuadInt):
            if value.field != field:
                raise ValueError("mixing elements of different fields")
            return value
        if isinstance(value, int):
            return cls(value, 0, field)
        if isinstance(value, tuple) and len(value) == 2:
            return cls(int(value[0]), int(value[1]), field)
        raise TypeError(f"cannot coerce {value!r} to QuadInt")

    def _coerce(self, other) -> QuadInt | None:
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.field)
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.x, -self.y, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.x - o.x, self.y - o.y, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q = _MINPOLY[self.field]
        yy = self.y * o.y
        return QuadInt(self.x * o.x + p * yy,
                       self.x * o.y + self.y * o.x + q * yy, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            u = self.inverse_unit()
            return u ** (-n)
        result = QuadInt(1, 0, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadInt:
        _, q = _MINPOLY[self.field]
        return QuadInt(self.x + q * self.y, -self.y, self.field)

    def norm(self) -> int:
        p, q = _MINPOLY[self.field]
        return self.x * self.x + q * self.x * self.y - p * self.y * self.y

    def trace(self) -> int:
        _, q = _MINPOLY[self.field]
        return 2 * self.x + q * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def inverse_unit(self) -> QuadInt:
        n = self.norm()
        if abs(n) != 1:
            raise NotDivisible(f"{self} is not a unit")
        c = self.conjugate()
        return QuadInt(c.x * n, c.y * n, self.field)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- embeddings and signs ---------------------------------------------
    def embed(self) -> tuple[float, float]:
        """Both real embeddings; the first uses the positive square root.

        Diagnostic only: every decision in the package is made with exact
        integer sign tests.
        """
        p, q = _MINPOLY[self.field]
        r = math.sqrt(q * q + 4 * p)
        return (self.x + self.y * (q + r) / 2, self.x + self.y * (q - r) / 2)

    def signs(self) -> tuple[int, int]:
        p, q = _MINPOLY[self.field]
        disc = q * q + 4 * p
        a = 2 * self.x + q * self.y
        return (_sign_sqrt(a, self.y, disc), _sign_sqrt(a, -self.y, disc))

    def is_totally_positive(self) -> bool:
        return self.signs() == (1, 1)

    def __str__(self) -> str:
        sym = "√3" if self.field == K3 else "ω"
        if self.y == 0:
            return str(self.x)
        if self.x == 0:
            return f"{self.y}{sym}"
        return f"{self.x}{self.y:+d}{sym}"


def _sign_sqrt(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for a positive non-square ``d``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    return sa if a * a > b * b * d else sb


@dataclass(frozen=True)
class FieldContext:
    field_id: str
    d: int
    fundamental_unit: QuadInt
    fundamental_unit_norm: int
    tp_unit_generator: QuadInt
    pi2: QuadInt
    pi2p: QuadInt | None
    two_splitting: str
    # the different, for reference only: (2*sqrt3) resp. (sqrt17)
    different: QuadInt

    def elem(self, x: int, y: int = 0) -> QuadInt:
        return QuadInt(x, y, self.field_id)

    @property
    def one(self) -> QuadInt:
        return QuadInt(1, 0, self.field_id)


@lru_cache(maxsize=None)
def make_context(field_id: str) -> FieldContext:
    _check_field(field_id)
    if field_id == K3:
        eps = QuadInt(2, 1, K3)
        return FieldContext(K3, 3, eps, eps.norm(), eps, QuadInt(1, 1, K3),
                            None, "ramified", QuadInt(0, 2, K3))
    eps = QuadInt(3, 2, K17)
    return FieldContext(K17, 17, eps, eps.norm(), eps * eps,
                        QuadInt(2, 1, K17), QuadInt(3, -1, K17), "split",
                        QuadInt(-1, 2, K17))


# -- divisibility -------------------------------------------------------------

def exact_quotient(a: QuadInt, b: QuadInt) -> tuple[Fraction, Fraction]:
    """Coordinates of ``a/b`` as exact rationals."""
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in O_K")
    num = a * b.conjugate()
    return Fraction(num.x, n), Fraction(num.y, n)


def divides(a: QuadInt, b: QuadInt) -> bool:
    """True iff ``a / b`` lies in O_K (``b`` nonzero)."""
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in O_K")
    num = a * b.conjugate()
    return num.x % n == 0 and num.y % n == 0


def div_exact(a: QuadInt, b: QuadInt) -> QuadInt:
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in O_K")
    num = a * b.conjugate()
    if num.x % n or num.y % n:
        raise NotDivisible(f"{b} does not divide {a}")
    return QuadInt(num.x // n, num.y // n, a.field)


def _round_half_up(f: Fraction) -> int:
    return math.floor(f + Fraction(1, 2))


def euclid_divmod(a: QuadInt, b: QuadInt) -> tuple[QuadInt, QuadInt]:
    """One norm-Euclidean step: ``a = k*b + r`` with ``|N(r)| < |N(b)|``."""
    fx, fy = exact_quotient(a, b)
    cx, cy = _round_half_up(fx), _round_half_up(fy)
    nb = abs(b.norm())
    best = None
    for dx, dy in product((0, -1, 1), repeat=2):
        k = QuadInt(cx + dx, cy + dy, a.field)
        r = a - k * b
        nr = abs(r.norm())
        if nr < nb and (best is None or nr < best[0]):
            best = (nr, k, r)
    if best is None:
        raise InternalError(f"no Euclidean remainder for {a} / {b}")
    return best[1], best[2]


def euclid_gcd(a: QuadInt, b: QuadInt) -> QuadInt:
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        _, r = euclid_divmod(a, b)
        a, b = b, r
    return a


# -- units and canonical associates ---------------------------------------------

def _in_window(w: QuadInt, u: QuadInt) -> int:
    """Position of ``log|w1/w2|`` relative to ``[0, log(u1/u2))``.

    Returns -1 below the window, 0 inside, +1 above.  Works for totally
    positive ``w`` and for ``w`` with signs (+, -).
    """
    ub = u.conjugate()
    if w.signs() == (1, 1):
        # w1 >= w2  <=>  y(w) >= 0 ;  w1*u2 < w2*u1  <=>  y(w*ubar) < 0
        if w.y < 0:
            return -1
        return 0 if (w * ub).y < 0 else 1
    # w1 > 0 > w2: |w1| >= |w2| <=> tr(w) >= 0 ; |w1| u2 < |w2| u1 <=> tr(w*ubar) < 0
    if w.trace() < 0:
        return -1
    return 0 if (w * ub).trace() < 0 else 1


def _reduce_into_window(w: QuadInt, u: QuadInt) -> QuadInt:
    e1, e2 = w.embed()
    u1, u2 = u.embed()
    ratio = math.log(abs(e1 / e2)) if e1 and e2 else 0.0
    k = math.floor(ratio / math.log(u1 / u2)) if math.isfinite(ratio) else 0
    if k:
        w = w * (u ** (-k))
    uinv = u.inverse_unit()
    for _ in range(10_000):
        pos = _in_window(w, u)
        if pos == 0:
            return w
        w = w * u if pos < 0 else w * uinv
    raise InternalError(f"window reduction did not converge for {w}")


def canonical_tp_associate(z: QuadInt) -> QuadInt:
    """The unique totally positive associate in the fundamental window.

    Raises NoTotallyPositiveAssociate when ``z`` has no totally positive
    associate (only possible in Q(sqrt 3), for elements of negative norm).
    """
    if z.is_zero():
        raise ValueError("zero has no associates")
    ctx = make_context(z.field)
    w = z
    s = w.signs()
    if s[0] != s[1]:
        if ctx.fundamental_unit_norm == 1:
            raise NoTotallyPositiveAssociate(f"{z} has no totally positive associate")
        w = w * ctx.fundamental_unit
        s = w.signs()
    if s[0] < 0:
        w = -w
    return _reduce_into_window(w, ctx.tp_unit_generator)


def canonical_associate(z: QuadInt) -> QuadInt:
    """Canonical representative of the class of ``z`` modulo units.

    Totally positive when possible; otherwise (Q(sqrt 3), negative norm) the
    associate with signs (+, -) in the same embedding-ratio window.
    """
    try:
        return canonical_tp_associate(z)
    except NoTotallyPositiveAssociate:
        pass
    ctx = make_context(z.field)
    w = z if z.signs()[0] > 0 else -z
    return _reduce_into_window(w, ctx.tp_unit_generator)


def unit_log(u: QuadInt) -> tuple[int, int]:
    """Write a unit as ``sign * eps0**k``; returns ``(sign, k)``."""
    if not u.is_unit():
        raise NotDivisible(f"{u} is not a unit")
    eps = make_context(u.field).fundamental_unit
    e1 = abs(u.embed()[0])
    k = round(math.log(e1) / math.log(abs(eps.embed()[0])))
    for kk in (k, k - 1, k + 1):
        rest = u * (eps ** (-kk))
        if rest.x in (1, -1) and rest.y == 0:
            return rest.x, kk
    raise InternalError(f"could not take unit logarithm of {u}")


def associates(a: QuadInt, b: QuadInt) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return abs(a.norm()) == abs(b.norm()) and divides(a, b)
