"""Quadratic characters, 2-adic case classification and divisor sums."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .idealarith import InvalidInput, factor, ideal_divisors, is_squarefree
from .quadfield import (
    K3,
    K17,
    QuadInt,
    div_exact,
    divides,
    euclid_gcd,
    make_context,
)


# ---------------------------------------------------------------------------
# character specifications

@dataclass(frozen=True)
class CharSpec:
    kind: str
    modulus: QuadInt | None = None
    alpha: QuadInt | None = None
    parts: tuple["CharSpec", ...] = dc_field(default_factory=tuple)

    def __str__(self) -> str:
        if self.kind == "one_of":
            return f"1[{self.modulus}]"
        if self.kind == "psi":
            return f"psi[{self.alpha}]"
        if self.kind == "product":
            return "*".join(str(p) for p in self.parts)
        return self.kind


TRIVIAL = CharSpec("trivial")
CHI4K = CharSpec("chi4K")
RHO2 = CharSpec("rho2")
RHO2P = CharSpec("rho2p")


def one_of(modulus: QuadInt) -> CharSpec:
    return CharSpec("one_of", modulus=modulus)


def psi(alpha: QuadInt) -> CharSpec:
    return CharSpec("psi", alpha=alpha)


def product_of(*specs: CharSpec) -> CharSpec:
    flat: list[CharSpec] = []
    for s in specs:
        if s.kind == "product":
            flat.extend(s.parts)
        elif s.kind != "trivial":
            flat.append(s)
    if not flat:
        return TRIVIAL
    if len(flat) == 1:
        return flat[0]
    return CharSpec("product", parts=tuple(flat))


def is_element_level(spec: CharSpec, field: str) -> bool:
    """True for characters that see the generator, not only the ideal."""
    if spec.kind == "rho2":
        return field == K3
    if spec.kind == "product":
        return any(is_element_level(p, field) for p in spec.parts)
    return False


# ---------------------------------------------------------------------------
# elementary characters

def _chi4(n: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def chi4K(nu: QuadInt) -> int:
    """chi_{-4} composed with the absolute norm; zero on even arguments."""
    if nu.is_zero():
        raise ValueError("character at zero")
    return _chi4(abs(nu.norm()))


def rho2(nu: QuadInt) -> int:
    if nu.is_zero():
        raise ValueError("character at zero")
    if nu.norm() % 2 == 0 and nu.field == K3:
        return 0
    if nu.field == K3:
        return -1 if nu.y % 2 else 1
    # K17: value on the ideal (a + b*omega)
    if nu.x % 2 == 0:
        return 0
    return nu.signs()[1] * _chi4(nu.x)


def rho2p(nu: QuadInt) -> int:
    if nu.field != K17:
        raise ValueError("rho2p exists only for Q(sqrt 17)")
    if nu.is_zero():
        raise ValueError("character at zero")
    a, b = nu.x, nu.y
    if (a + b) % 2 == 0:
        return 0
    return nu.signs()[0] * _chi4(a + b)


def _reduce_mod(z: QuadInt, m: int) -> QuadInt:
    return QuadInt(z.x % m, z.y % m, z.field)


def qr_symbol(beta: QuadInt, pi: QuadInt) -> int:
    """Quadratic residue symbol of ``beta`` modulo the odd prime ``pi``."""
    n = abs(pi.norm())
    if n % 2 == 0:
        raise InvalidInput(f"{pi} is not an odd prime")
    if divides(beta, pi):
        return 0
    f = factor(pi)
    if len(f.factors) != 1 or f.factors[0][1] != 1:
        raise InvalidInput(f"{pi} is not prime")
    # residue field has n elements; reduce coordinates modulo the rational
    # prime below pi, which lies in (pi)
    p = n if _is_prime_int(n) else int(round(n ** 0.5))
    exp = (n - 1) // 2
    result = QuadInt(1, 0, beta.field)
    base = _reduce_mod(beta, p)
    while exp:
        if exp & 1:
            result = _reduce_mod(result * base, p)
        base = _reduce_mod(base * base, p)
        exp >>= 1
    if divides(result - 1, pi):
        return 1
    if divides(result + 1, pi):
        return -1
    raise AssertionError(f"Euler criterion failed for {beta} mod {pi}")


def _is_prime_int(n: int) -> bool:
    from sympy import isprime
    return isprime(n)


# ---------------------------------------------------------------------------
# 2-adic classification

CASES3 = ("A", "B", "C1", "C2", "D")
CASES17 = ("A", "B", "CA", "CB", "D")
COARSE17 = ("E", "F", "G", "Excluded")


def _require_squarefree_at(alpha: QuadInt, pi: QuadInt) -> int:
    if alpha.is_zero():
        raise InvalidInput("alpha must be nonzero")
    v = 0
    z = alpha
    while divides(z, pi):
        z = div_exact(z, pi)
        v += 1
    if v >= 2:
        raise InvalidInput(f"{alpha} is not squarefree")
    return v


def classify3(alpha: QuadInt) -> str:
    if alpha.field != K3:
        raise InvalidInput("classify3 needs an element of Q(sqrt 3)")
    ctx = make_context(K3)
    _require_squarefree_at(alpha, ctx.pi2)
    a, b = alpha.x, alpha.y
    if a % 2 == 0 and b % 2 == 1:
        return "C2"
    if a % 2 == 1 and b % 2 == 1:
        return "D"
    # now a odd and b even
    if b % 4 == 2:
        return "C1"
    m = QuadInt(4, 0, K3) * ctx.pi2
    for c in (1, 3, 5, 7):
        if divides(alpha - c, m):
            return "A" if c in (1, 3) else "B"
    raise AssertionError(f"no residue class mod 4*pi2 for {alpha}")


def _classify_at(alpha: QuadInt, pi: QuadInt) -> str:
    if _require_squarefree_at(alpha, pi) == 1:
        return "D"
    cube = pi ** 3
    for c, label in ((1, "A"), (5, "B"), (7, "CA"), (3, "CB")):
        if divides(alpha - c, cube):
            return label
    raise AssertionError(f"{alpha} is odd but not 1, 3, 5 or 7 mod {pi}^3")


def classify17(alpha: QuadInt) -> tuple[str, str]:
    if alpha.field != K17:
        raise InvalidInput("classify17 needs an element of Q(sqrt 17)")
    ctx = make_context(K17)
    return _classify_at(alpha, ctx.pi2), _classify_at(alpha, ctx.pi2p)


def coarse17(alpha: QuadInt) -> str:
    here, there = classify17(alpha)
    if "CA" in (here, there):
        return "Excluded"
    n = (here == "CB") + (there == "CB")
    return ("E", "F", "G")[n]


_LOCAL_VALUE = {"A": 1, "B": -1, "CA": 0, "CB": 0, "C1": 0, "C2": 0, "D": 0}


def psi_at_prime(alpha: QuadInt, pi: QuadInt) -> int:
    """Value of the character of K(sqrt alpha)/K on the prime ideal (pi)."""
    ctx = make_context(alpha.field)
    if abs(pi.norm()) % 2 == 0:
        if alpha.field == K3:
            return _LOCAL_VALUE[classify3(alpha)]
        here, there = classify17(alpha)
        return _LOCAL_VALUE[here if divides(pi, ctx.pi2) else there]
    return qr_symbol(alpha, pi)


def psi_alpha(alpha: QuadInt, delta: QuadInt) -> int:
    """Character of K(sqrt alpha)/K evaluated on the ideal (delta)."""
    if delta.is_zero():
        raise ValueError("character at zero")
    value = 1
    for pi, e in factor(delta).factors:
        v = psi_at_prime(alpha, pi)
        if v == 0:
            return 0
        if e % 2:
            value *= v
    return value


# ---------------------------------------------------------------------------
# dispatch

def char_value(spec: CharSpec, delta: QuadInt) -> int:
    k = spec.kind
    if k == "trivial":
        return 1
    if k == "chi4K":
        return chi4K(delta)
    if k == "rho2":
        return rho2(delta)
    if k == "rho2p":
        return rho2p(delta)
    if k == "one_of":
        return 1 if euclid_gcd(delta, spec.modulus).is_unit() else 0
    if k == "psi":
        return psi_alpha(spec.alpha, delta)
    if k == "product":
        out = 1
        for part in spec.parts:
            out *= char_value(part, delta)
            if out == 0:
                return 0
        return out
    raise ValueError(f"unknown character kind {k!r}")


# ---------------------------------------------------------------------------
# divisor sums

def _scaled_argument(nu: QuadInt, denom_scale: QuadInt | int) -> QuadInt | None:
    d = QuadInt.of(denom_scale, nu.field)
    if not divides(nu, d):
        return None
    m = div_exact(nu, d)
    if m.is_zero() or not m.is_totally_positive():
        return None
    return m


def _is_k3_twisted_pair(psi1: CharSpec, psi2: CharSpec, field: str) -> bool:
    return field == K3 and is_element_level(psi1, field) and is_element_level(psi2, field)


def sigma(k_minus_1: int, psi1: CharSpec, psi2: CharSpec, nu: QuadInt,
          denom_scale: QuadInt | int = 1) -> int:
    """Twisted divisor sum  sum_{d | m} psi1(d) psi2(m/d) N(d)^k  with m = nu/denom_scale.

    Zero when ``m`` is not a totally positive integer.  The sum runs over
    ideal divisors and is evaluated as a product of local factors.
    """
    m = _scaled_argument(nu, denom_scale)
    if m is None:
        return 0
    if _is_k3_twisted_pair(psi1, psi2, nu.field):
        # both members carry the residue character mod 4; on odd arguments
        # it factors out of every divisor pair
        if m.norm() % 2 == 0:
            return 0
        base1 = _strip_rho2(psi1)
        base2 = _strip_rho2(psi2)
        return rho2(m) * _sigma_local(k_minus_1, base1, base2, m)
    if is_element_level(psi1, nu.field) or is_element_level(psi2, nu.field):
        raise InvalidInput("unsupported mix of element and ideal characters")
    return _sigma_local(k_minus_1, psi1, psi2, m)


def _strip_rho2(spec: CharSpec) -> CharSpec:
    if spec.kind == "rho2":
        return TRIVIAL
    if spec.kind == "product":
        return product_of(*(p for p in spec.parts if p.kind != "rho2"))
    return spec


def _sigma_local(k_minus_1: int, psi1: CharSpec, psi2: CharSpec, m: QuadInt) -> int:
    total = 1
    for pi, e in factor(m).factors:
        a = char_value(psi1, pi)
        b = char_value(psi2, pi)
        n = abs(pi.norm()) ** k_minus_1
        total *= sum(a ** i * b ** (e - i) * n ** i for i in range(e + 1))
        if total == 0:
            return 0
    return total


def sigma_by_divisors(k_minus_1: int, psi1: CharSpec, psi2: CharSpec,
                      nu: QuadInt, denom_scale: QuadInt | int = 1) -> int:
    """Direct divisor enumeration; slow reference for :func:`sigma`.

    Element-level characters are applied to the generator ``d`` and the
    exact cofactor ``m/d``, whichever associate ``d`` happens to be.
    """
    m = _scaled_argument(nu, denom_scale)
    if m is None:
        return 0
    total = 0
    for d in ideal_divisors(m):
        total += (char_value(psi1, d) * char_value(psi2, div_exact(m, d))
                  * abs(d.norm()) ** k_minus_1)
    return total


@lru_cache(maxsize=None)
def check_squarefree(alpha: QuadInt) -> QuadInt:
    if not is_squarefree(alpha):
        raise InvalidInput(f"{alpha} is not squarefree")
    return alpha
