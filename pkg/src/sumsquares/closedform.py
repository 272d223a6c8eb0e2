"""Closed formulas for r2 and r3, representability tests and class numbers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .characters import (
    CHI4K,
    RHO2,
    RHO2P,
    TRIVIAL,
    char_value,
    classify3,
    coarse17,
    one_of,
    psi_alpha,
    rho2,
    sigma,
)
from .idealarith import (
    InvalidInput,
    factor,
    ideal_divisors,
    is_squarefree,
    mobius,
    prime_is_tp_principal,
    reduce_by_unit_squares,
    tp_divisors,
    valuation,
)
from .quadfield import K3, K17, QuadInt, div_exact, divides, make_context, unit_log
from .repcount import r3_brute


class ExcludedAlpha(InvalidInput):
    pass


class NotSquarefree(InvalidInput):
    pass


# Class numbers of the fields with extra roots of unity.
SPECIAL_H = {(K3, "one"): 1, (K3, "eps"): 2, (K17, "one"): 2, (K17, "three"): 1}

# Number of roots of unity w and Hasse unit index Q for each special kind.
_UNIT_DATA = {
    (K3, "one"): (12, 2),
    (K3, "eps"): (2, 2),
    (K17, "one"): (4, 1),
    (K17, "three"): (6, 1),
}


@dataclass(frozen=True)
class ClassNumberResult:
    alpha: QuadInt
    case_label: str
    h: int
    r3_used: int
    special: bool


def _one(field: str) -> QuadInt:
    return QuadInt(1, 0, field)


def _two(field: str) -> QuadInt:
    return QuadInt(2, 0, field)


def _require_tp(nu: QuadInt) -> None:
    if not nu.is_totally_positive():
        raise InvalidInput(f"{nu} is not totally positive")


def one_at_two(field: str):
    """The indicator of ideals prime to 2, as used by the lift identities."""
    ctx = make_context(field)
    return one_of(ctx.pi2 if field == K3 else _two(field))


# ---------------------------------------------------------------------------
# two squares

def r2_closed(nu: QuadInt) -> int:
    _require_tp(nu)
    if nu.field == K3:
        p2 = one_of(make_context(K3).pi2)
        s = sigma(0, CHI4K, TRIVIAL, nu)
        s_odd = sigma(0, CHI4K, p2, nu)
        s_half = sigma(0, CHI4K, p2, nu, 2)
        return 2 * (6 * s + (rho2(nu) - 5) * s_odd - 4 * s_half)
    return 2 * sigma(0, CHI4K, TRIVIAL, nu) + 2 * sigma(0, RHO2, RHO2P, nu)


def _mod4_class17(pi: QuadInt) -> tuple[int, int]:
    """Residues of an odd element modulo the squares of the two primes above 2."""
    return pi.x % 4, (pi.x + pi.y) % 4


def r2_criterion(nu: QuadInt) -> tuple[bool, int]:
    """Representability by two squares read off the prime factorization."""
    _require_tp(nu)
    f = factor(nu)
    if nu.field == K3:
        return _r2_criterion3(nu, f)
    return _r2_criterion17(f)


def _r2_criterion3(nu, f) -> tuple[bool, int]:
    ctx = make_context(K3)
    eps = ctx.fundamental_unit
    e = 0
    split_exps: list[int] = []
    neg_exps: list[int] = []
    normalized = _one(K3)
    for p, m in f.factors:
        if abs(p.norm()) == 2:
            e = m
            normalized = normalized * ctx.pi2 ** m
            continue
        if p.norm() > 0:
            if p.signs()[0] < 0:
                p = -p
            if p.y % 2:
                p = p * eps
            split_exps.append(m)
        else:
            if p.signs()[0] < 0:
                p = -p
            neg_exps.append(m)
        normalized = normalized * p ** m
    _, k = unit_log(div_exact(nu, normalized))
    negs_even = all(n % 2 == 0 for n in neg_exps)
    ok = negs_even and ((e == 0 and k % 2 == 0) or (e > 0 and e % 2 == 0))
    if not ok:
        return False, 0
    count = 1
    for m in split_exps:
        count *= 1 + m
    return True, (4 if e <= 2 else 12) * count


def _r2_criterion17(f) -> tuple[bool, int]:
    parity = 0
    count = 4
    for p, m in f.factors:
        if abs(p.norm()) % 2 == 0:
            parity += m
            continue
        cls = _mod4_class17(p)
        if cls == (1, 1):
            count *= 1 + m
        elif cls == (3, 3):
            count *= 1 + m
            parity += m
        elif m % 2:
            return False, 0
    if parity % 2:
        return False, 0
    return True, count


# ---------------------------------------------------------------------------
# three squares

def _residue_is_seven(mu: QuadInt, pi: QuadInt) -> bool:
    return divides(mu - 7, pi ** 3)


def representable3(nu: QuadInt) -> bool:
    _require_tp(nu)
    if nu.field == K3:
        return nu.y % 2 == 0
    ctx = make_context(K17)
    v = valuation(nu, ctx.pi2)
    vp = valuation(nu, ctx.pi2p)
    for e in range(v // 2 + 1):
        for ep in range(vp // 2 + 1):
            mu = div_exact(nu, ctx.pi2 ** (2 * e) * ctx.pi2p ** (2 * ep))
            if _residue_is_seven(mu, ctx.pi2) or _residue_is_seven(mu, ctx.pi2p):
                return False
    return True


def special_kind(alpha: QuadInt) -> str | None:
    """'one', 'eps' or 'three' when K(sqrt(-alpha)) has extra units, else None."""
    w, _ = reduce_by_unit_squares(alpha)
    if alpha.field == K3:
        if alpha.is_unit():
            _, k = unit_log(alpha)
            return "eps" if k % 2 else "one"
        return None
    one, _ = reduce_by_unit_squares(_one(K17))
    three, _ = reduce_by_unit_squares(QuadInt(3, 0, K17))
    if w == one:
        return "one"
    if w == three:
        return "three"
    return None


def _check_alpha(alpha: QuadInt) -> None:
    _require_tp(alpha)
    if not is_squarefree(alpha):
        raise NotSquarefree(f"{alpha} is not squarefree")


def case_label(alpha: QuadInt) -> str:
    if alpha.field == K3:
        return classify3(alpha)
    return coarse17(alpha)


_C17 = {"E": 1, "F": 2, "G": 4}


@lru_cache(maxsize=None)
def class_number(alpha: QuadInt) -> ClassNumberResult:
    _check_alpha(alpha)
    label = case_label(alpha)
    kind = special_kind(alpha)
    if alpha.field == K3:
        if kind is not None:
            return ClassNumberResult(alpha, label, SPECIAL_H[(K3, kind)], r3_brute(alpha), True)
        if label in ("C2", "D"):
            r3 = r3_brute(4 * alpha)
            divisor = 36
        else:
            r3 = r3_brute(alpha)
            divisor = {"A": 48, "B": 24, "C1": 12}[label]
    else:
        if label == "Excluded":
            raise ExcludedAlpha(f"{alpha} is 7 modulo the cube of a prime above 2")
        if kind is not None:
            return ClassNumberResult(alpha, label, SPECIAL_H[(K17, kind)], r3_brute(alpha), True)
        r3 = r3_brute(alpha)
        divisor = 6 * _C17[label]
    if r3 % divisor:
        raise AssertionError(f"r3 = {r3} is not divisible by {divisor} for {alpha}")
    return ClassNumberResult(alpha, label, r3 // divisor, r3, False)


def l_value_ratio(alpha: QuadInt) -> Fraction:
    """L_F(0, chi~) divided by the class number of K(sqrt(-alpha))."""
    kind = special_kind(alpha)
    w, q = _UNIT_DATA.get((alpha.field, kind), (2, 1))
    if alpha.field == K3:
        return Fraction(2, 3 * w * q)
    return Fraction(8, w * q)


def _sigma1(nu: QuadInt) -> int:
    return sigma(1, TRIVIAL, TRIVIAL, nu)


def _sigma1_odd(nu: QuadInt) -> int:
    return sigma(1, one_at_two(nu.field), TRIVIAL, nu)


def weight3(label: str, nu: QuadInt) -> Fraction:
    """Weight-two Eisenstein coefficient combination attached to a K3 case."""
    s1, s1o = _sigma1(nu), _sigma1_odd(nu)
    if label == "A":
        return Fraction(3 * s1 + s1o)
    if label == "B":
        return Fraction(s1 + s1o)
    if label == "C1":
        return Fraction(s1)
    return Fraction(s1 - s1o, 2)


def lift_rhs(alpha: QuadInt, nu: QuadInt) -> Fraction:
    """Right side of the coefficientwise lift identity at ``nu``."""
    h = class_number(alpha).h
    lf = l_value_ratio(alpha) * h
    if alpha.field == K3:
        return 36 * lf * weight3(classify3(alpha), nu)
    c = _C17[coarse17(alpha)]
    return Fraction(3 * c, 8) * lf * 4 * _sigma1_odd(nu)


def lift_lhs(alpha: QuadInt, nu: QuadInt) -> int:
    """Twisted divisor sum of r3 values: sum_d psi_{-alpha} 1_2 (d) r3(alpha (nu/d)^2)."""
    odd = one_at_two(alpha.field)
    total = 0
    for d in ideal_divisors(nu):
        if char_value(odd, d) == 0:
            continue
        chi = psi_alpha(-alpha, d)
        if chi == 0:
            continue
        m = div_exact(nu, d)
        total += chi * r3_brute(alpha * m * m)
    return total


def verify_cfc(alpha: QuadInt, nu: QuadInt) -> tuple[Fraction, Fraction]:
    _check_alpha(alpha)
    _require_tp(nu)
    if alpha.field == K17 and coarse17(alpha) == "Excluded":
        raise ExcludedAlpha(f"{alpha} has no lift formula")
    return Fraction(lift_lhs(alpha, nu)), lift_rhs(alpha, nu)


def closed_form_applies(nu: QuadInt) -> bool:
    """Whether the inverted formula covers ``nu`` (every odd prime totally positive)."""
    if nu.field != K3:
        return True
    return all(prime_is_tp_principal(p) or abs(p.norm()) == 2
               for p, _ in factor(nu).factors)


def is_documented_edge(alpha: QuadInt, nu: QuadInt) -> bool:
    """alpha in the unit-square class of 1 in Q(sqrt 3) at nu = 1.

    The special display gives 4 there while r3(1) = 6.
    """
    return alpha.field == K3 and special_kind(alpha) == "one" and nu == _one(K3)


def r3_closed(alpha: QuadInt, nu: QuadInt) -> int:
    """r3(alpha * nu**2) from the Moebius-inverted lift identity."""
    _check_alpha(alpha)
    _require_tp(nu)
    field = alpha.field
    if field == K17 and coarse17(alpha) == "Excluded":
        return 0
    if not closed_form_applies(nu):
        raise InvalidInput(f"{nu} has a prime factor without a totally positive generator")
    h = class_number(alpha).h
    scale = l_value_ratio(alpha) * h
    odd = one_at_two(field)
    label = classify3(alpha) if field == K3 else coarse17(alpha)
    total = Fraction(0)
    for d in tp_divisors(nu):
        mu = mobius(d)
        if mu == 0 or char_value(odd, d) == 0:
            continue
        chi = psi_alpha(-alpha, d)
        if chi == 0:
            continue
        rest = div_exact(nu, d)
        if field == K3:
            total += mu * chi * weight3(label, rest)
        else:
            total += mu * chi * _sigma1_odd(rest)
    if field == K3:
        value = 36 * scale * total
    else:
        value = Fraction(3 * _C17[label], 8) * scale * 4 * total
    if value.denominator != 1:
        raise AssertionError(f"non-integral r3 closed form {value}")
    return int(value)
