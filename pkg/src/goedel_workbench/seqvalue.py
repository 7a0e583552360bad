"""Exact truth-value sequences ``value(n) = alpha + beta/(n + gamma)`` with a
finite table of overrides, indexed by the natural numbers.

Two closed forms compare eventually with a fixed sign: multiplying the
difference by ``(n + g1)(n + g2)`` leaves a polynomial of degree at most two,
so beyond a Cauchy root bound its sign is constant.  Everything before that
bound is materialised into overrides.  This makes min, max, the Goedel
conditional, Delta and gluing closed on sequences, and inf/sup exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Mapping

ZERO = Fraction(0)
ONE = Fraction(1)

# materialised prefixes longer than this are refused
MAX_PREFIX = 200_000


class SeqError(ValueError):
    pass


@dataclass(frozen=True)
class SeqValue:
    alpha: Fraction
    beta: Fraction = ZERO
    gamma: Fraction = ONE
    overrides: tuple = field(default=())  # sorted ((n, value), ...)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        ov = self.overrides
        if isinstance(ov, Mapping):
            ov = ov.items()
        ov = tuple(sorted((int(n), Fraction(v)) for n, v in ov))
        object.__setattr__(self, "overrides", ov)
        if self.gamma <= 0:
            raise SeqError("gamma must be positive")
        for n, v in ov:
            if n < 0:
                raise SeqError("override index must be a natural number")
            if not ZERO <= v <= ONE:
                raise SeqError(f"override value {v} outside [0, 1]")
        if not ZERO <= self.alpha <= ONE:
            raise SeqError(f"limit {self.alpha} outside [0, 1]")
        first = self.tail_value(self.first_tail_index())
        if not ZERO <= first <= ONE:
            raise SeqError(f"value {first} at n={self.first_tail_index()} outside [0, 1]")

    @classmethod
    def const(cls, v) -> "SeqValue":
        return cls(Fraction(v))

    # ------------------------------------------------------------ access
    @property
    def override_map(self) -> dict[int, Fraction]:
        return dict(self.overrides)

    def tail_value(self, n: int) -> Fraction:
        return self.alpha + self.beta / (n + self.gamma)

    def value(self, n: int) -> Fraction:
        for k, v in self.overrides:
            if k == n:
                return v
        return self.tail_value(n)

    def first_tail_index(self) -> int:
        taken = {k for k, _ in self.overrides}
        n = 0
        while n in taken:
            n += 1
        return n

    def prefix_end(self) -> int:
        return self.overrides[-1][0] + 1 if self.overrides else 0

    @property
    def is_constant(self) -> bool:
        return self.beta == 0 and all(v == self.alpha for _, v in self.overrides)

    @property
    def limit(self) -> Fraction:
        return self.alpha

    def normalized(self) -> "SeqValue":
        """Drop overrides that agree with the closed form; a constant tail is
        written with ``gamma = 1``."""
        gamma = self.gamma if self.beta != 0 else ONE
        ov = tuple((n, v) for n, v in self.overrides if v != self.tail_value(n))
        return SeqValue(self.alpha, self.beta, gamma, ov)

    # ---------------------------------------------------- inf / sup
    def inf(self) -> tuple[Fraction, bool]:
        """Return ``(infimum, attained)``."""
        if self.beta > 0:
            tail, tail_hit = self.alpha, False
        else:
            # increasing or constant tail: minimum at the first tail index
            tail, tail_hit = self.tail_value(self.first_tail_index()), True
        vals = [v for _, v in self.overrides]
        best = min(vals + [tail])
        return best, (tail_hit and tail == best) or best in vals

    def sup(self) -> tuple[Fraction, bool]:
        if self.beta < 0:
            tail, tail_hit = self.alpha, False
        else:
            tail, tail_hit = self.tail_value(self.first_tail_index()), True
        vals = [v for _, v in self.overrides]
        best = max(vals + [tail])
        return best, (tail_hit and tail == best) or best in vals

    def __str__(self) -> str:
        if self.beta == 0:
            text = _q(self.alpha)
        else:
            text = f"{_q(self.alpha)} + {_q(self.beta)}/(n+{_q(self.gamma)})"
        if self.overrides:
            text += " [" + ", ".join(f"{n}: {_q(v)}" for n, v in self.overrides) + "]"
        return text


def _q(x: Fraction) -> str:
    return str(x)


def eventual_sign(s: SeqValue, t: SeqValue) -> tuple[int, int]:
    """Sign of ``tail_s(n) - tail_t(n)`` for all ``n >= N``; returns (sign, N)."""
    da = s.alpha - t.alpha
    g1, g2 = s.gamma, t.gamma
    a2 = da
    a1 = da * (g1 + g2) + s.beta - t.beta
    a0 = da * g1 * g2 + s.beta * g2 - t.beta * g1
    coeffs = [a0, a1, a2]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return 0, 0
    lead = coeffs[-1]
    sign = 1 if lead > 0 else -1
    if len(coeffs) == 1:
        return sign, 0
    bound = 1 + max(abs(c / lead) for c in coeffs[:-1])
    return sign, floor(bound) + 1


def combine(
    s: SeqValue,
    t: SeqValue,
    op: Callable[[Fraction, Fraction], Fraction],
    tail: Callable[[int, SeqValue, SeqValue], tuple],
) -> SeqValue:
    """Pointwise ``op`` of two sequences.

    ``tail(sign, s, t)`` names the closed form ``(alpha, beta, gamma)`` that
    ``op`` agrees with beyond the point where the eventual order of the two
    tails is fixed.  The closed form alone may leave [0, 1] at indices
    covered by the materialised prefix.
    """
    sign, n0 = eventual_sign(s, t)
    end = max(n0, s.prefix_end(), t.prefix_end())
    if end > MAX_PREFIX:
        raise SeqError(f"sequence prefix of length {end} exceeds limit {MAX_PREFIX}")
    alpha, beta, gamma = tail(sign, s, t)
    ov = {n: op(s.value(n), t.value(n)) for n in range(end)}
    return SeqValue(alpha, beta, gamma, ov).normalized()


def _tail_of(s: SeqValue) -> tuple:
    return s.alpha, s.beta, s.gamma


_ONE_TAIL = (ONE, ZERO, ONE)
_ZERO_TAIL = (ZERO, ZERO, ONE)


def seq_min(s: SeqValue, t: SeqValue) -> SeqValue:
    return combine(s, t, min, lambda sg, a, b: _tail_of(a if sg <= 0 else b))


def seq_max(s: SeqValue, t: SeqValue) -> SeqValue:
    return combine(s, t, max, lambda sg, a, b: _tail_of(a if sg >= 0 else b))


def goedel_imp(a: Fraction, b: Fraction) -> Fraction:
    return ONE if a <= b else b


def seq_imp(s: SeqValue, t: SeqValue) -> SeqValue:
    return combine(
        s, t, goedel_imp, lambda sg, a, b: _ONE_TAIL if sg <= 0 else _tail_of(b)
    )


def seq_delta(s: SeqValue) -> SeqValue:
    one = SeqValue.const(1)
    return combine(
        s,
        one,
        lambda a, _: ONE if a == ONE else ZERO,
        lambda sg, a, b: _ONE_TAIL if sg == 0 else _ZERO_TAIL,
    )


def glue_value(v: Fraction, omega: Fraction) -> Fraction:
    return v if v <= omega else ONE


def seq_glue(s: SeqValue, omega: Fraction) -> SeqValue:
    w = SeqValue.const(omega)
    return combine(
        s,
        w,
        lambda a, _: glue_value(a, omega),
        lambda sg, a, b: _tail_of(a) if sg <= 0 else _ONE_TAIL,
    )


def parse_seq(text: str) -> SeqValue:
    """Parse ``alpha + beta/(n+gamma)``, ``alpha - beta/(n+gamma)`` or a
    constant.  Rationals are written ``p/q`` or as integers."""
    from .rationals import parse_rational

    src = text.replace(" ", "")
    if "(n+" not in src:
        return SeqValue.const(parse_rational(src))
    head, _, rest = src.partition("/(n+")
    if not rest.endswith(")"):
        raise SeqError(f"malformed sequence {text!r}")
    gamma = parse_rational(rest[:-1])
    # split head into alpha and beta at the last top-level sign
    idx = max(head.rfind("+"), head.rfind("-"))
    if idx <= 0:
        alpha, beta = ZERO, parse_rational(head)
    else:
        alpha = parse_rational(head[:idx])
        beta = parse_rational(head[idx + 1:])
        if head[idx] == "-":
            beta = -beta
    return SeqValue(alpha, beta, gamma)


def format_seq(s: SeqValue) -> str:
    if s.beta == 0:
        return str(s.alpha)
    sign = "+" if s.beta > 0 else "-"
    return f"{s.alpha} {sign} {abs(s.beta)}/(n+{s.gamma})"
