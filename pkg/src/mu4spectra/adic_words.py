"""Exact arithmetic on eventually periodic words over {0, ..., m-1}.

A word ``u v v v ...`` is read least-significant digit first, so it names an
m-adic integer. Integers embed as words ending in ``0^inf`` (non-negative) or
``(m-1)^inf`` (negative). Sums, negatives, integer multiples and quotients by
integers coprime to m of eventually periodic words are again eventually
periodic, and every operation here returns the canonical representative.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

__all__ = [
    "EventuallyPeriodicWord",
    "SignedDigitWord",
    "from_integer",
    "to_integer",
    "digit_at",
    "add",
    "negate",
    "subtract",
    "scalar_mul",
    "div_by_coprime",
    "rho_distance",
    "block_recode",
    "block_decode",
    "series_prefix",
    "series_word",
    "h_p_prefix",
    "h_p_word",
    "parse_word",
    "format_word",
    "parse_signed_word",
    "format_signed_word",
]


def _canonical(pre: Sequence, per: Sequence) -> tuple[tuple, tuple]:
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise ValueError("period must be nonempty")
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            per = per[:d]
            break
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return pre, per


class _Periodic:
    """Shared indexing for words stored as (preperiod, period)."""

    preperiod: tuple
    period: tuple

    def digit(self, n: int):
        """Digit at 1-based position ``n``."""
        if n < 1:
            raise ValueError(f"positions start at 1, got {n}")
        k = n - 1
        if k < len(self.preperiod):
            return self.preperiod[k]
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> list:
        return [self.digit(k) for k in range(1, n + 1)]

    def _next_phase(self, phase: int) -> int:
        phase += 1
        if phase == len(self.preperiod) + len(self.period):
            phase = len(self.preperiod)
        return phase

    def _phase_digit(self, phase: int):
        if phase < len(self.preperiod):
            return self.preperiod[phase]
        return self.period[phase - len(self.preperiod)]

    @property
    def is_zero_tail(self) -> bool:
        return self.period == (0,)


@dataclass(frozen=True)
class EventuallyPeriodicWord(_Periodic):
    """A word ``preperiod * period^inf`` over the alphabet {0, ..., m-1}.

    Construction canonicalizes: the period is made primitive and the
    preperiod as short as possible, so ``==`` and ``hash`` are value
    semantics.
    """

    m: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (0,)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.m}")
        for d in (*self.preperiod, *self.period):
            if not 0 <= d < self.m:
                raise ValueError(f"digit {d} outside alphabet 0..{self.m - 1}")
        pre, per = _canonical(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def zero(cls, m: int = 4) -> "EventuallyPeriodicWord":
        return cls(m, (), (0,))

    def shift_in_zeros(self, k: int) -> "EventuallyPeriodicWord":
        """Return ``0^k * self``, which is ``m^k`` times the word."""
        return EventuallyPeriodicWord(self.m, (0,) * k + self.preperiod, self.period)

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return subtract(self, other)

    def __rmul__(self, a: int):
        return scalar_mul(a, self)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class SignedDigitWord(_Periodic):
    """Eventually periodic word over an explicit finite set of integer digits.

    Used for labels ``a_1 a_2 ...`` (digits from ``{0} | C``) and for paths in
    ``{-p, 0, p}``. Digits are stored as their integer values; ``indices``
    gives the positions in ``alphabet`` when needed.
    """

    alphabet: tuple[int, ...]
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (0,)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"alphabet digits must be distinct: {alphabet}")
        if 0 not in alphabet:
            alphabet = (0, *alphabet)
        allowed = set(alphabet)
        for d in (*self.preperiod, *self.period):
            if d not in allowed:
                raise ValueError(f"digit {d} not in alphabet {alphabet}")
        pre, per = _canonical(self.preperiod, self.period)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def indices(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        pos = {d: i for i, d in enumerate(self.alphabet)}
        return tuple(pos[d] for d in self.preperiod), tuple(pos[d] for d in self.period)

    def __str__(self) -> str:
        return format_signed_word(self)


# ---------------------------------------------------------------------------
# integers


def from_integer(value: int, m: int = 4) -> EventuallyPeriodicWord:
    """Base-m expansion of an integer (negative integers end in (m-1)^inf)."""
    if m < 2:
        raise ValueError(f"alphabet size must be >= 2, got {m}")
    digits = []
    if value >= 0:
        while value:
            value, d = divmod(value, m)
            digits.append(d)
        return EventuallyPeriodicWord(m, tuple(digits), (0,))
    while value != -1:
        value, d = divmod(value, m)
        digits.append(d)
    return EventuallyPeriodicWord(m, tuple(digits), (m - 1,))


def to_integer(word: EventuallyPeriodicWord) -> int | None:
    """Integer named by ``word``, or None when the tail is not 0 or m-1."""
    m = word.m
    head = sum(d * m**i for i, d in enumerate(word.preperiod))
    if word.period == (0,):
        return head
    if word.period == (m - 1,):
        return head - m ** len(word.preperiod)
    return None


def digit_at(value: int, n: int, m: int = 4) -> int:
    """n-th base-m digit of ``value`` via floor quotients (n >= 1).

    Only ``value mod m**n`` matters, so any congruent integer gives the same
    digit.
    """
    if n < 1:
        raise ValueError(f"positions start at 1, got {n}")
    return value // m ** (n - 1) - m * (value // m**n)


# ---------------------------------------------------------------------------
# the group structure


def _run_machine(start: Hashable, step: Callable) -> tuple[list, list]:
    # step(state) -> (digit, next_state) over a finite state space; the digit
    # stream is periodic from the first repeated state on.
    seen: dict = {}
    out: list = []
    state = start
    while state not in seen:
        seen[state] = len(out)
        digit, state = step(state)
        out.append(digit)
    i = seen[state]
    return out[:i], out[i:]


def _check_same_alphabet(w1: EventuallyPeriodicWord, w2: EventuallyPeriodicWord) -> None:
    if w1.m != w2.m:
        raise ValueError(f"alphabet mismatch: {w1.m} vs {w2.m}")


def _aligned_blocks(word: EventuallyPeriodicWord, s: int) -> tuple[list[int], list[int]]:
    # words with preperiod and period both of length exactly s
    return word.prefix(s), [word.digit(k) for k in range(s + 1, 2 * s + 1)]


def _block_value(digits: Sequence[int], m: int) -> int:
    return sum(d * m**i for i, d in enumerate(digits))


def _block_digits(value: int, m: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        value, d = divmod(value, m)
        out.append(d)
    return out


def add(w1: EventuallyPeriodicWord, w2: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """Digitwise sum with carries in {0, 1}.

    Both words are rewritten with preperiod and period of a common length s
    and regrouped into single digits over m**s. Over that alphabet the carry
    settles after at most two positions.
    """
    _check_same_alphabet(w1, w2)
    m = w1.m
    lcm = math.lcm(len(w1.period), len(w2.period))
    longest = max(len(w1.preperiod), len(w2.preperiod), 1)
    s = lcm * -(-longest // lcm)
    base = m**s

    head1, tail1 = _aligned_blocks(w1, s)
    head2, tail2 = _aligned_blocks(w2, s)
    first = _block_value(head1, m) + _block_value(head2, m)
    gamma1, carry = first % base, first // base
    tail_sum = _block_value(tail1, m) + _block_value(tail2, m)

    if tail_sum < base - 1:
        pre, per = [gamma1, tail_sum + carry], [tail_sum]
    elif tail_sum == base - 1:
        pre, per = [gamma1], [0 if carry else base - 1]
    else:
        pre, per = [gamma1, tail_sum + carry - base], [tail_sum + 1 - base]

    digits_pre = [d for block in pre for d in _block_digits(block, m, s)]
    digits_per = [d for block in per for d in _block_digits(block, m, s)]
    return EventuallyPeriodicWord(m, tuple(digits_pre), tuple(digits_per))


def negate(word: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """Additive inverse: ``0^(n-1) (m - i_n) (m-1-i_{n+1}) ...``; 0^inf is fixed."""
    m = word.m
    pre, per = list(word.preperiod), list(word.period)
    if not any(pre) and not any(per):
        return word
    if not any(pre):
        pre = pre + per
    n = next(i for i, d in enumerate(pre) if d)
    new_pre = [0] * n + [m - pre[n]] + [m - 1 - d for d in pre[n + 1:]]
    new_per = [m - 1 - d for d in per]
    return EventuallyPeriodicWord(m, tuple(new_pre), tuple(new_per))


def subtract(w1: EventuallyPeriodicWord, w2: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    return add(w1, negate(w2))


def _positive_multiple(a: int, word: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    m = word.m

    def step(state):
        phase, carry = state
        x = a * word._phase_digit(phase) + carry
        return x % m, (word._next_phase(phase), x // m)

    pre, per = _run_machine((0, 0), step)
    return EventuallyPeriodicWord(m, tuple(pre), tuple(per))


def _power_of(a: int, m: int) -> int | None:
    k = 0
    while a % m == 0:
        a //= m
        k += 1
    return k if a == 1 else None


def scalar_mul(a: int, word: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """``a * word``: digits ``x_n = a i_n + k_{n-1} - m k_n`` for a > 0."""
    if a == 0:
        return EventuallyPeriodicWord.zero(word.m)
    if a < 0:
        return negate(scalar_mul(-a, word))
    k = _power_of(a, word.m)
    if k is not None:
        return word.shift_in_zeros(k)
    return _positive_multiple(a, word)


def div_by_coprime(a: int, word: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """The unique j with ``a * j == word``; requires gcd(a, m) == 1.

    Digits are produced from ``a j_n + k_{n-1} = m k_n + i_n`` with carries
    in {0, ..., |a|-1}, so the quotient's period is at most |a| times the
    input period.
    """
    m = word.m
    if a == 0 or math.gcd(a, m) != 1:
        raise ValueError(f"divisor {a} is not a unit modulo {m}")
    if a < 0:
        return negate(div_by_coprime(-a, word))
    inverse = pow(a, -1, m)

    def step(state):
        phase, carry = state
        i = word._phase_digit(phase)
        j = ((i - carry) * inverse) % m
        return j, (word._next_phase(phase), (a * j + carry - i) // m)

    pre, per = _run_machine((0, 0), step)
    return EventuallyPeriodicWord(m, tuple(pre), tuple(per))


def rho_distance(w1: EventuallyPeriodicWord, w2: EventuallyPeriodicWord) -> Fraction:
    """``m**-n`` for the first differing position n, and 0 for equal words."""
    _check_same_alphabet(w1, w2)
    if w1 == w2:
        return Fraction(0)
    horizon = max(len(w1.preperiod), len(w2.preperiod)) + math.lcm(len(w1.period), len(w2.period))
    n = next(k for k in range(1, horizon + 1) if w1.digit(k) != w2.digit(k))
    return Fraction(1, w1.m**n)


# ---------------------------------------------------------------------------
# block recoding


def block_recode(s: int, word: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """Group digits in blocks of s: ``sigma_k = sum_i m^(i-1) i_{(k-1)s+i}``."""
    if s < 1:
        raise ValueError(f"block length must be >= 1, got {s}")
    m = word.m
    head = s * -(-len(word.preperiod) // s)
    span = math.lcm(len(word.period), s)
    pre = word.prefix(head)
    per = [word.digit(k) for k in range(head + 1, head + span + 1)]
    group = lambda ds: tuple(_block_value(ds[i:i + s], m) for i in range(0, len(ds), s))
    return EventuallyPeriodicWord(m**s, group(pre), group(per))


def block_decode(s: int, word: EventuallyPeriodicWord, m: int = 4) -> EventuallyPeriodicWord:
    """Inverse of :func:`block_recode` for a word over ``m**s`` symbols."""
    if word.m != m**s:
        raise ValueError(f"word alphabet {word.m} is not {m}**{s}")
    expand = lambda ds: tuple(d for block in ds for d in _block_digits(block, m, s))
    return EventuallyPeriodicWord(m, expand(word.preperiod), expand(word.period))


# ---------------------------------------------------------------------------
# formal series sum_k m^(k-1) Pi(lambda_k)


def series_prefix(values: Sequence[int], n: int, m: int = 4) -> list[int]:
    """First n digits of ``sum_k m^(k-1) Pi(values[k-1])``.

    The term with index k starts with k-1 zeros, so digit t depends only on
    ``values[:t]``; digit t is read off the integer
    ``d_t = sum_{k<=t} sum_{j<=t+1-k} m^(j+k-2) i_j^(k)``.
    """
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    if len(values) < n:
        raise ValueError(f"need {n} terms, got {len(values)}")
    digits = [[digit_at(v, j, m) for j in range(1, n + 1)] for v in values[:n]]
    out = []
    for t in range(1, n + 1):
        d = sum(
            m ** (j + k - 2) * digits[k - 1][j - 1]
            for k in range(1, t + 1)
            for j in range(1, t + 2 - k)
        )
        out.append(digit_at(d, t, m))
    return out


def series_word(preperiod: Sequence[int], period: Sequence[int], m: int = 4) -> EventuallyPeriodicWord:
    """Exact ``sum_k m^(k-1) omega_k`` for an eventually periodic integer sequence.

    With ``omega = u v^inf`` the sum is ``U + m^|u| V / (1 - m^|v|)`` where U
    and V are the finite sums over u and v; ``1 - m^|v|`` is a unit.
    """
    head = sum(m**i * x for i, x in enumerate(preperiod))
    cycle = sum(m**i * x for i, x in enumerate(period))
    tail = div_by_coprime(1 - m ** len(period), from_integer(cycle, m))
    return add(from_integer(head, m), scalar_mul(m ** len(preperiod), tail))


def _check_hp_input(p: int, omega: SignedDigitWord) -> None:
    if p % 2 == 0:
        raise ValueError(f"p must be odd, got {p}")
    stray = set(omega.preperiod + omega.period) - {-p, 0, p}
    if stray:
        raise ValueError(f"digits {sorted(stray)} not in {{-{abs(p)}, 0, {abs(p)}}}")


def h_p_prefix(p: int, omega: SignedDigitWord, n: int) -> list[int]:
    """First n base-4 digits of ``sum_k Pi(4^(k-1) omega_k)`` for omega over {-p,0,p}."""
    _check_hp_input(p, omega)
    return series_prefix(omega.prefix(n), n)


def h_p_word(p: int, omega: SignedDigitWord) -> EventuallyPeriodicWord:
    """The full (eventually periodic) base-4 word of ``h_p(omega)``."""
    _check_hp_input(p, omega)
    return series_word(omega.preperiod, omega.period)


# ---------------------------------------------------------------------------
# text format  "<preperiod>(<period>)"

_WORD_RE = re.compile(r"^\s*([^()]*)\(([^()]*)\)\s*$")


def _split(text: str) -> tuple[str, str]:
    match = _WORD_RE.match(text)
    if not match:
        raise ValueError(f"expected '<preperiod>(<period>)', got {text!r}")
    return match.group(1).strip(), match.group(2).strip()


def _tokens(group: str, comma_mode: bool) -> list[int]:
    try:
        if comma_mode:
            return [int(t) for t in group.split(",") if t.strip()]
        return [int(ch) for ch in group if not ch.isspace()]
    except ValueError:
        raise ValueError(f"bad digit group {group!r}") from None


def parse_word(text: str, m: int = 4) -> EventuallyPeriodicWord:
    """Parse ``"21(0)"`` or, with commas, ``"10,3(12,)"``."""
    pre, per = _split(text)
    comma_mode = "," in text
    period = _tokens(per, comma_mode)
    if not period:
        raise ValueError(f"empty period in {text!r}")
    return EventuallyPeriodicWord(m, tuple(_tokens(pre, comma_mode)), tuple(period))


def format_word(word: EventuallyPeriodicWord) -> str:
    digits = (*word.preperiod, *word.period)
    if all(d < 10 for d in digits):
        return "".join(map(str, word.preperiod)) + "(" + "".join(map(str, word.period)) + ")"
    pre = ",".join(map(str, word.preperiod))
    per = ",".join(map(str, word.period))
    if len(word.preperiod) <= 1 and len(word.period) == 1:
        # force comma mode on parse
        per += ","
    return f"{pre}({per})"


def parse_signed_word(text: str, alphabet: Iterable[int] | None = None) -> SignedDigitWord:
    """Parse a signed word such as ``"-3,0(3,15)"`` or ``"(17)"``.

    Groups are comma-separated integers. Without an explicit alphabet the
    alphabet is ``{0}`` plus the digits that occur.
    """
    pre, per = _split(text)
    preperiod, period = _tokens(pre, True), _tokens(per, True)
    if not period:
        raise ValueError(f"empty period in {text!r}")
    if alphabet is None:
        alphabet = sorted({0, *preperiod, *period})
    return SignedDigitWord(tuple(alphabet), tuple(preperiod), tuple(period))


def format_signed_word(word: SignedDigitWord) -> str:
    return ",".join(map(str, word.preperiod)) + "(" + ",".join(map(str, word.period)) + ")"
