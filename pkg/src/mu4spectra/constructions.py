"""Digit sets, labels and the discrete sets they generate.

A *level label* assigns one odd digit ``a_k`` to every right edge at level k
of the binary tree; a *general label* assigns an odd digit to each right edge
individually and is only ever held as a finite prefix. Left edges carry 0.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .adic_words import SignedDigitWord, parse_signed_word

__all__ = [
    "DigitSet",
    "DigitSetReport",
    "validate_digit_set",
    "LevelLabel",
    "PeriodicLabel",
    "Thm47Label",
    "GammaLabel",
    "GeneralLabelPrefix",
    "constant_label",
    "thm47_label",
    "gamma_label",
    "gamma_digits",
    "enumerate_lambda",
    "canonical_lambda",
    "scaled_lambda",
    "lambda_I_members",
    "parse_label_spec",
    "load_label",
]


@dataclass(frozen=True)
class DigitSet:
    """Finite set C of distinct odd integers (0 is implicit as the left-edge digit)."""

    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(self.digits)
        even = [d for d in digits if d % 2 == 0]
        if even:
            raise ValueError(f"digits must be odd, got {even}")
        if len(set(digits)) != len(digits):
            raise ValueError(f"digits must be distinct, got {digits}")
        if not digits:
            raise ValueError("digit set is empty")
        object.__setattr__(self, "digits", tuple(sorted(digits)))

    @classmethod
    def parse(cls, text: str) -> "DigitSet":
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise ValueError(f"bad digit list {text!r}: {exc}") from None

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(d % 4 for d in self.digits)

    @property
    def covers_both_classes(self) -> bool:
        """True when the digits realize both odd classes 1 and 3 mod 4."""
        return {1, 3} <= set(self.residues)

    def __iter__(self):
        return iter(self.digits)


@dataclass(frozen=True)
class DigitSetReport:
    digits: tuple[int, ...]
    odd: bool
    distinct: bool
    residues_mod4: tuple[int, ...]
    covers_both_classes: bool

    def as_dict(self) -> dict:
        return {
            "digits": list(self.digits),
            "odd": self.odd,
            "distinct": self.distinct,
            "residues_mod4": list(self.residues_mod4),
            "covers_both_classes": self.covers_both_classes,
        }


def validate_digit_set(digits: Iterable[int]) -> DigitSetReport:
    """Check oddness (hard error), distinctness and the mod-4 classes realized."""
    digits = tuple(digits)
    even = [d for d in digits if d % 2 == 0]
    if even:
        raise ValueError(f"digits must be odd, got {even}")
    residues = tuple(d % 4 for d in digits)
    return DigitSetReport(
        digits=digits,
        odd=True,
        distinct=len(set(digits)) == len(digits),
        residues_mod4=residues,
        covers_both_classes={1, 3} <= set(residues),
    )


# ---------------------------------------------------------------------------
# level labels


class LevelLabel(Protocol):
    def prefix(self, n: int) -> list[int]: ...


def _require_odd(p: int, what: str = "p") -> None:
    if p % 2 == 0:
        raise ValueError(f"{what} must be odd, got {p}")


@dataclass(frozen=True)
class PeriodicLabel:
    """Eventually periodic level label ``a_1 a_2 ...``."""

    word: SignedDigitWord

    def __post_init__(self):
        for d in self.word.preperiod + self.word.period:
            _require_odd(d, "label digit")

    @classmethod
    def parse(cls, text: str) -> "PeriodicLabel":
        return cls(parse_signed_word(text))

    def prefix(self, n: int) -> list[int]:
        return self.word.prefix(n)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.word.preperiod + self.word.period)))

    def __str__(self) -> str:
        return str(self.word)


def constant_label(p: int) -> PeriodicLabel:
    """The label ``p^inf``; it generates ``p * Lambda_1``."""
    _require_odd(p)
    return PeriodicLabel(SignedDigitWord((0, p), (), (p,)))


def thm47_label(p: int, n: int) -> list[int]:
    """First n digits of ``p * tau_1 tau_2 ...`` with ``tau_k = 1^k (-1)^(k+1)``."""
    _require_odd(p)
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    out: list[int] = []
    k = 1
    while len(out) < n:
        out += [p] * k + [-p] * (k + 1)
        k += 1
    return out[:n]


def thm47_block_start(k: int) -> int:
    """1-based position where block ``tau_k`` starts (blocks have length 2j+1)."""
    return 1 + sum(2 * j + 1 for j in range(1, k))


@dataclass(frozen=True)
class Thm47Label:
    """Label with sign runs of growing length; not eventually periodic."""

    p: int

    def __post_init__(self):
        _require_odd(self.p)

    def prefix(self, n: int) -> list[int]:
        return thm47_label(self.p, n)

    def __str__(self) -> str:
        return f"thm47 p={self.p}"


def gamma_digits(r: int) -> tuple[int, int]:
    """``(c0, c1) = (1, 4**r - 1)``; c1 = 3 (1 + 4 + ... + 4^(r-1))."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return 1, 4**r - 1


@dataclass(frozen=True)
class GammaLabel:
    """Labels with ``c1`` forced at positions 1, r+1, 2r+1, ... and free digits elsewhere.

    ``free`` is ``"c0"``, ``"c1"``, ``"alternate"`` (c0 at even positions, c1
    at odd ones) or an explicit sequence of 0/1 choices consumed in order by
    the free positions.
    """

    r: int
    free: str | tuple[int, ...] = "c0"

    def __post_init__(self):
        gamma_digits(self.r)
        if isinstance(self.free, str):
            if self.free not in ("c0", "c1", "alternate"):
                raise ValueError(f"free must be c0, c1 or alternate, got {self.free!r}")
        else:
            object.__setattr__(self, "free", tuple(self.free))
            if any(b not in (0, 1) for b in self.free):
                raise ValueError("free choices must be 0 (c0) or 1 (c1)")

    @property
    def digit_set(self) -> DigitSet:
        return DigitSet(gamma_digits(self.r))

    def is_forced(self, k: int) -> bool:
        return (k - 1) % self.r == 0

    def prefix(self, n: int) -> list[int]:
        c = gamma_digits(self.r)
        out, used = [], 0
        for k in range(1, n + 1):
            if self.is_forced(k):
                out.append(c[1])
                continue
            if self.free == "c0":
                out.append(c[0])
            elif self.free == "c1":
                out.append(c[1])
            elif self.free == "alternate":
                out.append(c[k % 2])
            else:
                if used >= len(self.free):
                    raise ValueError(f"only {len(self.free)} free choices supplied")
                out.append(c[self.free[used]])
                used += 1
        return out

    def witness_digits(self, n: int) -> list[int]:
        """Path digits ``c1`` at forced positions, 0 elsewhere; their sum is -1 4-adically."""
        c1 = gamma_digits(self.r)[1]
        return [c1 if self.is_forced(k) else 0 for k in range(1, n + 1)]

    def as_periodic(self) -> PeriodicLabel:
        """Exact eventually periodic form (only for the named free rules)."""
        if not isinstance(self.free, str):
            raise ValueError("explicit free choices do not define an infinite label")
        period = self.r if self.free != "alternate" else math.lcm(self.r, 2)
        digits = self.prefix(period)
        return PeriodicLabel(SignedDigitWord((0, *gamma_digits(self.r)), (), tuple(digits)))

    def __str__(self) -> str:
        free = self.free if isinstance(self.free, str) else "".join(map(str, self.free))
        return f"gamma r={self.r} free={free}"


def gamma_label(r: int, free: str | Sequence[int], n: int) -> list[int]:
    return GammaLabel(r, free if isinstance(free, str) else tuple(free)).prefix(n)


# ---------------------------------------------------------------------------
# general labels


@dataclass(frozen=True)
class GeneralLabelPrefix:
    """Right-edge digits of the first ``depth`` levels of a general label.

    ``levels[j]`` lists the 2**j right-edge digits of level j+1, left to right.
    """

    levels: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        levels = tuple(tuple(level) for level in self.levels)
        for j, level in enumerate(levels):
            if len(level) != 2**j:
                raise ValueError(f"level {j + 1} needs {2**j} digits, got {len(level)}")
            for d in level:
                _require_odd(d, "label digit")
        object.__setattr__(self, "levels", levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @classmethod
    def from_level_label(cls, label: LevelLabel, depth: int) -> "GeneralLabelPrefix":
        digits = label.prefix(depth)
        return cls(tuple((digits[j],) * 2**j for j in range(depth)))

    def flat(self) -> list[int]:
        """The label read level by level, left to right."""
        return [d for level in self.levels for d in level]


# ---------------------------------------------------------------------------
# enumeration


def _level_digits(label, n: int) -> list[int]:
    if isinstance(label, SignedDigitWord):
        return label.prefix(n)
    if hasattr(label, "prefix"):
        return label.prefix(n)
    digits = list(label)
    if len(digits) < n:
        raise ValueError(f"label has {len(digits)} levels, need {n}")
    return digits[:n]


def enumerate_lambda(label, n: int) -> set[int]:
    """All sums ``sum_{k<=n} 4^(k-1) omega_k`` along tree paths of depth n.

    ``label`` is a level label (anything with ``prefix``, a signed word, or a
    digit sequence) or a :class:`GeneralLabelPrefix`.
    """
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    if isinstance(label, GeneralLabelPrefix):
        if label.depth < n:
            raise ValueError(f"label prefix has depth {label.depth}, need {n}")
        # (node index at current level, partial sum)
        frontier = [(0, 0)]
        for j in range(n):
            weight = 4**j
            level = label.levels[j]
            frontier = [
                (2 * node + bit, total + (weight * level[node] if bit else 0))
                for node, total in frontier
                for bit in (0, 1)
            ]
        return {total for _, total in frontier}
    digits = _level_digits(label, n)
    sums = {0}
    for k, a in enumerate(digits):
        sums |= {s + a * 4**k for s in sums}
    return sums


def canonical_lambda(n: int) -> set[int]:
    return enumerate_lambda(constant_label(1), n)


def scaled_lambda(p: int, n: int) -> set[int]:
    return {p * x for x in canonical_lambda(n)}


def lambda_I_members(label: PeriodicLabel | SignedDigitWord, bound: int) -> dict:
    """Members of ``Lambda_I(label)`` in ``[-bound, bound]`` with their expansion type.

    Membership is decided exactly by the residue recursion, so no congruence
    depth needs to be chosen.
    """
    from .decision import expansion_type

    out = {}
    for value in range(-bound, bound + 1):
        result = expansion_type(label, value)
        if result.kind != "not-member":
            out[value] = result
    return out


# ---------------------------------------------------------------------------
# label files and inline specs

_RULE_RE = re.compile(r"^\s*(thm47|gamma)\s+(.*)$")


def _parse_rule(text: str):
    match = _RULE_RE.match(text)
    if not match:
        raise ValueError(f"unknown label rule {text!r}")
    kind, rest = match.groups()
    params = dict(item.split("=", 1) for item in rest.split())
    try:
        if kind == "thm47":
            return Thm47Label(int(params["p"]))
        return GammaLabel(int(params["r"]), params.get("free", "c0"))
    except KeyError as exc:
        raise ValueError(f"rule {text!r} is missing {exc.args[0]}") from None


def parse_label_spec(text: str):
    """Parse a label file body or an inline label.

    Inline forms are a signed word (``"(3)"``, ``"1(-1,1)"``) or a rule
    (``"thm47 p=5"``, ``"gamma r=2 free=c0"``).
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) == 1 and ":" not in lines[0]:
        line = lines[0]
        return _parse_rule(line) if _RULE_RE.match(line) else PeriodicLabel.parse(line)
    fields = {}
    for line in lines:
        key, _, value = line.partition(":")
        fields[key.strip().lower()] = value.strip()
    if "rule" in fields:
        return _parse_rule(fields["rule"])
    try:
        alphabet = [int(t) for t in fields["alphabet"].split(",") if t.strip()]
        indices = lambda key: [int(t) for t in fields.get(key, "").split(",") if t.strip()]
        pre = [alphabet[i] for i in indices("preperiod")]
        per = [alphabet[i] for i in indices("period")]
    except KeyError as exc:
        raise ValueError(f"label file is missing {exc.args[0]!r}") from None
    except IndexError:
        raise ValueError("label index outside the alphabet") from None
    return PeriodicLabel(SignedDigitWord(tuple(alphabet), tuple(pre), tuple(per)))


def load_label(source: str):
    """Label from a file path if one exists, otherwise from the inline text."""
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        return parse_label_spec(path.read_text())
    return parse_label_spec(source)


def all_periodic_labels(digits: DigitSet, max_period: int) -> Iterable[PeriodicLabel]:
    """Every purely periodic level label over ``digits`` with period <= max_period."""
    for t in range(1, max_period + 1):
        for period in itertools.product(digits.digits, repeat=t):
            yield PeriodicLabel(SignedDigitWord((0, *digits.digits), (), period))
