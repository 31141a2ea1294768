"""The regression gate: nine acceptance criteria, each returning a pass/fail record.

Shared by ``mu4spectra regress`` and ``tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .adic_words import (
    EventuallyPeriodicWord,
    SignedDigitWord,
    add,
    block_decode,
    block_recode,
    div_by_coprime,
    from_integer,
    h_p_prefix,
    negate,
    parse_word,
    rho_distance,
    scalar_mul,
    series_prefix,
    series_word,
    subtract,
    to_integer,
)
from .constructions import DigitSet, all_periodic_labels, canonical_lambda, constant_label, scaled_lambda
from .decision import (
    exists_infinite_expansion,
    is_spectrum_ep_label,
    measure_decay_exact,
    monte_carlo_survival,
    play_against,
    thm47_check,
    universal_game,
)
from .fourier import (
    DEFICIT_CEILING,
    FRAME_FLOOR,
    check_orthogonality,
    frame_values,
    is_zero_exact,
    mu4_hat,
)

SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s) {self.detail}"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


# ---------------------------------------------------------------------------


def criterion_1() -> tuple[bool, str]:
    notes, ok = [], True
    for p in (1, 5, 17, 23, 29, 3):
        start = time.perf_counter()
        verdict = is_spectrum_ep_label(constant_label(p))
        elapsed = time.perf_counter() - start
        expected = p != 3
        good = verdict.is_spectrum is expected and elapsed < 1.0
        if p == 3:
            good = good and verdict.witness is not None and verdict.witness.lambda_ == -1
        ok &= good
        notes.append(f"p={p}:{'spectrum' if verdict.is_spectrum else 'non-spectrum'}")
    return ok, " ".join(notes)


def criterion_2() -> tuple[bool, str]:
    none_17 = exists_infinite_expansion((1, 7)) is None
    none_15 = exists_infinite_expansion((1, 5)) is None
    cert = exists_infinite_expansion((1, 3))
    wit_13 = cert is not None and cert.lambda_ == -1
    seeker = universal_game((3, 15)).seeker_wins
    adversary = not universal_game((1, 3)).seeker_wins
    ok = none_17 and none_15 and wit_13 and seeker and adversary
    return ok, f"{{1,7}} empty={none_17} {{1,5}} empty={none_15} {{1,3}} witness={wit_13} game {{3,15}} seeker={seeker} {{1,3}} adversary={adversary}"


def criterion_3() -> tuple[bool, str]:
    start = time.perf_counter()
    verdicts = {p: thm47_check(p, 8).verdict for p in range(1, 16, 2)}
    elapsed = time.perf_counter() - start
    ok = all(v == "spectrum" for v in verdicts.values()) and elapsed < 10
    failing = [p for p, v in verdicts.items() if v != "spectrum"]
    return ok, f"all spectrum={not failing} failing={failing} total={elapsed:.2f}s"


# --- criterion 4: randomized algebra laws --------------------------------------


def _word(rng: random.Random) -> EventuallyPeriodicWord:
    pre = tuple(rng.randrange(4) for _ in range(rng.randint(0, 6)))
    per = tuple(rng.randrange(4) for _ in range(rng.randint(1, 6)))
    return EventuallyPeriodicWord(4, pre, per)


def _carry(words, coeffs, length):
    out, carry = [], 0
    for n in range(1, length + 1):
        total = sum(c * w.digit(n) for c, w in zip(coeffs, words)) + carry
        out.append(total % 4)
        carry = total // 4
    return out


def _fold(values, n):
    total = EventuallyPeriodicWord.zero()
    for k, v in enumerate(values[:n], start=1):
        total = add(total, scalar_mul(4 ** (k - 1), from_integer(v)))
    return total.prefix(n)


def _law_group(rng):
    x, y, z = _word(rng), _word(rng), _word(rng)
    zero = EventuallyPeriodicWord.zero()
    return (
        add(x, y) == add(y, x)
        and add(add(x, y), z) == add(x, add(y, z))
        and add(x, zero) == x
        and add(x, negate(x)) == zero
        and subtract(add(x, y), y) == x
    )


def _law_homomorphism(rng):
    a, b, k = (rng.randint(-200, 200) for _ in range(3))
    pa, pb = from_integer(a), from_integer(b)
    return (
        add(pa, pb) == from_integer(a + b)
        and scalar_mul(k, pa) == from_integer(k * a)
        and negate(pa) == from_integer(-a)
        and to_integer(pa) == a
    )


def _law_scalar(rng):
    x, y = _word(rng), _word(rng)
    k, j = rng.randint(-200, 200), rng.randint(-200, 200)
    return scalar_mul(k, add(x, y)) == add(scalar_mul(k, x), scalar_mul(k, y)) and scalar_mul(
        k + j, x
    ) == add(scalar_mul(k, x), scalar_mul(j, x))


def _law_division(rng):
    x = _word(rng)
    a = rng.choice([d for d in range(-199, 200, 2)])
    q = div_by_coprime(a, x)
    return scalar_mul(a, q) == x and div_by_coprime(a, scalar_mul(a, x)) == x


def _law_rho(rng):
    x, y, z, w = (_word(rng) for _ in range(4))
    return rho_distance(x, z) <= max(rho_distance(x, y), rho_distance(y, z)) and rho_distance(
        add(x, w), add(y, w)
    ) == rho_distance(x, y)


def _law_closure(rng):
    x, y = _word(rng), _word(rng)
    c1, c2 = rng.randint(0, 200), rng.randint(0, 200)
    total = add(scalar_mul(c1, x), scalar_mul(c2, y))
    bound = len(total.preperiod) + 2 * len(total.period) + 30
    return total.prefix(bound) == _carry([x, y], [c1, c2], bound)


def _law_series(rng):
    n = rng.randint(1, 10)
    values = [rng.randint(-200, 200) for _ in range(n)]
    pre = [rng.randint(-200, 200) for _ in range(rng.randint(0, 6))]
    per = [rng.randint(-200, 200) for _ in range(rng.randint(1, 6))]
    stream = (pre + per * 30)[:20]
    return series_prefix(values, n) == _fold(values, n) and series_word(pre, per).prefix(20) == _fold(stream, 20)


def _law_hp(rng):
    p = rng.choice([1, 3, 5, 7])
    n = rng.randint(1, 12)
    signs = [rng.choice([-1, 0, 1]) for _ in range(12)]
    omega = SignedDigitWord((-p, 0, p), (), tuple(p * s for s in signs) + (0,))
    unit = SignedDigitWord((-1, 0, 1), (), tuple(signs) + (0,))
    h1 = EventuallyPeriodicWord(4, tuple(h_p_prefix(1, unit, n)), (0,))
    return h_p_prefix(p, omega, n) == scalar_mul(p, h1).prefix(n)


def _law_blocks(rng):
    x = _word(rng)
    s = rng.randint(1, 4)
    return block_decode(s, block_recode(s, x)) == x


LAWS: dict[str, Callable[[random.Random], bool]] = {
    "group": _law_group,
    "homomorphism": _law_homomorphism,
    "scalar": _law_scalar,
    "division": _law_division,
    "rho": _law_rho,
    "closure": _law_closure,
    "series": _law_series,
    "h_p": _law_hp,
    "blocks": _law_blocks,
}


def criterion_4(cases: int = 10_008, seed: int = SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    names = list(LAWS)
    failures: dict[str, int] = {}
    for i in range(cases):
        name = names[i % len(names)]
        if not LAWS[name](rng):
            failures[name] = failures.get(name, 0) + 1
    return not failures, f"cases={cases} laws={len(names)} failures={failures or 0}"


def criterion_5() -> tuple[bool, str]:
    added = add(parse_word("2130(0)"), parse_word("3211(0)")).prefix(4) == [1, 0, 1, 2]
    tripled = scalar_mul(3, parse_word("3(2)")) == parse_word("1(0)")
    third = div_by_coprime(3, parse_word("1(0)")) == parse_word("3(2)")
    return added and tripled and third, f"sum={added} triple={tripled} third={third}"


def criterion_6(seed: int = SEED) -> tuple[bool, str]:
    ok = check_orthogonality(canonical_lambda(8)).orthogonal
    for p in (3, 5, 17, 23, 29):
        ok &= check_orthogonality(scaled_lambda(p, 6)).orthogonal
    rng = random.Random(seed)
    disagreements = 0
    for _ in range(200):
        z = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        disagreements += is_zero_exact(z) != (abs(mu4_hat(z, 30)[0]) < 1e-8)
    return ok and not disagreements, f"orthogonal={ok} zero-set disagreements={disagreements}/200"


def criterion_7() -> tuple[bool, str]:
    start = time.perf_counter()
    xs = np.arange(256) / 256
    q = {d: frame_values(np.array(sorted(canonical_lambda(d)), float), xs, 25) for d in (8, 10, 12)}
    floor_ok = q[12].min() >= FRAME_FLOOR
    monotone = bool(np.all(q[8] <= q[10] + 1e-12) and np.all(q[10] <= q[12] + 1e-12))
    q3 = frame_values(np.array(sorted(scaled_lambda(3, 12)), float), xs, 25)
    deficit_ok = q3.min() < DEFICIT_CEILING
    elapsed = time.perf_counter() - start
    ok = floor_ok and monotone and deficit_ok and elapsed < 60
    return ok, (
        f"minQ(L1)={q[12].min():.8f}>={FRAME_FLOOR} minQ(3L1)={q3.min():.5f}<{DEFICIT_CEILING} monotone={monotone}"
    )


def criterion_8(seed: int = 0) -> tuple[bool, str]:
    exact_ok = all(
        measure_decay_exact((1, 3), -1, k).measure == Fraction(1, 2**k) <= Fraction(1, 2) ** max(k - 1, 0)
        for k in range(0, 11)
    )
    est = monte_carlo_survival((1, 3), -1, 10, 100_000, seed=seed)
    exact = 2.0**-10
    se = math.sqrt(exact * (1 - exact) / est.samples)
    z = abs(est.fraction - exact) / se
    return exact_ok and z <= 3, f"exact 2^-k for k<=10: {exact_ok}; mc={est.fraction:.6f} z={z:.2f}"


def criterion_9(seed: int = SEED) -> tuple[bool, str]:
    odd = [d for d in range(-15, 16) if d % 2]
    digit_sets = [DigitSet(c) for c in itertools.combinations(odd, 2)]
    certificates = bad = 0
    for cset in digit_sets:
        cert = exists_infinite_expansion(cset)
        if cert is not None:
            certificates += 1
            bad += not cert.replay(64)
    for cset in digit_sets[::8]:
        for label in all_periodic_labels(cset, 2):
            verdict = is_spectrum_ep_label(label)
            if verdict.witness is not None:
                certificates += 1
                bad += not verdict.witness.replay(64)

    rng = random.Random(seed)
    games = playout_failures = 0
    for cset in digit_sets + [DigitSet((3, 15, 63))]:
        game = universal_game(cset)
        if not game.seeker_wins:
            continue
        games += 1
        core = 2 * game.automaton.bound + 1
        for _ in range(1000):
            start = rng.choice(game.winning)
            adversary = [rng.choice(cset.digits) for _ in range(1000)]
            alive, used = play_against(game, start, adversary)
            gaps_ok = all(any(used[i:i + core]) for i in range(0, len(used) - core + 1, core))
            playout_failures += not (alive and gaps_ok)
    ok = bad == 0 and playout_failures == 0 and games > 0
    return ok, f"certificates={certificates} replay failures={bad} winning games={games} playout failures={playout_failures}"


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("spectral eigenvalue regressions", criterion_1),
    2: ("digit-set decisions", criterion_2),
    3: ("growing-runs family", criterion_3),
    4: ("algebra property suite", criterion_4),
    5: ("worked digit examples", criterion_5),
    6: ("orthogonality", criterion_6),
    7: ("frame diagnostics", criterion_7),
    8: ("measure decay", criterion_8),
    9: ("certificate soundness", criterion_9),
}


def run_criterion(number: int) -> CriterionResult:
    title, check = CRITERIA[number]
    start = time.perf_counter()
    try:
        passed, detail = check()
    except Exception as exc:  # a crash is a failed criterion, not a crashed gate
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - start)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(n) for n in (numbers or sorted(CRITERIA))]
