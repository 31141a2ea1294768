"""Exact spectrality decisions through residue automata.

An integer ``lam`` satisfies ``lam = sum_{k<=n} 4^(k-1) omega_k (mod 4^n)``
for every n exactly when the residues ``r_0 = lam``,
``r_n = (r_{n-1} - omega_n) / 4`` are all integers: subtracting the first
digit and dividing by 4 turns the depth-n congruence for ``lam`` into the
depth-(n-1) congruence for ``r_1``. So quasi expansions are infinite walks
in a graph on integers. Every walk is eventually trapped in the core
``|r| <= B``; an expansion is infinite iff it never reaches residue 0.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .adic_words import SignedDigitWord
from .constructions import (
    DigitSet,
    PeriodicLabel,
    thm47_block_start,
    thm47_label,
)

__all__ = [
    "ResidueAutomaton",
    "WitnessCertificate",
    "Expansion",
    "SpectrumVerdict",
    "GameResult",
    "Thm47Report",
    "DecayResult",
    "SurvivalEstimate",
    "core_bound",
    "build_residue_automaton",
    "exists_infinite_expansion",
    "expansion_type",
    "is_spectrum_ep_label",
    "universal_game",
    "classify_digit_set",
    "thm47_check",
    "measure_decay_exact",
    "monte_carlo_survival",
]


def core_bound(digits: Iterable[int]) -> int:
    """B with ``|r| <= B, |d| <= max|d|  =>  |(r - d)/4| <= B`` for integers.

    Every cycle satisfies ``|r| <= max|d| / 3``; the floor keeps the core
    tight and the ``max(1, ...)`` keeps the unit residues for tiny digits.
    """
    return max(1, max(abs(d) for d in digits) // 3)


def _moves(r: int, digits: Iterable[int]) -> list[tuple[int, int]]:
    return [(d, (r - d) // 4) for d in digits if (r - d) % 4 == 0]


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class WitnessCertificate:
    """``lam`` with the infinite expansion ``transient * cycle^inf``.

    ``states`` are the residues at the start of each cycle step.
    """

    lambda_: int
    transient: tuple[int, ...]
    cycle: tuple[int, ...]
    states: tuple[int, ...]

    def __post_init__(self):
        if not any(self.cycle):
            raise ValueError("cycle must contain a nonzero digit")

    def digits(self, n: int) -> list[int]:
        t = len(self.transient)
        return [self.transient[k] if k < t else self.cycle[(k - t) % len(self.cycle)] for k in range(n)]

    def replay(self, steps: int = 64) -> bool:
        """Check ``lam = sum 4^(k-1) omega_k (mod 4^n)`` for n = 1..steps and the recorded residues."""
        digits = self.digits(steps)
        partial = 0
        for n, d in enumerate(digits, start=1):
            partial += d * 4 ** (n - 1)
            if (self.lambda_ - partial) % 4**n:
                return False
        r = self.lambda_
        for d in self.transient:
            r = (r - d) // 4
        for state, d in zip(self.states, self.cycle):
            if r != state:
                return False
            r = (r - d) // 4
        return r == self.states[0]

    def as_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "transient": list(self.transient),
            "cycle": list(self.cycle),
            "states": list(self.states),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessCertificate":
        return cls(int(data["lambda"]), tuple(data["transient"]), tuple(data["cycle"]), tuple(data["states"]))


# ---------------------------------------------------------------------------
# the residue automaton


@dataclass(frozen=True)
class ResidueAutomaton:
    """Edges ``r --omega--> (r - omega)/4`` for ``omega`` in the alphabet with ``4 | r - omega``."""

    alphabet: tuple[int, ...]
    bound: int
    edges: dict = field(repr=False, compare=False)

    @property
    def states(self) -> range:
        return range(-self.bound, self.bound + 1)

    def successors(self, r: int) -> list[tuple[int, int]]:
        """Outgoing (digit, target) pairs; valid for any integer, not only core states."""
        if -self.bound <= r <= self.bound:
            return list(self.edges[r])
        return _moves(r, self.alphabet)

    def nonzero_edges(self) -> list[tuple[int, int, int]]:
        return [(r, d, t) for r in self.states for d, t in self.edges[r] if d]

    def reachable_layers(self, value: int, steps: int) -> list[set[int]]:
        """Residue sets reachable from ``value`` after 0, 1, ..., steps moves."""
        layers = [{value}]
        for _ in range(steps):
            layers.append({t for r in layers[-1] for _, t in self.successors(r)})
        return layers

    def transient_length_bound(self, value: int) -> int:
        if abs(value) <= self.bound:
            return 0
        return math.ceil(math.log(abs(value), 4)) + 2

    def sccs(self) -> list[list[int]]:
        """Strongly connected components of the core graph (iterative Tarjan)."""
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        on_stack: set[int] = set()
        stack: list[int] = []
        out: list[list[int]] = []
        counter = 0
        for root in self.states:
            if root in index:
                continue
            work = [(root, iter(self.edges[root]))]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                node, it = work[-1]
                advanced = False
                for _, target in it:
                    if target not in index:
                        index[target] = low[target] = counter
                        counter += 1
                        stack.append(target)
                        on_stack.add(target)
                        work.append((target, iter(self.edges[target])))
                        advanced = True
                        break
                    if target in on_stack:
                        low[node] = min(low[node], index[target])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    component = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        component.append(w)
                        if w == node:
                            break
                    out.append(sorted(component))
        return out

    def states_on_nonzero_cycles(self) -> list[int]:
        """Core states lying on some cycle that uses a nonzero digit."""
        found = []
        for component in self.sccs():
            members = set(component)
            if any(d and t in members for r in component for d, t in self.edges[r]):
                found.extend(component)
        return sorted(found, key=lambda r: (abs(r), r))

    def nonzero_cycle_from(self, start: int) -> tuple[list[int], list[int]] | None:
        """Shortest closed walk at ``start`` using a nonzero digit: (digits, states)."""
        origin = (start, False)
        parent: dict = {origin: None}
        queue = deque([origin])
        goal = (start, True)
        while queue:
            node = queue.popleft()
            r, used = node
            for d, t in self.edges[r]:
                nxt = (t, used or d != 0)
                if nxt == goal:
                    digits, states = [d], [r]
                    back = node
                    while parent[back] is not None:
                        prev, d_prev = parent[back]
                        digits.append(d_prev)
                        states.append(prev[0])
                        back = prev
                    return digits[::-1], states[::-1]
                if nxt not in parent:
                    parent[nxt] = (node, d)
                    queue.append(nxt)
        return None

    def as_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "bound": self.bound,
            "edges": [[r, d, t] for r in self.states for d, t in self.edges[r]],
        }


def build_residue_automaton(alphabet: Iterable[int]) -> ResidueAutomaton:
    """Core residue automaton for a digit alphabet containing 0."""
    alphabet = tuple(sorted(set(alphabet)))
    if 0 not in alphabet:
        raise ValueError("digit alphabet must contain 0")
    even = [d for d in alphabet if d and d % 2 == 0]
    if even:
        raise ValueError(f"nonzero digits must be odd, got {even}")
    bound = core_bound(alphabet)
    edges = {r: tuple(_moves(r, alphabet)) for r in range(-bound, bound + 1)}
    return ResidueAutomaton(alphabet, bound, edges)


def _digit_set(digits) -> DigitSet:
    return digits if isinstance(digits, DigitSet) else DigitSet(tuple(digits))


def exists_infinite_expansion(digits: DigitSet | Sequence[int]) -> WitnessCertificate | None:
    """A witness that some label over C yields a non-spectrum, or None if none does.

    Along a path of a general labeled tree each level meets a fresh edge, so
    every digit of ``{0} | C`` is available at every step: some label admits
    an infinite expansion iff the automaton has a cycle with a nonzero digit.
    """
    automaton = build_residue_automaton((0, *_digit_set(digits).digits))
    for state in automaton.states_on_nonzero_cycles():
        found = automaton.nonzero_cycle_from(state)
        if found:
            cycle, states = found
            return WitnessCertificate(state, (), tuple(cycle), tuple(states))
    return None


# ---------------------------------------------------------------------------
# eventually periodic level labels


@dataclass(frozen=True)
class Expansion:
    """Classification of one integer against a level label."""

    kind: str  # "finite" | "infinite" | "not-member"
    lambda_: int
    digits: tuple[int, ...] = ()
    certificate: WitnessCertificate | None = None
    failed_at: int | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.lambda_,
            "digits": list(self.digits),
            "certificate": self.certificate.as_dict() if self.certificate else None,
            "failed_at": self.failed_at,
        }


def _label_word(label) -> SignedDigitWord:
    if isinstance(label, PeriodicLabel):
        return label.word
    if isinstance(label, SignedDigitWord):
        for d in label.preperiod + label.period:
            if d % 2 == 0:
                raise ValueError(f"label digits must be odd, got {d}")
        return label
    raise TypeError(f"expected an eventually periodic label, got {type(label).__name__}")


def expansion_type(label, value: int) -> Expansion:
    """Finite, infinite (with certificate) or not a member of ``Lambda_I(label)``.

    At each level the only candidates are 0 and ``a_k``; they differ mod 4,
    so the walk on (residue, label phase) is deterministic. It is eventually
    confined to a finite set, so it must die, stop at 0 or repeat a state.
    """
    word = _label_word(label)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    residues: list[int] = []
    r, phase = value, 0
    while True:
        if r == 0:
            return Expansion("finite", value, tuple(digits))
        state = (r, phase)
        if state in seen:
            i = seen[state]
            cert = WitnessCertificate(value, tuple(digits[:i]), tuple(digits[i:]), tuple(residues[i:]))
            return Expansion("infinite", value, tuple(digits), cert)
        seen[state] = len(digits)
        a = word._phase_digit(phase)
        if r % 4 == 0:
            d = 0
        elif (r - a) % 4 == 0:
            d = a
        else:
            return Expansion("not-member", value, tuple(digits), failed_at=len(digits) + 1)
        digits.append(d)
        residues.append(r)
        r = (r - d) // 4
        phase = word._next_phase(phase)


@dataclass(frozen=True)
class SpectrumVerdict:
    is_spectrum: bool
    witness: WitnessCertificate | None
    states_examined: int
    cycles: int

    def as_dict(self) -> dict:
        return {
            "verdict": "spectrum" if self.is_spectrum else "non-spectrum",
            "witness": self.witness.as_dict() if self.witness else None,
            "states_examined": self.states_examined,
            "nonzero_cycles": self.cycles,
        }


def is_spectrum_ep_label(label, scan_limit: int = 4096) -> SpectrumVerdict:
    """Decide whether ``Lambda(label)`` is a spectrum for an eventually periodic level label.

    Every (core residue r, phase k) is reached from ``lam = 4^k r``, so the
    label fails iff the finite product graph has a cycle with a nonzero
    digit. The witness is the smallest such ``lam`` in absolute value.
    """
    word = _label_word(label)
    bound = core_bound((0, *word.preperiod, *word.period))
    phases = range(len(word.preperiod) + len(word.period))

    def step(state):
        r, phase = state
        a = word._phase_digit(phase)
        if r % 4 == 0:
            d = 0
        elif (r - a) % 4 == 0:
            d = a
        else:
            return None, None
        return d, ((r - d) // 4, word._next_phase(phase))

    color: dict = {}
    cycle_states: list[tuple[int, int]] = []
    cycles = 0
    for start in ((r, k) for k in phases for r in range(-bound, bound + 1)):
        if start in color:
            continue
        path, pos = [], {}
        state = start
        while state is not None and state not in color:
            pos[state] = len(path)
            color[state] = "active"
            path.append(state)
            _, state = step(state)
        if state is not None and color.get(state) == "active" and state in pos:
            loop = path[pos[state]:]
            if any(step(s)[0] for s in loop):
                cycles += 1
                cycle_states.extend(loop)
        for s in path:
            color[s] = "done"

    if not cycle_states:
        return SpectrumVerdict(True, None, len(color), 0)
    candidate = min((r * 4**k for r, k in cycle_states), key=lambda v: (abs(v), v))
    limit = min(abs(candidate), scan_limit)
    for value in sorted(range(-limit, limit + 1), key=lambda v: (abs(v), v)):
        result = expansion_type(word, value)
        if result.kind == "infinite":
            return SpectrumVerdict(False, result.certificate, len(color), cycles)
    result = expansion_type(word, candidate)
    return SpectrumVerdict(False, result.certificate, len(color), cycles)


# ---------------------------------------------------------------------------
# the universal game


@dataclass(frozen=True)
class GameResult:
    """Outcome of the game in which the adversary reveals labels and the seeker keeps the expansion alive."""

    seeker_wins: bool
    winning: tuple[int, ...]
    strategy: dict  # residue -> {revealed digit: chosen digit}
    automaton: ResidueAutomaton

    @property
    def verdict(self) -> str:
        return "seeker-wins" if self.seeker_wins else "adversary-wins"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "winning_residues": list(self.winning),
            "strategy": {str(r): {str(c): d for c, d in moves.items()} for r, moves in sorted(self.strategy.items())},
            "note": None if self.seeker_wins else "inconclusive for the universal claim",
        }


def _game_moves(r: int, c: int) -> list[tuple[int, int]]:
    return _moves(r, (0, c))


def universal_game(digits: DigitSet | Sequence[int]) -> GameResult:
    """Solve the Buchi game on the core residues.

    At residue r the adversary reveals the label c of the next right edge; the
    seeker moves with 0 or c (whichever is congruent to r mod 4); moves with
    a nonzero digit are accepting. If the seeker can force infinitely many
    accepting moves from some residue, every label admits an infinite
    expansion, so no label gives a spectrum.
    """
    cset = _digit_set(digits)
    automaton = build_residue_automaton((0, *cset.digits))
    states = list(automaton.states)

    def cpre(target_accepting: set[int], target_any: set[int]) -> set[int]:
        out = set()
        for r in states:
            if all(
                any((d and t in target_accepting) or t in target_any for d, t in _game_moves(r, c))
                for c in cset.digits
            ):
                out.add(r)
        return out

    winning = set(states)
    while True:
        reach: set[int] = set()
        while True:
            nxt = cpre(winning, reach)
            if nxt == reach:
                break
            reach = nxt
        if reach == winning:
            break
        winning = reach

    # attractor ranks towards an accepting move back into the winning set
    rank: dict[int, int] = {}
    layer: set[int] = set()
    level = 0
    while True:
        nxt = cpre(winning, layer)
        for r in sorted(nxt - layer):
            rank[r] = level
        if nxt == layer:
            break
        layer, level = nxt, level + 1

    strategy = {}
    for r in sorted(winning):
        choice = {}
        for c in cset.digits:
            options = _game_moves(r, c)
            good = [d for d, t in options if d and t in winning]
            good += [d for d, t in options if t in rank and rank[t] < rank[r]]
            choice[c] = good[0]
        strategy[r] = choice
    return GameResult(bool(winning), tuple(sorted(winning)), strategy, automaton)


def play_against(game: GameResult, start: int, adversary: Sequence[int]) -> tuple[bool, list[int]]:
    """Replay the seeker strategy against revealed digits; returns (alive, digits)."""
    r, digits = start, []
    for c in adversary:
        moves = game.strategy.get(r)
        if moves is None:
            return False, digits
        d = moves[c]
        if (r - d) % 4:
            return False, digits
        digits.append(d)
        r = (r - d) // 4
    return True, digits


def classify_digit_set(digits: DigitSet | Sequence[int]) -> dict:
    """Trichotomy: every label a spectrum, no label a spectrum, or mixed/unknown."""
    cset = _digit_set(digits)
    witness = exists_infinite_expansion(cset)
    if witness is None:
        return {"verdict": "all-labels-spectra", "witness": None, "game": None}
    game = universal_game(cset)
    verdict = "no-label-spectra" if game.seeker_wins else "mixed-or-unknown"
    return {"verdict": verdict, "witness": witness.as_dict(), "game": game.as_dict()}


# ---------------------------------------------------------------------------
# the growing-runs label


@dataclass(frozen=True)
class Thm47Report:
    p: int
    max_cycle_length: int
    verdict: str
    cycles: list = field(default_factory=list)
    surviving: list = field(default_factory=list)
    direct_survivors: int = 0

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "cycle_bound": self.max_cycle_length,
            "verdict": self.verdict,
            "cycles": self.cycles,
            "surviving": self.surviving,
            "direct_survivors": self.direct_survivors,
        }


def _simple_cycles_functional(automaton: ResidueAutomaton) -> list[tuple[list[int], list[int]]]:
    # out-degree <= 1 on {-p, 0, p}: every cycle is the orbit of one state
    found, seen = [], set()
    for start in automaton.states:
        path, pos, r = [], {}, start
        while r not in pos and r not in seen:
            pos[r] = len(path)
            path.append(r)
            succ = automaton.edges[r]
            if not succ:
                r = None
                break
            r = succ[0][1]
        if r is not None and r in pos:
            states = path[pos[r]:]
            digits = [automaton.edges[s][0][0] for s in states]
            found.append((digits, states))
        seen.update(path)
    return found


def thm47_check(p: int, max_cycle_length: int = 8) -> Thm47Report:
    """Refute every periodic infinite expansion for the label ``p * tau_1 tau_2 ...``.

    An eventually periodic expansion with period t whose phase j carries the
    digit ``sigma p`` forces ``a_{s+1+j+mt} = sigma`` for all m. Block
    ``tau_n`` contains runs of n ones and n+1 minus ones, so from block
    ``tau_t`` on every residue class mod t sees both signs; the scan confirms
    this inside blocks ``tau_{t+1}`` and ``tau_{t+2}`` for each candidate.
    """
    if p % 2 == 0:
        raise ValueError(f"p must be odd, got {p}")
    if max_cycle_length < 1:
        raise ValueError("cycle bound must be >= 1")
    automaton = build_residue_automaton((-p, 0, p))
    scan = thm47_block_start(max_cycle_length + 3) - 1
    signs = [d // p for d in thm47_label(p, scan)]

    cycles, surviving = [], []
    for digits, states in _simple_cycles_functional(automaton):
        if not any(digits):
            continue
        base = len(digits)
        for t in range(base, max_cycle_length + 1, base):
            rep_digits, rep_states = digits * (t // base), states * (t // base)
            refutations = []
            for j, d in enumerate(rep_digits):
                if not d:
                    continue
                need = d // p
                for cls in range(t):
                    hits = []
                    for block in (t + 1, t + 2):
                        lo, hi = thm47_block_start(block), thm47_block_start(block + 1) - 1
                        pos = next(
                            (q for q in range(lo, hi + 1) if (q - 1) % t == cls and signs[q - 1] != need),
                            None,
                        )
                        hits.append(pos)
                    if None in hits:
                        surviving.append({"digits": rep_digits, "states": rep_states, "phase": j, "class": cls})
                    refutations.append({"phase": j, "class": cls, "positions": hits})
            cycles.append({"digits": rep_digits, "states": rep_states, "length": t, "refutations": len(refutations)})

    direct = _direct_survivors(p, automaton, max_cycle_length)
    verdict = "spectrum" if not surviving and not direct else "undecided"
    return Thm47Report(p, max_cycle_length, verdict, cycles, surviving, direct)


def _direct_survivors(p: int, automaton: ResidueAutomaton, max_cycle_length: int) -> int:
    # independent check: run the actual label from every core residue and every
    # start inside the first T+2 blocks; a survivor must stay nonzero to the end
    # of block T+5
    horizon = thm47_block_start(max_cycle_length + 6) - 1
    label = thm47_label(p, horizon)
    last_start = thm47_block_start(max_cycle_length + 3) - 1
    survivors = 0
    for start in range(last_start):
        for r0 in automaton.states:
            r = r0
            for a in label[start:]:
                if r == 0:
                    break
                if r % 4 == 0:
                    r //= 4
                elif (r - a) % 4 == 0:
                    r = (r - a) // 4
                else:
                    break
            else:
                if r != 0:
                    survivors += 1
    return survivors


# ---------------------------------------------------------------------------
# measure of labels keeping an integer alive


@dataclass(frozen=True)
class DecayResult:
    digits: tuple[int, ...]
    lambda_: int
    depth: int
    measure: Fraction
    per_level: tuple[Fraction, ...]
    min_constrained: int | None
    bound: Fraction

    def as_dict(self) -> dict:
        return {
            "digits": list(self.digits),
            "lambda": self.lambda_,
            "depth": self.depth,
            "measure": str(self.measure),
            "measure_float": float(self.measure),
            "per_level": [str(x) for x in self.per_level],
            "min_constrained_levels": self.min_constrained,
            "bound": str(self.bound),
            "within_bound": self.min_constrained is not None
            and self.measure <= Fraction(len(self.digits) - 1, len(self.digits)) ** self.min_constrained,
        }


def measure_decay_exact(digits: DigitSet | Sequence[int], value: int, depth: int) -> DecayResult:
    """Exact label measure for which ``value`` is still alive and nonzero after ``depth`` levels.

    Label entries are i.i.d. uniform on C. Each level meets one fresh entry,
    and only the residue matters for the future, so probabilities are
    propagated per residue: cost O(depth * |C| * residues), not |C|**depth.
    A level is *constrained* when only part of C keeps the walk alive; every
    alive branch with at least j constrained levels has total mass at most
    ``((m-1)/m)**j``.
    """
    cset = _digit_set(digits)
    m = len(cset.digits)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    alive: dict[int, tuple[Fraction, int]] = {value: (Fraction(1), 0)} if value else {}
    per_level = [sum((p for p, _ in alive.values()), Fraction(0))]
    for _ in range(depth):
        nxt: dict[int, tuple[Fraction, int]] = {}

        def put(r, prob, constrained):
            if r == 0:
                return
            old = nxt.get(r)
            if old is None:
                nxt[r] = (prob, constrained)
            else:
                nxt[r] = (old[0] + prob, min(old[1], constrained))

        for r, (prob, constrained) in alive.items():
            if r % 4 == 0:
                put(r // 4, prob, constrained)
            elif r % 2:
                allowed = [c for c in cset.digits if (r - c) % 4 == 0]
                extra = 1 if len(allowed) < m else 0
                for c in allowed:
                    put((r - c) // 4, prob / m, constrained + extra)
        alive = nxt
        per_level.append(sum((p for p, _ in alive.values()), Fraction(0)))
    min_constrained = min((c for _, c in alive.values()), default=None)
    bound = Fraction(m - 1, m) ** max(depth - 1, 0)
    return DecayResult(cset.digits, value, depth, per_level[-1], tuple(per_level), min_constrained, bound)


@dataclass(frozen=True)
class SurvivalEstimate:
    digits: tuple[int, ...]
    lambda_: int
    depth: int
    samples: int
    seed: int
    alive: int

    @property
    def fraction(self) -> float:
        return self.alive / self.samples

    @property
    def standard_error(self) -> float:
        f = self.fraction
        return math.sqrt(f * (1 - f) / self.samples)

    def as_dict(self) -> dict:
        return {
            "digits": list(self.digits),
            "lambda": self.lambda_,
            "depth": self.depth,
            "samples": self.samples,
            "seed": self.seed,
            "alive": self.alive,
            "fraction": self.fraction,
            "standard_error": self.standard_error,
        }


def _survivors(digits: np.ndarray, value: int, depth: int, n: int, seed_seq: np.random.SeedSequence) -> int:
    rng = np.random.default_rng(seed_seq)
    r = np.full(n, value, dtype=np.int64)
    alive = r != 0
    for _ in range(depth):
        c = digits[rng.integers(0, len(digits), size=n)]
        zero_class = r % 4 == 0
        match = (r - c) % 4 == 0
        alive &= zero_class | match
        r = np.where(zero_class, r // 4, (r - c) // 4)
        alive &= r != 0
        r = np.where(alive, r, 0)
    return int(alive.sum())


def monte_carlo_survival(
    digits: DigitSet | Sequence[int],
    value: int,
    depth: int,
    samples: int,
    seed: int = 0,
    chunk: int = 25_000,
    workers: int = 1,
) -> SurvivalEstimate:
    """Fraction of uniformly sampled labels keeping ``value`` alive for ``depth`` levels.

    Samples are split into fixed chunks seeded from ``SeedSequence(seed)``,
    so the result does not depend on ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    cset = _digit_set(digits)
    arr = np.array(cset.digits, dtype=np.int64)
    sizes = [min(chunk, samples - i) for i in range(0, samples, chunk)]
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(lambda job: _survivors(arr, value, depth, *job), jobs))
    else:
        counts = [_survivors(arr, value, depth, *job) for job in jobs]
    return SurvivalEstimate(cset.digits, value, depth, samples, seed, sum(counts))
