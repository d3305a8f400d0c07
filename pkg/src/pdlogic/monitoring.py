"""Finite-trace semantics and online monitoring for temporal descriptors.

End-of-trace conventions, stated once because they decide every boundary case:
Next is strong (false at the last position), Box is vacuously true past the
end, Diamond is false past the end. Bounded box expands through weak next
(running out of trace is not a violation of "the next k utterances"), while
bounded diamond expands through strong next (silence satisfies no existential
demand).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .atoms import PronounAtom
from .temporal import (
    FALSE,
    TRUE,
    And,
    Atom,
    Box,
    BoxK,
    Diamond,
    DiamondK,
    FalseF,
    Implies,
    Next,
    Not,
    Or,
    TemporalFormula,
    TrueF,
)

SATISFIED = "Satisfied"
VIOLATED = "Violated"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Utterance:
    """One time step: the set of pronoun atoms used, plus where it came from."""

    atoms: frozenset[PronounAtom]
    source_span: tuple[int, int] | None = None


@dataclass(frozen=True)
class Trace:
    utterances: tuple[Utterance, ...]

    def __len__(self) -> int:
        return len(self.utterances)


EMPTY_TRACE = Trace(())


@dataclass(frozen=True)
class Verdict:
    """Monitoring outcome; monotone once Satisfied or Violated."""

    status: str
    witness_position: int | None = None

    @property
    def conclusive(self) -> bool:
        return self.status != INCONCLUSIVE

    def __str__(self) -> str:
        return self.status


def evaluate(formula: TemporalFormula, trace: Trace, position: int) -> bool:
    """Direct recursive finite-trace semantics.

    ``position == len(trace)`` is the empty suffix, where Box is vacuously
    true and Atom/Next/Diamond are false.
    """
    end = len(trace)
    if not 0 <= position <= end:
        raise IndexError(f"position {position} outside [0, {end}]")
    match formula:
        case Atom(a):
            return position < end and a in trace.utterances[position].atoms
        case TrueF():
            return True
        case FalseF():
            return False
        case Not(f):
            return not evaluate(f, trace, position)
        case And(l, r):
            return evaluate(l, trace, position) and evaluate(r, trace, position)
        case Or(l, r):
            return evaluate(l, trace, position) or evaluate(r, trace, position)
        case Implies(l, r):
            return (not evaluate(l, trace, position)) or evaluate(r, trace, position)
        case Next(f):
            return position + 1 <= end - 1 and evaluate(f, trace, position + 1)
        case Box(f):
            return all(evaluate(f, trace, j) for j in range(position, end))
        case Diamond(f):
            return any(evaluate(f, trace, j) for j in range(position, end))
        case BoxK(k, f):
            if position == end:
                # empty window: agrees with the weak-next expansion chain,
                # which collapses to the body at the empty suffix
                return evaluate(f, trace, end)
            stop = min(position + k - 1, end - 1)
            return all(evaluate(f, trace, j) for j in range(position, stop + 1))
        case DiamondK(k, f):
            if position == end:
                return evaluate(f, trace, end)
            stop = min(position + k - 1, end - 1)
            return any(evaluate(f, trace, j) for j in range(position, stop + 1))
    raise TypeError(f"not a temporal formula: {formula!r}")


def expand_bounded(formula: TemporalFormula) -> TemporalFormula:
    """Eliminate bounded modalities; the result evaluates identically.

    BoxK(k, f) becomes f weak-nexted out k-1 steps; DiamondK(k, f) becomes f
    strong-nexted out k-1 steps.
    """
    match formula:
        case Atom() | TrueF() | FalseF():
            return formula
        case Not(f):
            return Not(expand_bounded(f))
        case And(l, r):
            return And(expand_bounded(l), expand_bounded(r))
        case Or(l, r):
            return Or(expand_bounded(l), expand_bounded(r))
        case Implies(l, r):
            return Implies(expand_bounded(l), expand_bounded(r))
        case Next(f):
            return Next(expand_bounded(f))
        case Box(f):
            return Box(expand_bounded(f))
        case Diamond(f):
            return Diamond(expand_bounded(f))
        case BoxK(k, f):
            body = expand_bounded(f)
            result = body
            for _ in range(k - 1):
                # weak next: not (next (not ...))
                result = And(body, Not(Next(Not(result))))
            return result
        case DiamondK(k, f):
            body = expand_bounded(f)
            result = body
            for _ in range(k - 1):
                result = Or(body, Next(result))
            return result
    raise TypeError(f"not a temporal formula: {formula!r}")


def simplify(formula: TemporalFormula) -> TemporalFormula:
    """One level of True/False absorption, and/or idempotence on structurally
    equal operands, and double-negation elimination. Children are assumed
    already simplified."""
    match formula:
        case Not(TrueF()):
            return FALSE
        case Not(FalseF()):
            return TRUE
        case Not(Not(f)):
            return f
        case And(FalseF(), _) | And(_, FalseF()):
            return FALSE
        case And(TrueF(), f) | And(f, TrueF()):
            return f
        case And(l, r) if l == r:
            return l
        case Or(TrueF(), _) | Or(_, TrueF()):
            return TRUE
        case Or(FalseF(), f) | Or(f, FalseF()):
            return f
        case Or(l, r) if l == r:
            return l
        case Implies(FalseF(), _) | Implies(_, TrueF()):
            return TRUE
        case Implies(TrueF(), f):
            return f
        case Implies(f, FalseF()):
            return simplify(Not(f))
        case _:
            return formula


def progress(formula: TemporalFormula, utterance: Utterance) -> TemporalFormula:
    """One-step derivative: the residual obligation after this utterance.

    Requires bounded modalities to have been expanded away first.
    """
    match formula:
        case Atom(a):
            return TRUE if a in utterance.atoms else FALSE
        case TrueF() | FalseF():
            return formula
        case Not(f):
            return simplify(Not(progress(f, utterance)))
        case And(l, r):
            return simplify(And(progress(l, utterance), progress(r, utterance)))
        case Or(l, r):
            return simplify(Or(progress(l, utterance), progress(r, utterance)))
        case Implies(l, r):
            return simplify(Implies(progress(l, utterance), progress(r, utterance)))
        case Next(f):
            return f
        case Box(f):
            return simplify(And(progress(f, utterance), formula))
        case Diamond(f):
            return simplify(Or(progress(f, utterance), formula))
        case BoxK() | DiamondK():
            raise ValueError("progress requires expand_bounded to run first")
    raise TypeError(f"not a temporal formula: {formula!r}")


class MonitorSession:
    """Online monitor over one utterance stream.

    Progression-based: it may stay Inconclusive in states a semantically
    omniscient monitor would already decide, but it never flips a conclusive
    verdict. Progression alone cannot decide end-of-stream cases (weak-next
    obligations are indistinguishable from strong ones in the residual), so
    alongside the residual the session tracks whether the formula would hold
    if the stream ended at the current step; a conclusive verdict is emitted
    only when the residual constant and that ends-now answer agree.
    """

    def __init__(self, formula: TemporalFormula):
        self.residual = expand_bounded(formula)
        self.position = 0
        self.verdict = Verdict(INCONCLUSIVE)
        self._holds_if_ended = evaluate(self.residual, EMPTY_TRACE, 0)

    def feed(self, utterance: Utterance) -> Verdict:
        if self.verdict.conclusive:
            self.position += 1
            return self.verdict
        self._holds_if_ended = evaluate(self.residual, Trace((utterance,)), 0)
        self.residual = progress(self.residual, utterance)
        if isinstance(self.residual, TrueF) and self._holds_if_ended:
            self.verdict = Verdict(SATISFIED, self.position)
        elif isinstance(self.residual, FalseF) and not self._holds_if_ended:
            self.verdict = Verdict(VIOLATED, self.position)
        self.position += 1
        return self.verdict

    def finish(self) -> Verdict:
        """Force a verdict for end-of-stream."""
        if self.verdict.conclusive:
            return self.verdict
        status = SATISFIED if self._holds_if_ended else VIOLATED
        self.verdict = Verdict(status)
        return self.verdict


def monitor(formula: TemporalFormula, utterances: Iterable[Utterance]) -> list[Verdict]:
    """Verdict after each utterance; if the stream ends inconclusive, a final
    forced verdict is appended."""
    session = MonitorSession(formula)
    verdicts = [session.feed(u) for u in utterances]
    if not verdicts or not verdicts[-1].conclusive:
        verdicts.append(session.finish())
    return verdicts


def final_verdict(formula: TemporalFormula, trace: Trace) -> Verdict:
    """The monitor's conclusive verdict over a whole trace."""
    return monitor(formula, trace.utterances)[-1]


def parse_trace(text: str) -> Trace:
    """Trace file format: one utterance per line of whitespace-separated atom
    tokens, ``-`` for an utterance with no atoms, ``#`` comment lines, blank
    lines ignored."""
    utterances = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "-":
            utterances.append(Utterance(frozenset()))
            continue
        atoms = set()
        for token in line.split():
            subject, slash, obj = token.partition("/")
            if not slash:
                raise ValueError(
                    f"trace line {lineno}: expected atom tokens like she/her, got {token!r}"
                )
            atoms.add(PronounAtom(subject, obj))
        utterances.append(Utterance(frozenset(atoms)))
    return Trace(tuple(utterances))
