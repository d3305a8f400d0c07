"""Backward proof search for the intuitionistic linear fragment over atoms,
&, (+), *, and -o, plus an independent proof checker.

Every rule strictly decreases the total node count of the sequent, so naive
backward search terminates without loop checking; the node budget exists only
as a safety valve. Search is memoized on the context multiset, which is sound
because contexts are resources without order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .linear import Atom, Lolli, LinearFormula, Plus, Sequent, Tensor, With, render

DEFAULT_BUDGET = 10**6

RULES = (
    "Id", "TensorR", "TensorL", "WithR", "WithL1", "WithL2",
    "PlusR1", "PlusR2", "PlusL", "LolliR", "LolliL",
)


class ResourceLimit(Exception):
    """Search node budget exhausted; distinct from a not-derivable answer."""


@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Sequent
    premises: tuple["ProofTree", ...] = ()


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""


ACCEPT = CheckResult(True)


def prove(sequent: Sequent, budget: int = DEFAULT_BUDGET) -> ProofTree | None:
    """A checkable proof of the sequent, or None if none exists."""
    searcher = _Searcher(budget)
    tree = searcher.prove(sequent.context, sequent.goal)
    if tree is None:
        return None
    # Subproofs keep the canonical context order used during search; restore
    # the caller's written order at the root only.
    return ProofTree(tree.rule, sequent, tree.premises)


def derivable(goal: LinearFormula, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether the goal is derivable from the empty context."""
    return prove(Sequent((), goal), budget) is not None


class _Searcher:
    def __init__(self, budget: int):
        self.budget = budget
        self.memo: dict[tuple, ProofTree | None] = {}

    def prove(self, context: tuple[LinearFormula, ...], goal: LinearFormula):
        context = _canonical(context)
        key = (context, goal)
        if key in self.memo:
            return self.memo[key]
        self.budget -= 1
        if self.budget < 0:
            raise ResourceLimit("proof search node budget exhausted")
        result = self._attempt(context, goal)
        self.memo[key] = result
        return result

    def _attempt(self, context, goal):
        conclusion = Sequent(context, goal)

        if isinstance(goal, Atom) and context == (goal,):
            return ProofTree("Id", conclusion)

        match goal:
            case Tensor(a, b):
                for left, right in _splits(context):
                    pa = self.prove(left, a)
                    if pa is None:
                        continue
                    pb = self.prove(right, b)
                    if pb is not None:
                        return ProofTree("TensorR", conclusion, (pa, pb))
            case With(a, b):
                pa = self.prove(context, a)
                if pa is not None:
                    pb = self.prove(context, b)
                    if pb is not None:
                        return ProofTree("WithR", conclusion, (pa, pb))
            case Plus(a, b):
                pa = self.prove(context, a)
                if pa is not None:
                    return ProofTree("PlusR1", conclusion, (pa,))
                pb = self.prove(context, b)
                if pb is not None:
                    return ProofTree("PlusR2", conclusion, (pb,))
            case Lolli(a, b):
                p = self.prove(context + (a,), b)
                if p is not None:
                    return ProofTree("LolliR", conclusion, (p,))

        for i, principal in enumerate(context):
            rest = context[:i] + context[i + 1:]
            match principal:
                case Tensor(a, b):
                    p = self.prove(rest + (a, b), goal)
                    if p is not None:
                        return ProofTree("TensorL", conclusion, (p,))
                case With(a, b):
                    p = self.prove(rest + (a,), goal)
                    if p is not None:
                        return ProofTree("WithL1", conclusion, (p,))
                    p = self.prove(rest + (b,), goal)
                    if p is not None:
                        return ProofTree("WithL2", conclusion, (p,))
                case Plus(a, b):
                    pa = self.prove(rest + (a,), goal)
                    if pa is not None:
                        pb = self.prove(rest + (b,), goal)
                        if pb is not None:
                            return ProofTree("PlusL", conclusion, (pa, pb))
                case Lolli(a, b):
                    for left, right in _splits(rest):
                        pa = self.prove(left, a)
                        if pa is None:
                            continue
                        pb = self.prove(right + (b,), goal)
                        if pb is not None:
                            return ProofTree("LolliL", conclusion, (pa, pb))
        return None


def _canonical(context: tuple[LinearFormula, ...]) -> tuple[LinearFormula, ...]:
    return tuple(sorted(context, key=render))


def _splits(context: tuple[LinearFormula, ...]):
    """All ways to split the context multiset in two, deduplicated."""
    n = len(context)
    indices = range(n)
    seen = set()
    for size in range(n + 1):
        for chosen in combinations(indices, size):
            chosen_set = set(chosen)
            left = _canonical(tuple(context[i] for i in chosen))
            right = _canonical(tuple(context[i] for i in indices if i not in chosen_set))
            if (left, right) in seen:
                continue
            seen.add((left, right))
            yield left, right


# --- independent proof checking ----------------------------------------------


def check_proof(proof: ProofTree) -> CheckResult:
    """Accept iff every node is a correct rule instance; otherwise reject with
    the path to the first offending node."""
    return _check(proof, ())


def _check(node: ProofTree, path: tuple[int, ...]) -> CheckResult:
    reason = _check_node(node)
    if reason:
        return CheckResult(False, path, reason)
    for i, premise in enumerate(node.premises):
        result = _check(premise, path + (i,))
        if not result.ok:
            return result
    return ACCEPT


def _check_node(node: ProofTree) -> str | None:
    ctx = Counter(node.conclusion.context)
    goal = node.conclusion.goal
    premises = node.premises

    def arity(n: int) -> str | None:
        if len(premises) != n:
            return f"{node.rule} needs {n} premise(s), has {len(premises)}"
        return None

    match node.rule:
        case "Id":
            if premises:
                return "Id takes no premises"
            if not isinstance(goal, Atom):
                return "Id requires an atomic goal"
            if ctx != Counter((goal,)):
                return "Id requires context equal to the goal atom"
        case "TensorR":
            if (err := arity(2)):
                return err
            if not isinstance(goal, Tensor):
                return "TensorR requires a tensor goal"
            if premises[0].conclusion.goal != goal.left:
                return "first premise goal must be the left operand"
            if premises[1].conclusion.goal != goal.right:
                return "second premise goal must be the right operand"
            merged = Counter(premises[0].conclusion.context)
            merged.update(premises[1].conclusion.context)
            if merged != ctx:
                return "premise contexts do not partition the conclusion context"
        case "TensorL":
            if (err := arity(1)):
                return err
            if not _matches_left(ctx, goal, premises[0], Tensor,
                                 lambda f: (f.left, f.right)):
                return "no tensor in the context decomposes to the premise"
        case "WithR":
            if (err := arity(2)):
                return err
            if not isinstance(goal, With):
                return "WithR requires a with goal"
            for premise, operand, side in (
                (premises[0], goal.left, "first"),
                (premises[1], goal.right, "second"),
            ):
                if premise.conclusion.goal != operand:
                    return f"{side} premise goal must be the {side} operand"
                if Counter(premise.conclusion.context) != ctx:
                    return f"{side} premise must keep the conclusion context"
        case "WithL1":
            if (err := arity(1)):
                return err
            if not _matches_left(ctx, goal, premises[0], With, lambda f: (f.left,)):
                return "no with in the context decomposes to the premise (left)"
        case "WithL2":
            if (err := arity(1)):
                return err
            if not _matches_left(ctx, goal, premises[0], With, lambda f: (f.right,)):
                return "no with in the context decomposes to the premise (right)"
        case "PlusR1" | "PlusR2":
            if (err := arity(1)):
                return err
            if not isinstance(goal, Plus):
                return f"{node.rule} requires a plus goal"
            operand = goal.left if node.rule == "PlusR1" else goal.right
            if premises[0].conclusion.goal != operand:
                return "premise goal must be the chosen operand"
            if Counter(premises[0].conclusion.context) != ctx:
                return "premise must keep the conclusion context"
        case "PlusL":
            if (err := arity(2)):
                return err
            for plus in set(ctx):
                if not isinstance(plus, Plus):
                    continue
                rest = ctx - Counter((plus,))
                left_ok = (
                    premises[0].conclusion.goal == goal
                    and Counter(premises[0].conclusion.context)
                    == rest + Counter((plus.left,))
                )
                right_ok = (
                    premises[1].conclusion.goal == goal
                    and Counter(premises[1].conclusion.context)
                    == rest + Counter((plus.right,))
                )
                if left_ok and right_ok:
                    return None
            return "no plus in the context decomposes to both premises"
        case "LolliR":
            if (err := arity(1)):
                return err
            if not isinstance(goal, Lolli):
                return "LolliR requires a lolli goal"
            if premises[0].conclusion.goal != goal.consequent:
                return "premise goal must be the consequent"
            if Counter(premises[0].conclusion.context) != ctx + Counter(
                (goal.antecedent,)
            ):
                return "premise context must add the antecedent"
        case "LolliL":
            if (err := arity(2)):
                return err
            first, second = premises
            second_ctx = Counter(second.conclusion.context)
            if second.conclusion.goal != goal:
                return "second premise must keep the conclusion goal"
            for lolli in set(ctx):
                if not isinstance(lolli, Lolli):
                    continue
                if first.conclusion.goal != lolli.antecedent:
                    continue
                if second_ctx[lolli.consequent] < 1:
                    continue
                merged = Counter(first.conclusion.context) + second_ctx
                merged.subtract((lolli.consequent,))
                merged += Counter()  # drop zero entries
                if merged + Counter((lolli,)) == ctx:
                    return None
            return "no lolli in the context matches the premises"
        case _:
            return f"unknown rule {node.rule!r}"
    return None


def _matches_left(ctx: Counter, goal, premise: ProofTree, node_type, parts) -> bool:
    if premise.conclusion.goal != goal:
        return False
    premise_ctx = Counter(premise.conclusion.context)
    for principal in set(ctx):
        if not isinstance(principal, node_type):
            continue
        expected = ctx - Counter((principal,)) + Counter(parts(principal))
        if premise_ctx == expected:
            return True
    return False


# --- serialization ------------------------------------------------------------


def proof_to_text(proof: ProofTree) -> str:
    """Indented text format: ``rule | sequent``, children indented two spaces."""
    lines: list[str] = []

    def emit(node: ProofTree, depth: int):
        lines.append(f"{'  ' * depth}{node.rule} | {node.conclusion}")
        for premise in node.premises:
            emit(premise, depth + 1)

    emit(proof, 0)
    return "\n".join(lines) + "\n"


def proof_from_text(text: str) -> ProofTree:
    """Inverse of proof_to_text; raises ValueError on malformed trees."""
    from .parsing import parse_sequent

    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        indent = len(raw) - len(raw.lstrip(" "))
        if indent % 2:
            raise ValueError(f"line {lineno}: odd indentation")
        rule, sep, sequent_text = raw.strip().partition(" | ")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'rule | sequent'")
        rule = rule.strip()
        if rule not in RULES:
            raise ValueError(f"line {lineno}: unknown rule {rule!r}")
        entries.append((indent // 2, rule, parse_sequent(sequent_text.strip())))

    if not entries:
        raise ValueError("empty proof text")

    def build(index: int, depth: int) -> tuple[ProofTree, int]:
        level, rule, sequent = entries[index]
        if level != depth:
            raise ValueError(f"entry {index}: unexpected indentation")
        index += 1
        premises = []
        while index < len(entries) and entries[index][0] == depth + 1:
            child, index = build(index, depth + 1)
            premises.append(child)
        return ProofTree(rule, sequent, tuple(premises)), index

    tree, consumed = build(0, 0)
    if consumed != len(entries):
        raise ValueError("trailing proof lines outside the root tree")
    return tree
