"""Descriptor formulas over the choice/product/implication connectives.

Formulas are immutable trees. Syntactic operand order is preserved and never
normalized: Tensor(A, B) and Tensor(B, A) are distinct syntax even though the
prover treats them as interderivable, because left-to-right order in a
published descriptor can carry meaning of its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .atoms import PronounAtom


class LinearFormula:
    """Base class; concrete nodes are Atom, With, Plus, Tensor, Lolli."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(LinearFormula):
    atom: PronounAtom


@dataclass(frozen=True)
class With(LinearFormula):
    """External choice: the speaker picks which operand to respect."""

    left: LinearFormula
    right: LinearFormula


@dataclass(frozen=True)
class Plus(LinearFormula):
    """Internal choice: the referent picks; the speaker handles either."""

    left: LinearFormula
    right: LinearFormula


@dataclass(frozen=True)
class Tensor(LinearFormula):
    """Both operands must be used."""

    left: LinearFormula
    right: LinearFormula


@dataclass(frozen=True)
class Lolli(LinearFormula):
    """Linear implication, read as correcting the antecedent to the consequent."""

    antecedent: LinearFormula
    consequent: LinearFormula


@dataclass(frozen=True)
class Sequent:
    """Judgment Γ ⊢ A over a linear context: multiplicity matters, order is as written."""

    context: tuple[LinearFormula, ...]
    goal: LinearFormula

    def __str__(self) -> str:
        ctx = ", ".join(render(f) for f in self.context)
        return f"{ctx} |- {render(self.goal)}" if ctx else f"|- {render(self.goal)}"


def children(formula: LinearFormula) -> tuple[LinearFormula, ...]:
    match formula:
        case Atom():
            return ()
        case With(l, r) | Plus(l, r) | Tensor(l, r) | Lolli(l, r):
            return (l, r)
    raise TypeError(f"not a linear formula: {formula!r}")


def size(formula: LinearFormula) -> int:
    """Number of AST nodes."""
    return 1 + sum(size(c) for c in children(formula))


def atoms(formula: LinearFormula) -> frozenset[PronounAtom]:
    """The set of distinct pronoun atoms occurring in the formula."""
    if isinstance(formula, Atom):
        return frozenset((formula.atom,))
    return frozenset().union(*(atoms(c) for c in children(formula)))


# Binding strength, weakest first: * , & , (+) , -o.  All right-associative,
# so "a/b & c/d (+) e/f" is With(a/b, Plus(c/d, e/f)) and a Tensor child of a
# With must be parenthesized.
_PREC = {Tensor: 1, With: 2, Plus: 3, Lolli: 4}
_OP = {Tensor: "*", With: "&", Plus: "(+)", Lolli: "-o"}
_ATOM_PREC = 5


def _prec(formula: LinearFormula) -> int:
    return _ATOM_PREC if isinstance(formula, Atom) else _PREC[type(formula)]


def render(formula: LinearFormula) -> str:
    """Canonical ASCII syntax with minimal parentheses; round-trips through parse_linear."""
    if isinstance(formula, Atom):
        return formula.atom.key
    prec = _prec(formula)
    left, right = children(formula)
    lhs = render(left)
    if _prec(left) <= prec:
        lhs = f"({lhs})"
    rhs = render(right)
    if _prec(right) < prec:
        rhs = f"({rhs})"
    return f"{lhs} {_OP[type(formula)]} {rhs}"
