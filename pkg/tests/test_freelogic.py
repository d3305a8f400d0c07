"""Description terms and formula evaluation over finite models."""

import itertools
import random

import pytest

from pdlogic import freelogic as fl
from pdlogic.freelogic import (
    Model,
    ModelFormatError,
    UnboundVariableError,
    UnknownPredicateError,
    check_sentence,
    eval_formula,
    eval_term,
    parse_model,
)
from pdlogic.parsing import parse_free, parse_free_term

TWO_MEN = parse_model("domain: a b\npred man/1: a b\n")
ONE_MAN = parse_model("domain: a b\npred man/1: b\n")

IOTA_MAN = parse_free_term("iota x. man(x)")
EPS_CONTRADICTION = parse_free_term("eps x. (man(x) /\\ !man(x))")


class TestEvalTerm:
    def test_iota_needs_a_unique_satisfier(self):
        assert eval_term(TWO_MEN, {}, IOTA_MAN) is None

    def test_contradictory_epsilon_does_not_denote(self):
        assert eval_term(TWO_MEN, {}, EPS_CONTRADICTION) is None

    def test_epsilon_picks_first_in_domain_order(self):
        assert eval_term(TWO_MEN, {}, parse_free_term("eps x. man(x)")) == "a"

    def test_iota_with_unique_satisfier(self):
        assert eval_term(ONE_MAN, {}, IOTA_MAN) == "b"

    def test_variable_lookup(self):
        assert eval_term(TWO_MEN, {"x": "b"}, fl.Var("x")) == "b"

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError):
            eval_term(TWO_MEN, {}, fl.Var("x"))


class TestEvalFormula:
    def test_no_witness_for_non_denoting_description(self):
        f = parse_free("exists y. y = iota x. man(x)")
        assert check_sentence(TWO_MEN, f) is False

    def test_membership_through_iota(self):
        assert check_sentence(ONE_MAN, parse_free("man(iota x. man(x))")) is True

    def test_excluded_middle_over_denoting_range(self):
        f = parse_free("forall x. man(x) \\/ !man(x)")
        assert check_sentence(TWO_MEN, f) is True
        assert check_sentence(ONE_MAN, f) is True

    def test_non_denoting_argument_makes_atom_false(self):
        f = parse_free("man(eps x. (man(x) /\\ !man(x)))")
        assert check_sentence(TWO_MEN, f) is False

    def test_identity_sentences(self):
        assert check_sentence(TWO_MEN, parse_free("exists x. x = x")) is True
        assert check_sentence(TWO_MEN, parse_free("exists x. !(x = x)")) is False

    def test_unknown_predicate(self):
        with pytest.raises(UnknownPredicateError):
            check_sentence(TWO_MEN, parse_free("forall x. woman(x) \\/ !woman(x)"))

    def test_free_variable_rejected_by_check_sentence(self):
        with pytest.raises(UnboundVariableError):
            check_sentence(TWO_MEN, parse_free("man(x)"))


def random_model(rng):
    domain = tuple(f"d{i}" for i in range(rng.randint(1, 4)))
    extension = frozenset(
        (d,) for d in domain if rng.random() < 0.5
    )
    return Model(domain, {("p", 1): extension})


class TestLaws:
    def test_iota_uniqueness_law(self):
        rng = random.Random(7)
        body = parse_free("p(x)")
        for _ in range(200):
            model = random_model(rng)
            satisfiers = [
                d for d in model.domain if eval_formula(model, {"x": d}, body)
            ]
            value = eval_term(model, {}, fl.Iota("x", body))
            if len(satisfiers) == 1:
                assert value == satisfiers[0]
            else:
                assert value is None

    def test_epsilon_deterministic_and_order_sensitive(self):
        rng = random.Random(8)
        term = fl.Epsilon("x", parse_free("p(x)"))
        for _ in range(100):
            model = random_model(rng)
            first = eval_term(model, {}, term)
            assert eval_term(model, {}, term) == first
            for perm in itertools.permutations(model.domain):
                permuted = Model(tuple(perm), model.predicates)
                # the witness may move, but denoting-or-not never changes
                assert (eval_term(permuted, {}, term) is None) == (first is None)

    def test_negative_free_law(self):
        rng = random.Random(9)
        for _ in range(100):
            model = random_model(rng)
            satisfiers = [
                d
                for d in model.domain
                if eval_formula(model, {"x": d}, parse_free("p(x)"))
            ]
            if len(satisfiers) == 1:
                continue  # denoting case; the law is about non-denoting terms
            f = parse_free("p(iota x. p(x))")
            assert check_sentence(model, f) is False
            assert check_sentence(model, fl.Not(f)) is True

    def test_quantifiers_bind_exactly_the_domain(self, monkeypatch):
        model = parse_model("domain: a b c\npred man/1: a b c\n")
        bindings = []
        real = fl.eval_formula

        def spy(m, env, formula):
            if isinstance(formula, fl.Pred):
                bindings.append(env["x"])
            return real(m, env, formula)

        monkeypatch.setattr(fl, "eval_formula", spy)
        f = fl.Forall("x", fl.Pred("man", (fl.Var("x"),)))
        assert fl.eval_formula(model, {}, f) is True
        # one environment per domain individual, never a non-denoting binding
        assert bindings == list(model.domain)


class TestModelFormat:
    def test_binary_predicate_tuples(self):
        model = parse_model("domain: a b\npred loves/2: a,b b,a\n")
        assert check_sentence(model, parse_free("forall x. exists y. loves(x, y)"))

    def test_unknown_individual_rejected(self):
        with pytest.raises(ModelFormatError):
            parse_model("domain: a\npred man/1: b\n")

    def test_empty_domain_rejected(self):
        with pytest.raises(ModelFormatError):
            parse_model("domain:\n")

    def test_duplicate_individuals_rejected(self):
        with pytest.raises(ModelFormatError):
            Model(("a", "a"))

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ModelFormatError):
            parse_model("domain: a b\npred man/1: a,b\n")

    def test_comments_and_blank_lines(self):
        model = parse_model("# m\n\ndomain: a b  # inline\npred man/1: a\n")
        assert model.domain == ("a", "b")
