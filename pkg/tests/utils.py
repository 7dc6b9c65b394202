# -*- coding: utf-8 -*-
# Helpers shared by the test modules only
import itertools
import os
import random

from balcreasoner.bayes import BayesNet
from balcreasoner.classical import is_classically_consistent
from balcreasoner.constants import QUERY_INDIVIDUAL
from balcreasoner.contexts import ComplexContext, PrimitiveContext, Signature
from balcreasoner.ontology import (And, ConceptAssertion, ConceptName, Exists, FiniteInterpretation, Forall, GCI, Kb,
                                   Not, Or, RoleAssertion, VAxiom, is_model, restriction, vocabulary)
from balcreasoner.parsing import load_kb, parse_bn, read_text

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')

CONCEPT_NAMES = ('A', 'B', 'C')
ROLE_NAMES = ('r', 's')
INDIVIDUALS = ('a', 'b')


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def fixture_kb(ontology, bn='fig1.bn'):
    return load_kb(fixture_path(ontology), fixture_path(bn))


def fixture_bn(name='fig1.bn'):
    return parse_bn(read_text(fixture_path(name)))


def random_concept(rng, depth):
    if depth <= 0 or rng.random() < 0.3:
        concept = ConceptName(rng.choice(CONCEPT_NAMES))
        return Not(concept) if rng.random() < 0.3 else concept
    kind = rng.choice(('not', 'and', 'or', 'exists', 'forall'))
    if kind == 'not':
        return Not(random_concept(rng, depth - 1))
    if kind == 'and':
        return And(random_concept(rng, depth - 1), random_concept(rng, depth - 1))
    if kind == 'or':
        return Or(random_concept(rng, depth - 1), random_concept(rng, depth - 1))
    if kind == 'exists':
        return Exists(rng.choice(ROLE_NAMES), random_concept(rng, depth - 1))
    return Forall(rng.choice(ROLE_NAMES), random_concept(rng, depth - 1))


def random_label(rng, signature):
    if rng.random() < 0.3:
        return ComplexContext.top()
    members = []
    for _ in range(rng.randint(1, 2)):
        variables = rng.sample(signature.variables, rng.randint(1, min(2, len(signature))))
        members.append(PrimitiveContext((variable, rng.choice(signature.domain(variable))) for variable in variables))
    return ComplexContext(members)


def random_bn(rng, size):
    signature = Signature(('V{}'.format(index), ('t', 'f')) for index in range(size))
    parents, cpts = {}, {}
    for index, variable in enumerate(signature.variables):
        parents[variable] = [candidate for candidate in signature.variables[:index] if rng.random() < 0.4]
        cpts[variable] = {}
        for row in itertools.product(*(signature.domain(parent) for parent in parents[variable])):
            probability = rng.choice((0.0, 0.25, 0.5, 0.8, 1.0))
            cpts[variable][row] = {'t': probability, 'f': 1.0 - probability}
    return BayesNet(signature, parents, cpts)


def random_kb(seed):
    """
    A small random knowledge base: at most 3 Boolean variables, 6 axioms of which at most 2 are GCIs,
    concept depth 3, 2 roles and 2 individuals. GCIs are kept shallower than assertions so that
    saturation stays small.
    """
    rng = random.Random(seed)
    bn = random_bn(rng, rng.randint(1, 3))
    ontology = []
    gcis = 0
    for _ in range(rng.randint(1, 6)):
        label = random_label(rng, bn.signature)
        kind = rng.random()
        if kind < 0.4 and gcis < 2:
            gcis += 1
            axiom = GCI(random_concept(rng, 2), random_concept(rng, 2))
        elif kind < 0.8:
            axiom = ConceptAssertion(random_concept(rng, 3), rng.choice(INDIVIDUALS))
        else:
            axiom = RoleAssertion(rng.choice(ROLE_NAMES), rng.choice(INDIVIDUALS), rng.choice(INDIVIDUALS))
        ontology.append(VAxiom(axiom, label))
    return Kb(ontology, bn)


def random_query(seed, kb):
    rng = random.Random(seed)
    return random_concept(rng, 2), random_concept(rng, 2), random_label(rng, kb.signature)


def world_entails(kb, world, extra):
    """Tell whether the restriction of ``kb`` to ``world`` becomes inconsistent with the ``extra`` axioms."""
    return not is_classically_consistent(restriction(kb.ontology, world) + tuple(extra))


def minimal_model_probability(kb, holds, given=None):
    """
    Probability of the worlds of positive probability in which ``holds(world)`` is true, divided by the
    probability of ``given``. Each positive world is interpreted by one model of its restriction that
    violates the consequence whenever some model does.
    """
    if given is None:
        given = ComplexContext.top()
    numerator = denominator = 0.0
    for world, probability in kb.bn.joint_distribution():
        if probability == 0.0 or not given.satisfied_by(world):
            continue
        denominator += probability
        if holds(world):
            numerator += probability
    return numerator / denominator


def brute_force_subsumption(kb, sub, sup, context, given=None):
    query = (ConceptAssertion(And(sub, Not(sup)), QUERY_INDIVIDUAL),)
    return minimal_model_probability(
        kb, lambda world: not context.satisfied_by(world) or world_entails(kb, world, query), given)


def brute_force_instance(kb, concept, individual, context, given=None):
    query = (ConceptAssertion(Not(concept), individual),)
    return minimal_model_probability(
        kb, lambda world: not context.satisfied_by(world) or world_entails(kb, world, query), given)


def random_small_ontology(rng, quantifiers=True):
    """A handful of axioms over concept names ``A`` and ``B``, role ``r`` and individuals ``a`` and ``b``."""

    def concept(depth):
        if depth <= 0 or rng.random() < 0.35:
            return ConceptName(rng.choice(('A', 'B')))
        kinds = ('not', 'and', 'or', 'exists', 'forall') if quantifiers else ('not', 'and', 'or')
        kind = rng.choice(kinds)
        if kind == 'not':
            return Not(concept(depth - 1))
        if kind == 'and':
            return And(concept(depth - 1), concept(depth - 1))
        if kind == 'or':
            return Or(concept(depth - 1), concept(depth - 1))
        if kind == 'exists':
            return Exists('r', concept(depth - 1))
        return Forall('r', concept(depth - 1))

    axioms = []
    for _ in range(rng.randint(1, 4)):
        kind = rng.random()
        if kind < 0.4:
            axioms.append(GCI(concept(2), concept(2)))
        elif kind < 0.85:
            axioms.append(ConceptAssertion(concept(2), rng.choice(INDIVIDUALS)))
        else:
            axioms.append(RoleAssertion('r', rng.choice(INDIVIDUALS), rng.choice(INDIVIDUALS)))
    return axioms


def small_interpretations(axioms, size):
    """Every interpretation of the vocabulary of ``axioms`` over the domain ``0 .. size - 1``."""
    symbols = vocabulary(axioms)
    domain = range(size)
    subsets = [frozenset(chosen) for count in range(size + 1) for chosen in itertools.combinations(domain, count)]
    pairs = list(itertools.product(domain, repeat=2))
    relations = [frozenset(chosen) for count in range(len(pairs) + 1)
                 for chosen in itertools.combinations(pairs, count)]
    for concepts in itertools.product(subsets, repeat=len(symbols.concepts)):
        for roles in itertools.product(relations, repeat=len(symbols.roles)):
            for elements in itertools.product(domain, repeat=len(symbols.individuals)):
                yield FiniteInterpretation(domain, dict(zip(symbols.concepts, concepts)),
                                           dict(zip(symbols.roles, roles)), dict(zip(symbols.individuals, elements)))


def has_small_model(axioms, size):
    """Search exhaustively for a model of ``axioms`` with at most ``size`` elements."""
    return any(is_model(interpretation, axioms)
               for domain_size in range(1, size + 1) for interpretation in small_interpretations(axioms, domain_size))
