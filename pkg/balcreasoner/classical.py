"""Classical (unlabelled) ALC tableau"""

import logging
from collections import OrderedDict

from balcreasoner.constants import (DEFAULT_MAX_CLASSICAL_STEPS, FRESH_INDIVIDUAL_PREFIX, IMPLICIT_INDIVIDUAL,
                                    QUERY_INDIVIDUAL)
from balcreasoner.exceptions import ResourceLimitExceeded
from balcreasoner.ontology import (TOP, And, ConceptAssertion, ConceptName, Exists, Forall, GCI, Not, Or, RoleAssertion,
                                   internalize, is_top)


class ClassicalAbox(object):
    """
    The working state of one branch: assertions in NNF, role edges and the generated individuals.
    """

    def __init__(self):
        self.concepts = OrderedDict()
        self.order = []
        self.edges = OrderedDict()
        self.parent = {}
        self.counter = 0
        self.done = set()
        self.clash = False

    def copy(self):
        other = ClassicalAbox()
        other.concepts = OrderedDict((name, OrderedDict(concepts)) for name, concepts in self.concepts.items())
        other.order = list(self.order)
        other.edges = OrderedDict((individual, list(edges)) for individual, edges in self.edges.items())
        other.parent = dict(self.parent)
        other.counter = self.counter
        other.done = set(self.done)
        other.clash = self.clash
        return other

    @property
    def individuals(self):
        return list(self.concepts)

    def add_individual(self, individual):
        if individual not in self.concepts:
            self.concepts[individual] = OrderedDict()
            self.edges[individual] = []

    def add_concept(self, concept, individual):
        self.add_individual(individual)
        concepts = self.concepts[individual]
        if concept in concepts:
            return False
        concepts[concept] = None
        self.order.append((concept, individual))
        if isinstance(concept, ConceptName) and Not(concept) in concepts:
            self.clash = True
        elif isinstance(concept, Not) and concept.operand in concepts:
            self.clash = True
        return True

    def add_role(self, role, source, target):
        self.add_individual(source)
        self.add_individual(target)
        if (role, target) not in self.edges[source]:
            self.edges[source].append((role, target))

    def fresh_individual(self, parent):
        self.counter += 1
        individual = '{}{}'.format(FRESH_INDIVIDUAL_PREFIX, self.counter)
        self.add_individual(individual)
        self.parent[individual] = parent
        return individual

    def successors(self, individual, role):
        return [target for name, target in self.edges[individual] if name == role]

    def ancestors(self, individual):
        while individual in self.parent:
            individual = self.parent[individual]
            yield individual

    def is_directly_blocked(self, individual):
        if individual not in self.parent:
            return False
        concepts = self.concepts[individual].keys()
        return any(concepts <= self.concepts[ancestor].keys() for ancestor in self.ancestors(individual))

    def is_blocked(self, individual):
        """A generated individual is blocked if it or one of its ancestors is blocked by a proper ancestor."""
        if self.is_directly_blocked(individual):
            return True
        return any(self.is_directly_blocked(ancestor) for ancestor in self.ancestors(individual))


def initial_abox(axioms):
    abox = ClassicalAbox()
    for axiom in axioms:
        if isinstance(axiom, ConceptAssertion):
            abox.add_concept(axiom.concept.nnf(), axiom.individual)
        elif isinstance(axiom, RoleAssertion):
            abox.add_role(axiom.role, axiom.source, axiom.target)
    if not abox.concepts:
        abox.add_concept(TOP, IMPLICIT_INDIVIDUAL)
    return abox


def _step(abox, gci_concepts):
    """
    Apply the first applicable rule.

    :return: None if the ABox is complete, else the list of branches to continue with (the first one
        is explored first)
    """
    for individual in abox.individuals:
        for concept in gci_concepts:
            if concept not in abox.concepts[individual]:
                abox.add_concept(concept, individual)
                return [abox]

    for concept, individual in abox.order:
        if isinstance(concept, And) and (concept, individual) not in abox.done:
            abox.done.add((concept, individual))
            abox.add_concept(concept.left, individual)
            abox.add_concept(concept.right, individual)
            return [abox]

    for concept, individual in abox.order:
        if isinstance(concept, Or) and not is_top(concept) and (concept, individual) not in abox.done:
            abox.done.add((concept, individual))
            present = abox.concepts[individual]
            if concept.left in present or concept.right in present:
                continue
            other = abox.copy()
            abox.add_concept(concept.left, individual)
            other.add_concept(concept.right, individual)
            return [abox, other]

    for concept, individual in abox.order:
        if isinstance(concept, Forall):
            for target in abox.successors(individual, concept.role):
                if concept.filler not in abox.concepts[target]:
                    abox.add_concept(concept.filler, target)
                    return [abox]

    for concept, individual in abox.order:
        if isinstance(concept, Exists):
            if any(concept.filler in abox.concepts[target] for target in abox.successors(individual, concept.role)):
                continue
            if abox.is_blocked(individual):
                continue
            target = abox.fresh_individual(individual)
            abox.add_role(concept.role, individual, target)
            abox.add_concept(concept.filler, target)
            return [abox]

    return None


def is_classically_consistent(axioms, max_steps=DEFAULT_MAX_CLASSICAL_STEPS):
    """
    Decide whether a classical ALC ontology has a model.

    Rules are applied in the order subsumption, conjunction, disjunction, universal, existential;
    disjunctions are explored by backtracking, first disjunct first.

    :param axioms: An iterable of :class:`GCI`, :class:`ConceptAssertion` and :class:`RoleAssertion`
    :param int max_steps: Rule application budget over all branches
    :raises ResourceLimitExceeded: If the budget is exhausted
    :rtype: bool
    """
    axioms = tuple(axioms)
    gci_concepts = list(OrderedDict.fromkeys(
        concept for concept in (internalize(axiom) for axiom in axioms if isinstance(axiom, GCI))
        if not is_top(concept)))
    stack = [initial_abox(axioms)]
    steps = 0
    while stack:
        abox = stack.pop()
        while not abox.clash:
            steps += 1
            if steps > max_steps:
                raise ResourceLimitExceeded('Classical tableau exceeded {} rule applications'.format(max_steps))
            branches = _step(abox, gci_concepts)
            if branches is None:
                logging.debug('Classical tableau found a complete ABox after %d steps', steps)
                return True
            abox = branches[0]
            stack.extend(reversed(branches[1:]))
    logging.debug('Classical tableau closed every branch after %d steps', steps)
    return False


def classical_entails_subsumption(axioms, sub, sup, max_steps=DEFAULT_MAX_CLASSICAL_STEPS):
    """Decide T |= C sub D by refuting an instance of ``C and not D``."""
    query = ConceptAssertion(And(sub, Not(sup)), QUERY_INDIVIDUAL)
    tbox = [axiom for axiom in axioms if isinstance(axiom, GCI)]
    return not is_classically_consistent(tbox + [query], max_steps=max_steps)
