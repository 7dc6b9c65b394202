"""Bayesian networks over the context variables"""

import itertools
import logging
import math
from collections import OrderedDict
from graphlib import CycleError, TopologicalSorter

from balcreasoner.constants import TOLERANCE
from balcreasoner.contexts import ComplexContext, PrimitiveContext
from balcreasoner.exceptions import InvalidBayesNet, UndefinedConditioning


class BayesNet(object):
    """
    A DAG over the variables of a signature together with its conditional probability tables.

    ``cpts`` maps every variable to a table whose keys are tuples of parent values (in the order of
    ``parents[variable]``; root variables use the empty tuple) and whose values map each value of
    the variable to its probability.
    """

    def __init__(self, signature, parents=None, cpts=None):
        parents = parents or {}
        cpts = cpts or {}
        self.signature = signature
        self.parents = OrderedDict((variable, tuple(parents.get(variable, ()))) for variable in signature.variables)
        for variable in parents:
            if variable not in self.parents:
                self.parents[variable] = tuple(parents[variable])
        self.cpts = {variable: {tuple(row): dict(distribution) for row, distribution in table.items()}
                     for variable, table in cpts.items()}
        self._joint = None

    def ensure_valid(self):
        """
        :raises InvalidBayesNet: If :func:`validate` reports any violation
        :return: The network itself
        """
        violations = validate(self)
        if violations:
            raise InvalidBayesNet(violations)
        return self

    def joint_distribution(self):
        """
        All worlds with their probability, computed once.

        :return: A tuple of ``(world, probability)`` pairs in enumeration order
        :rtype: tuple
        """
        if self._joint is None:
            self._joint = tuple((world, world_probability(self, world)) for world in enumerate_worlds(self))
            logging.debug('Enumerated %d worlds', len(self._joint))
        return self._joint

    def __repr__(self):
        return 'BayesNet({!r})'.format(self.signature)


def parent_assignments(bn, variable):
    """Every assignment of the parents of ``variable``, in lexicographic domain order."""
    return itertools.product(*(bn.signature.domain(parent) for parent in bn.parents[variable]))


def _describe_row(bn, variable, row):
    return '{} | {}'.format(variable, ' '.join('{}={}'.format(parent, value)
                                               for parent, value in zip(bn.parents[variable], row))).rstrip()


def validate(bn):
    """
    Check acyclicity and the shape of every conditional probability table.

    :param BayesNet bn: The network
    :return: A list of human readable violations, empty if the network is valid
    :rtype: list
    """
    violations = []
    declared = set(bn.signature.variables)
    for variable, parents in bn.parents.items():
        if variable not in declared:
            violations.append('parents given for undeclared variable {}'.format(variable))
        for parent in parents:
            if parent not in declared:
                violations.append('undeclared parent {} of {}'.format(parent, variable))
    if violations:
        return violations

    cycle = find_cycle(bn)
    if cycle:
        return ['cycle {}'.format(' -> '.join(cycle))]

    for variable in bn.signature.variables:
        violations.extend(message for row, message in table_violations(bn, variable))
    return violations


def find_cycle(bn):
    """Return a list of variables forming a cycle of the parent graph, or None."""
    try:
        tuple(TopologicalSorter(bn.parents).static_order())
    except CycleError as exc:
        return list(reversed(exc.args[1]))
    return None


def table_violations(bn, variable):
    """
    Check the conditional probability table of one variable.

    :return: A list of ``(row, message)`` pairs, ``row`` being the offending tuple of parent values
    :rtype: list
    """
    violations = []
    domain = bn.signature.domain(variable)
    table = bn.cpts.get(variable, {})
    expected = set(parent_assignments(bn, variable))
    for row in sorted(expected - set(table)):
        violations.append((row, 'missing cpt row {}'.format(_describe_row(bn, variable, row))))
    for row in sorted(set(table) - expected):
        violations.append((row, 'unexpected cpt row {}'.format(_describe_row(bn, variable, row))))
    for row in sorted(expected & set(table)):
        distribution = table[row]
        described = _describe_row(bn, variable, row)
        for value in domain:
            if value not in distribution:
                violations.append((row, 'missing value {} in cpt row {}'.format(value, described)))
        for value, probability in distribution.items():
            if value not in domain:
                violations.append((row, 'unknown value {} in cpt row {}'.format(value, described)))
            elif not 0.0 <= probability <= 1.0:
                violations.append((row, 'probability {:g} out of range in cpt row {}'.format(probability,
                                                                                             described)))
        total = math.fsum(distribution.values())
        if abs(total - 1.0) > TOLERANCE:
            violations.append((row, 'row sum {:g} in cpt row {}'.format(total, described)))
    return violations


def topological_order(bn):
    return tuple(TopologicalSorter(bn.parents).static_order())


def world_probability(bn, world):
    """
    Chain rule: the product over variables of P(X = world[X] | parents(X) = world[parents(X)]).

    :param BayesNet bn: A valid network
    :param World world: A total assignment over the network's signature
    :raises MalformedContext: If the world is not total or uses out-of-domain values
    :rtype: float
    """
    bn.signature.check_world(world)
    probability = 1.0
    for variable in bn.signature.variables:
        row = tuple(world[parent] for parent in bn.parents[variable])
        probability *= bn.cpts[variable][row][world[variable]]
    return probability


def enumerate_worlds(bn):
    return bn.signature.worlds()


def context_probability(bn, phi):
    """
    Sum the probabilities of the worlds satisfying ``phi``.

    :param BayesNet bn: A valid network
    :param ComplexContext phi: The context
    :rtype: float
    """
    if phi.is_bottom:
        return 0.0
    return math.fsum(probability for world, probability in bn.joint_distribution() if phi.satisfied_by(world))


def conditional_probability(bn, phi, given):
    """
    :raises UndefinedConditioning: If the conditioning context has probability zero
    """
    evidence = context_probability(bn, given)
    if evidence < TOLERANCE:
        raise UndefinedConditioning('Cannot condition on {!r}: its probability is 0'.format(given))
    return context_probability(bn, phi & given) / evidence


def positive_worlds(bn):
    return [world for world, probability in bn.joint_distribution() if probability > 0.0]


def zero_context(bn):
    """
    Context satisfied exactly by the worlds of probability zero.

    Every CPT cell holding exactly ``0.0`` contributes the primitive context pinning the variable
    to the cell's value and its parents to the cell's row.
    """
    members = []
    for variable in bn.signature.variables:
        for row, distribution in bn.cpts[variable].items():
            for value, probability in distribution.items():
                if probability == 0.0:
                    literals = list(zip(bn.parents[variable], row))
                    literals.append((variable, value))
                    members.append(PrimitiveContext(literals))
    return ComplexContext(members)
