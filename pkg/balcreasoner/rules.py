"""Expansion rules of the pinpointing tableau"""

from collections import OrderedDict, namedtuple

from balcreasoner.abox import insertable, is_blocked, oplus, support
from balcreasoner.contexts import entails
from balcreasoner.exceptions import RuleAlreadyRegistered, UnknownRule
from balcreasoner.ontology import And, ConceptAssertion, Exists, Forall, Or, RoleAssertion, is_top

RuleApplication = namedtuple('RuleApplication', 'rule target label aboxes')
"""The outcome of one rule firing: the rule id, the assertion it fired on, its label and the replacement ABoxes."""


class RuleRegistry(object):
    """A registry for expansion rule classes."""

    def __init__(self):
        self._registry = OrderedDict()

    def register(self, rule_class, rule_id):
        """
        Register an expansion rule class.

        :param balcreasoner.rules.ExpansionRule rule_class: Rule class that should be registered
        :param str rule_id: A string id to register the rule for
        :raises RuleAlreadyRegistered: If another rule with the given id has been registered
        """
        if rule_id in self._registry:
            raise RuleAlreadyRegistered('A rule with the id "{}" has already been registered'.format(rule_id))
        self._registry[rule_id] = rule_class

    def get_rule(self, rule_id):
        """
        Return a rule class by its id.

        :param str rule_id: The string id of the desired rule.
        :raises UnknownRule: If no rule has been registered with the given id.
        """
        try:
            return self._registry[rule_id]
        except KeyError:
            raise UnknownRule('Could not find rule with id "{}"'.format(rule_id))

    @property
    def rules(self):
        """
        Return the registered rules, highest priority first.

        :rtype: OrderedDict
        """
        ordered = sorted(self._registry.items(), key=lambda item: -item[1].priority)
        return OrderedDict(ordered)


rule_registry = RuleRegistry()


def register(rule_id, **kwargs):
    """
    A wrapper that registers a rule class to the rule registry.

    :param str rule_id: The string id to register the rule for.
    :keyword int priority: Rules with a higher priority are tried first (default 0).
    :keyword registry: The registry the rule class is registered at (default is the `rule_registry` instance).
    :return: The decorator function
    :rtype: function
    """
    def wrapper(rule_class):
        registry = kwargs.get('registry', rule_registry)
        rule_class.rule_id = rule_id
        rule_class.priority = kwargs.get('priority', 0)
        registry.register(rule_class, rule_id)
        return rule_class
    return wrapper


class ExpansionRule(object):
    """Base class for all expansion rules."""

    rule_id = None
    priority = 0

    def __init__(self, gcis, signature, absorbed=None):
        """
        :param list gcis: ``(concept, label)`` pairs, the internalized GCIs of the ontology
        :param Signature signature: Signature used for label entailment
        :param dict absorbed: ``(concept, label)`` pairs per concept name, unfolded where that name is asserted
        """
        self.gcis = gcis
        self.signature = signature
        self.absorbed = absorbed or {}

    def apply(self, abox):
        """
        Fire once on the oldest assertion the rule is applicable to.

        :param LabelledAbox abox: The ABox to expand
        :return: The application, or None if the rule is not applicable
        :rtype: RuleApplication
        """
        raise NotImplementedError()

    def insertable(self, abox, assertion, label):
        return insertable(abox, assertion, label, self.signature)

    def fired(self, target, label, *aboxes):
        return RuleApplication(self.rule_id, target, label, list(aboxes))


def _concept_assertions(abox, constructor):
    for assertion, label in list(abox.labels.items()):
        if isinstance(assertion, ConceptAssertion) and isinstance(assertion.concept, constructor):
            yield assertion, label


@register('subsumption', priority=50)
class SubsumptionRule(ExpansionRule):
    """
    Every individual gets ``not C or D`` under the label of each internalized GCI ``C sub D``. An
    absorbed GCI ``A sub D`` adds ``D`` to individuals asserted to be ``A``, under both labels.
    """

    def apply(self, abox):
        for individual in abox.individuals:
            for concept, label in self._candidates(abox, individual):
                assertion = ConceptAssertion(concept, individual)
                if self.insertable(abox, assertion, label):
                    oplus(abox, assertion, label)
                    return self.fired(assertion, label, abox)
        return None

    def _candidates(self, abox, individual):
        for concept, label in self.gcis:
            yield concept, label
        for trigger, unfolded in self.absorbed.items():
            trigger_label = abox.concept_label(trigger, individual)
            if trigger_label is None:
                continue
            for concept, label in unfolded:
                yield concept, trigger_label & label


@register('conjunction', priority=40)
class ConjunctionRule(ExpansionRule):

    def apply(self, abox):
        for assertion, label in _concept_assertions(abox, And):
            parts = [ConceptAssertion(assertion.concept.left, assertion.individual),
                     ConceptAssertion(assertion.concept.right, assertion.individual)]
            parts = [part for part in parts if self.insertable(abox, part, label)]
            if parts:
                for part in parts:
                    oplus(abox, part, label)
                return self.fired(assertion, label, abox)
        return None


@register('disjunction', priority=30)
class DisjunctionRule(ExpansionRule):
    """
    Forks the ABox when both disjuncts are insertable and the disjunction does not already hold
    wherever its label does.
    """

    def apply(self, abox):
        for assertion, label in _concept_assertions(abox, Or):
            concept, individual = assertion.concept, assertion.individual
            if is_top(concept):
                continue
            held = support(abox, concept.left, individual) | support(abox, concept.right, individual)
            if entails(label, held, self.signature):
                continue
            left = ConceptAssertion(concept.left, individual)
            right = ConceptAssertion(concept.right, individual)
            if self.insertable(abox, left, label) and self.insertable(abox, right, label):
                first, second = abox.fork()
                oplus(first, left, label)
                oplus(second, right, label)
                return self.fired(assertion, label, first, second)
        return None


@register('universal', priority=20)
class UniversalRule(ExpansionRule):

    def apply(self, abox):
        for assertion, label in _concept_assertions(abox, Forall):
            concept = assertion.concept
            for target in abox.successors(assertion.individual, concept.role):
                role_label = abox.label(RoleAssertion(concept.role, assertion.individual, target))
                derived = ConceptAssertion(concept.filler, target)
                combined = label & role_label
                if self.insertable(abox, derived, combined):
                    oplus(abox, derived, combined)
                    return self.fired(assertion, combined, abox)
        return None


@register('existential', priority=10)
class ExistentialRule(ExpansionRule):
    """
    Creates a fresh ``r``-successor carrying the filler, unless the individual is blocked or an
    existing individual already witnesses both assertions under the same label.
    """

    def apply(self, abox):
        for assertion, label in _concept_assertions(abox, Exists):
            concept, individual = assertion.concept, assertion.individual
            if self._witnessed(abox, concept, individual, label):
                continue
            if is_blocked(abox, individual, self.signature):
                continue
            target = abox.fresh_individual(individual)
            oplus(abox, RoleAssertion(concept.role, individual, target), label)
            oplus(abox, ConceptAssertion(concept.filler, target), label)
            return self.fired(assertion, label, abox)
        return None

    def _witnessed(self, abox, concept, individual, label):
        for candidate in abox.successors(individual, concept.role):
            role = RoleAssertion(concept.role, individual, candidate)
            if not self.insertable(abox, role, label) and \
                    not self.insertable(abox, ConceptAssertion(concept.filler, candidate), label):
                return True
        return False
