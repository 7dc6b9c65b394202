"""Consistency, subsumption, satisfiability and instance queries over a knowledge base"""

import logging
import time
from dataclasses import dataclass, field

from balcreasoner import oracle, tableau
from balcreasoner.bayes import context_probability, zero_context
from balcreasoner.config import ReasonerSettings
from balcreasoner.constants import MODE_ORACLE, MODE_TABLEAU, MODES, QUERY_INDIVIDUAL
from balcreasoner.contexts import ComplexContext, entails, negate
from balcreasoner.exceptions import InvalidQueryArgument, UndefinedConditioning
from balcreasoner.ontology import BOTTOM, ConceptAssertion, Not, VAxiom

DECISION = 'decision'
PROBABILITY = 'probability'

AT_LEAST = 'at-least'
EXACTLY = 'exactly'
ALMOST_CERTAIN = 'almost-certain'
THRESHOLD_KINDS = (AT_LEAST, EXACTLY, ALMOST_CERTAIN)


@dataclass
class QueryResult(object):
    """
    The answer to one query.

    ``kind`` is ``decision`` (``value`` is a bool) or ``probability`` (``value`` is a float in [0, 1]).
    ``witness`` is the context of positive-probability worlds backing an inconsistency, when there is one.
    """

    kind: str
    value: object
    witness: ComplexContext = None
    diagnostics: dict = field(default_factory=dict)


def _clamp(value):
    return min(1.0, max(0.0, value))


class Reasoner(object):
    """
    Answers queries over one knowledge base.

    In ``tableau`` mode inconsistency contexts come from the pinpointing tableau, in ``oracle`` mode
    from one classical consistency check per world. Inconsistency contexts are cached per ontology,
    so the knowledge base with the query assertions under the empty context is saturated only once
    for any number of contexts.
    """

    def __init__(self, kb, mode=MODE_TABLEAU, settings=None, verbose=False):
        if mode not in MODES:
            raise InvalidQueryArgument('Unknown mode "{}", expected one of {}'.format(mode, ', '.join(MODES)))
        self.kb = kb.validate()
        self.mode = mode
        self.settings = settings or ReasonerSettings()
        self.verbose = verbose
        self._contexts = {}
        self._zero = None
        self._consistent = None

    @property
    def bn(self):
        return self.kb.bn

    @property
    def signature(self):
        return self.kb.signature

    def _check_context(self, context):
        if context is None:
            return ComplexContext.top()
        self.signature.check_context(context)
        return context

    def _diagnostics(self, start_time, **extra):
        extra.update(mode=self.mode, seconds=time.time() - start_time)
        return extra

    def inconsistency_context(self, kb=None):
        """
        The context of the worlds whose restriction of ``kb`` (default: the reasoner's) is inconsistent.

        :rtype: ComplexContext
        """
        kb = kb or self.kb
        if kb.ontology not in self._contexts:
            if self.mode == MODE_ORACLE:
                phi = oracle.inconsistency_context(kb, self.settings, self.verbose)
            else:
                phi = tableau.inconsistency_context(kb, self.settings, self.verbose)
            self._contexts[kb.ontology] = phi
        return self._contexts[kb.ontology]

    def zero_context(self):
        if self._zero is None:
            self._zero = zero_context(self.bn)
        return self._zero

    def consistency_witness(self, kb=None):
        """The positive-probability worlds whose restriction is inconsistent, as a context."""
        return self.inconsistency_context(kb) & negate(self.zero_context(), self.signature)

    def _kb_is_consistent(self):
        if self._consistent is None:
            self._consistent = self.consistency_witness().is_bottom
            if not self._consistent:
                logging.info('The knowledge base is inconsistent; every probability is 1')
        return self._consistent

    def is_consistent(self):
        start_time = time.time()
        witness = self.consistency_witness()
        self._consistent = witness.is_bottom
        return QueryResult(DECISION, witness.is_bottom, None if witness.is_bottom else witness,
                           self._diagnostics(start_time))

    def _probability_with(self, extra, context, start_time):
        if not self._kb_is_consistent():
            return QueryResult(PROBABILITY, 1.0, self.consistency_witness(),
                               self._diagnostics(start_time, inconsistent_kb=True))
        phi = self.inconsistency_context(self.kb.extended(*extra))
        value = context_probability(self.bn, phi) + 1.0 - context_probability(self.bn, context)
        return QueryResult(PROBABILITY, _clamp(value), None, self._diagnostics(start_time))

    def _conditional(self, probability_at, context, given, start_time):
        given = self._check_context(given)
        evidence = context_probability(self.bn, given)
        if evidence < self.settings.tolerance:
            raise UndefinedConditioning('Cannot condition on {!r}: its probability is 0'.format(given))
        joint = probability_at(context & given).value
        value = (joint + evidence - 1.0) / evidence
        return QueryResult(PROBABILITY, _clamp(value), None, self._diagnostics(start_time, evidence=evidence))

    def _subsumption_axioms(self, sub, sup, context):
        return (VAxiom(ConceptAssertion(sub, QUERY_INDIVIDUAL), context),
                VAxiom(ConceptAssertion(Not(sup), QUERY_INDIVIDUAL), context))

    def subsumption_probability(self, sub, sup, context=None):
        """
        Probability of ``sub sub sup`` under ``context``: the probability of the worlds where adding
        ``sub(q)``, ``not sup(q)`` under ``context`` makes the ontology inconsistent, plus the probability
        of the worlds outside ``context``.

        :rtype: QueryResult
        """
        start_time = time.time()
        context = self._check_context(context)
        return self._probability_with(self._subsumption_axioms(sub, sup, context), context, start_time)

    def conditional_subsumption_probability(self, sub, sup, context, given):
        """
        :raises UndefinedConditioning: If ``given`` has probability 0
        """
        start_time = time.time()
        context = self._check_context(context)
        return self._conditional(lambda joint: self.subsumption_probability(sub, sup, joint), context, given,
                                 start_time)

    def decide_contextual_subsumption(self, sub, sup, context=None):
        result = self.subsumption_probability(sub, sup, context)
        return QueryResult(DECISION, result.value >= 1.0 - self.settings.tolerance, result.witness,
                           result.diagnostics)

    def decide_positive_subsumption(self, sub, sup, context=None, precompiled=False):
        """
        Tell whether the subsumption has a positive probability.

        That is the case iff the context has probability below 1 or the extended knowledge base is
        inconsistent. With ``precompiled`` the query assertions are added under the empty context and
        the resulting inconsistency context is reused for every ``context``.
        """
        start_time = time.time()
        context = self._check_context(context)
        if not self._kb_is_consistent():
            return QueryResult(DECISION, True, self.consistency_witness(),
                               self._diagnostics(start_time, inconsistent_kb=True))
        if context_probability(self.bn, context) < 1.0 - self.settings.tolerance:
            return QueryResult(DECISION, True, None, self._diagnostics(start_time))
        if precompiled:
            kb = self.kb.extended(*self._subsumption_axioms(sub, sup, ComplexContext.top()))
            witness = context & self.consistency_witness(kb)
        else:
            witness = self.consistency_witness(self.kb.extended(*self._subsumption_axioms(sub, sup, context)))
        return QueryResult(DECISION, not witness.is_bottom, None if witness.is_bottom else witness,
                           self._diagnostics(start_time))

    def conditional_positive_subsumption(self, sub, sup, context, given):
        result = self.conditional_subsumption_probability(sub, sup, context, given)
        return QueryResult(DECISION, result.value > self.settings.tolerance, None, result.diagnostics)

    def decide_p_subsumption(self, sub, sup, context=None, threshold=None, kind=AT_LEAST):
        """
        Compare the subsumption probability against ``threshold``.

        :param str kind: ``at-least`` (probability >= threshold), ``exactly`` (equal within tolerance) or
            ``almost-certain`` (equal to 1, the threshold is ignored)
        :raises InvalidQueryArgument: On an unknown kind or a threshold outside [0, 1]
        """
        if kind not in THRESHOLD_KINDS:
            raise InvalidQueryArgument('Unknown kind "{}", expected one of {}'.format(kind, ', '.join(THRESHOLD_KINDS)))
        if kind == ALMOST_CERTAIN:
            threshold = 1.0
        if threshold is None or not 0.0 <= threshold <= 1.0:
            raise InvalidQueryArgument('Threshold must be within [0, 1], got {!r}'.format(threshold))
        result = self.subsumption_probability(sub, sup, context)
        tolerance = self.settings.tolerance
        if kind == AT_LEAST:
            value = result.value >= threshold - tolerance
        else:
            value = abs(result.value - threshold) <= tolerance
        return QueryResult(DECISION, value, result.witness, dict(result.diagnostics, probability=result.value))

    def concept_satisfiability(self, concept, context=None):
        """
        Without a context: ``concept`` is satisfiable iff adding ``concept(q)`` keeps the knowledge base
        consistent. With a context: ``concept`` is satisfiable in it iff it is not subsumed by bottom there.
        """
        start_time = time.time()
        if context is None:
            kb = self.kb.extended(VAxiom(ConceptAssertion(concept, QUERY_INDIVIDUAL), ComplexContext.top()))
            witness = self.consistency_witness(kb)
            return QueryResult(DECISION, witness.is_bottom, None if witness.is_bottom else witness,
                               self._diagnostics(start_time))
        result = self.decide_contextual_subsumption(concept, BOTTOM, context)
        return QueryResult(DECISION, not result.value, result.witness, result.diagnostics)

    def unsatisfiability_probability(self, concept, context=None, given=None):
        """Probability (conditional on ``given`` when set) that ``concept`` is subsumed by bottom."""
        if given is None:
            return self.subsumption_probability(concept, BOTTOM, context)
        return self.conditional_subsumption_probability(concept, BOTTOM, self._check_context(context), given)

    def _check_individual(self, individual):
        if individual not in self.kb.vocabulary().individuals:
            raise InvalidQueryArgument('Unknown individual "{}"'.format(individual))

    def _instance_axioms(self, concept, individual, context):
        return (VAxiom(ConceptAssertion(Not(concept), individual), context),)

    def decide_instance(self, concept, individual, context=None):
        """
        ``concept(individual)`` follows under ``context`` iff asserting its negation there makes every
        positive-probability world of ``context`` inconsistent.

        The reading is universal: ``context`` without the zero context has to entail the inconsistency context of the
        extended knowledge base, so a single world of ``context`` keeping a model with ``not concept(individual)``
        makes the answer false, even when other worlds of ``context`` do entail the instance.
        """
        start_time = time.time()
        self._check_individual(individual)
        context = self._check_context(context)
        if not self._kb_is_consistent():
            return QueryResult(DECISION, True, self.consistency_witness(),
                               self._diagnostics(start_time, inconsistent_kb=True))
        phi = self.inconsistency_context(self.kb.extended(*self._instance_axioms(concept, individual, context)))
        possible = context & negate(self.zero_context(), self.signature)
        value = entails(possible, phi, self.signature)
        return QueryResult(DECISION, value, phi & possible if value else None, self._diagnostics(start_time))

    def instance_probability(self, concept, individual, context=None):
        start_time = time.time()
        self._check_individual(individual)
        context = self._check_context(context)
        return self._probability_with(self._instance_axioms(concept, individual, context), context, start_time)

    def conditional_instance_probability(self, concept, individual, context, given):
        """
        :raises UndefinedConditioning: If ``given`` has probability 0
        """
        start_time = time.time()
        self._check_individual(individual)
        context = self._check_context(context)
        return self._conditional(lambda joint: self.instance_probability(concept, individual, joint), context,
                                 given, start_time)
