"""Pinpointing tableau: saturation of labelled ABoxes and the inconsistency context"""

import logging
import time
from collections import OrderedDict

from tqdm import tqdm

from balcreasoner.abox import LabelledAbox, clash_context, content_key, oplus
from balcreasoner.config import ReasonerSettings
from balcreasoner.constants import IMPLICIT_INDIVIDUAL, TRACE_LOGGER
from balcreasoner.contexts import ComplexContext, entails
from balcreasoner.exceptions import ResourceLimitExceeded
from balcreasoner.ontology import TOP, ConceptAssertion, RoleAssertion, absorb, internalize, is_top
from balcreasoner.parsing import serialize_assertion, serialize_context
from balcreasoner.rules import rule_registry

trace_logger = logging.getLogger(TRACE_LOGGER)


class TableauState(object):
    """
    The set of labelled ABoxes of one saturation run, together with the ontology it runs on.

    ``aboxes`` holds the finished ABoxes in the order they were completed; ``pruned`` counts those
    that were abandoned because their clash context could no longer change the result.

    GCIs with a concept name among the conjuncts on their left are kept in ``absorbed``, keyed by that
    name, and only unfold on individuals asserted to be of it. The others are internalized in ``gcis``.
    """

    def __init__(self, kb, registry=None):
        self.kb = kb
        self.signature = kb.signature
        gcis, absorbed = OrderedDict(), OrderedDict()
        for vaxiom in kb.tbox:
            if vaxiom.label.is_bottom:
                continue
            unfolded = absorb(vaxiom.axiom)
            if unfolded is not None:
                trigger, concept = unfolded
                _merge_label(absorbed.setdefault(trigger, OrderedDict()), concept, vaxiom.label)
                continue
            concept = internalize(vaxiom.axiom)
            if not is_top(concept):
                _merge_label(gcis, concept, vaxiom.label)
        self.gcis = list(gcis.items())
        self.absorbed = OrderedDict((trigger, list(concepts.items())) for trigger, concepts in absorbed.items())
        registry = registry or rule_registry
        self.rules = [rule_class(self.gcis, self.signature, self.absorbed) for rule_class in registry.rules.values()]
        self.aboxes = []
        self.pruned = 0
        self.duplicates = 0
        self.applications = 0

    def inconsistency_context(self):
        result = ComplexContext.top()
        for abox in self.aboxes:
            result = result & clash_context(abox)
        return result


def _merge_label(labels, concept, label):
    labels[concept] = labels[concept] | label if concept in labels else label


def initial_abox(kb):
    """
    The ABox of all labelled assertions of ``kb``, concepts in NNF.

    Without assertions the ABox is ``top(a0)`` for a reserved individual ``a0``.
    """
    abox = LabelledAbox()
    for vaxiom in kb.abox:
        if vaxiom.label.is_bottom:
            continue
        axiom = vaxiom.axiom
        if isinstance(axiom, ConceptAssertion):
            oplus(abox, ConceptAssertion(axiom.concept.nnf(), axiom.individual), vaxiom.label)
        elif isinstance(axiom, RoleAssertion):
            oplus(abox, axiom, vaxiom.label)
    if not abox.labels:
        oplus(abox, ConceptAssertion(TOP, IMPLICIT_INDIVIDUAL), ComplexContext.top())
    return abox


def apply_rule(state, abox):
    """
    Fire the first applicable rule, in priority order, on ``abox``.

    :return: The application, whose ``aboxes`` replace ``abox``, or None if no rule is applicable
    :rtype: balcreasoner.rules.RuleApplication
    """
    origin = abox.identifier
    for rule in state.rules:
        application = rule.apply(abox)
        if application is not None:
            if trace_logger.isEnabledFor(logging.DEBUG):
                trace_logger.debug('rule=%s abox=%s target=%s label=%s', application.rule, origin,
                                   serialize_assertion(application.target), serialize_context(application.label))
            return application
    return None


def _is_irrelevant(state, abox, closed):
    abox.literals_changed = False
    return entails(closed, clash_context(abox), state.signature)


def saturate(kb, settings=None, verbose=False):
    """
    Expand the ABoxes of ``kb`` until no rule applies.

    Disjunctions fork the current ABox; forks are expanded depth first, first disjunct first. With
    ``settings.prune_closed`` an ABox stops being expanded as soon as the conjunction of the clash
    contexts of the finished ABoxes entails its own clash context.

    :param Kb kb: The knowledge base
    :param ReasonerSettings settings: Budgets and pruning switch
    :param bool verbose: Display a progress bar
    :raises ResourceLimitExceeded: If an ABox lineage exceeds its rule budget or too many ABoxes are created
    :rtype: TableauState
    """
    settings = settings or ReasonerSettings()
    start_time = time.time()
    state = TableauState(kb)
    closed = ComplexContext.top()
    queued = set()
    stack = [initial_abox(kb)]
    with tqdm(desc='Saturating', unit='abox', disable=not verbose) as progress:
        while stack:
            abox = stack.pop()
            abox.literals_changed = True
            while True:
                if settings.prune_closed and abox.literals_changed and _is_irrelevant(state, abox, closed):
                    state.pruned += 1
                    abox = None
                    break
                application = apply_rule(state, abox)
                if application is None:
                    break
                state.applications += 1
                abox.applications += 1
                if abox.applications > settings.max_rule_applications:
                    raise ResourceLimitExceeded('ABox {} exceeded {} rule applications'.format(
                        abox.identifier, settings.max_rule_applications))
                abox = application.aboxes[0]
                for fork in reversed(application.aboxes[1:]):
                    key = content_key(fork)
                    if key in queued:
                        state.duplicates += 1
                        continue
                    queued.add(key)
                    stack.append(fork)
                if len(state.aboxes) + len(stack) + 1 > settings.max_aboxes:
                    raise ResourceLimitExceeded('Saturation exceeded {} ABoxes'.format(settings.max_aboxes))
            if abox is None:
                continue
            state.aboxes.append(abox)
            closed = closed & clash_context(abox)
            progress.update()
    logging.info('Saturation of {} ABoxes ({} pruned, {} duplicates, {} rule applications) took {:.2f}s'.format(
        len(state.aboxes), state.pruned, state.duplicates, state.applications, time.time() - start_time))
    return state


def inconsistency_context(kb, settings=None, verbose=False):
    """
    The context of exactly those worlds whose restriction of ``kb`` is inconsistent.

    :rtype: ComplexContext
    """
    return saturate(kb, settings=settings, verbose=verbose).inconsistency_context()
