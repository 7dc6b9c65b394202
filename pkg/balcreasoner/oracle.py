"""Inconsistency context by brute force: one classical consistency check per world"""

import logging
import time
from collections import OrderedDict

import parmap

from balcreasoner.classical import is_classically_consistent
from balcreasoner.config import ReasonerSettings
from balcreasoner.contexts import ComplexContext, world_context
from balcreasoner.ontology import restriction


def is_inconsistent(axioms, max_steps):
    return not is_classically_consistent(axioms, max_steps=max_steps)


def inconsistent_worlds(kb, settings=None, verbose=False):
    """
    All worlds whose restriction of ``kb`` is classically inconsistent.

    Worlds sharing the same restriction are checked once.

    :param Kb kb: The knowledge base
    :param ReasonerSettings settings: ``parallel`` spreads the checks over processes
    :param bool verbose: Display a progress bar
    :rtype: list
    """
    settings = settings or ReasonerSettings()
    start_time = time.time()
    groups = OrderedDict()
    for world in kb.signature.worlds():
        groups.setdefault(restriction(kb.ontology, world), []).append(world)
    restrictions = list(groups)
    verdicts = parmap.map(is_inconsistent, restrictions, settings.max_classical_steps,
                          pm_pbar=verbose, pm_parallel=settings.parallel)
    worlds = [world for axioms, verdict in zip(restrictions, verdicts) if verdict for world in groups[axioms]]
    logging.info('Checking {} distinct restrictions took {:.2f}s'.format(len(restrictions), time.time() - start_time))
    return worlds


def inconsistency_context(kb, settings=None, verbose=False):
    """The disjunction of the world contexts of :func:`inconsistent_worlds`."""
    return ComplexContext(world_context(world) for world in inconsistent_worlds(kb, settings, verbose))
