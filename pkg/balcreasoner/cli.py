"""Commandline implementation"""

from __future__ import print_function

import argparse
import logging
import sys
import time

from balcreasoner.bayes import zero_context
from balcreasoner.config import load_settings
from balcreasoner.constants import MODE_TABLEAU, MODES, TRACE_LOGGER
from balcreasoner.contexts import simplify
from balcreasoner.exceptions import BalcException, KbParseError, ResourceLimitExceeded
from balcreasoner.parsing import load_kb, parse_bn, parse_concept, parse_context, read_text, serialize_context
from balcreasoner.reasoner import THRESHOLD_KINDS, Reasoner
from balcreasoner.version import __version__

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

CONTEXTUAL = 'contextual'
POSITIVE = 'positive'
SUBSUMPTION_KINDS = (CONTEXTUAL, POSITIVE) + THRESHOLD_KINDS


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('-v', '--verbose', action='count', help='Increase verbosity')
    parser.add_argument('--config', help='A YAML file with reasoner settings')
    parser.add_argument('--mode', choices=MODES, default=MODE_TABLEAU,
                        help='Compute inconsistency contexts with the pinpointing tableau or per world')
    parser.add_argument('--trace', action='store_true', default=False,
                        help='Write every tableau rule application to stderr')
    return parser


def _kb_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('ontology', help='The ontology file (.balc)')
    parser.add_argument('bn', help='The Bayesian network file (.bn)')
    return parser


def _query_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--context', help='The context of the query, e.g. "{X=t,Z=t} | {Y}" (default {})')
    return parser


def get_arg_parser():
    parser = argparse.ArgumentParser(prog='balc', description='Reason over probabilistic ALC knowledge bases')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    common, kb, query = _common_parser(), _kb_parser(), _query_parser()

    subparsers.add_parser('consistency', parents=[common, kb], help='Decide consistency of the knowledge base')

    command = subparsers.add_parser('prob-subsumption', parents=[common, kb, query],
                                    help='Probability of a subsumption')
    command.add_argument('--sub', required=True, help='The subsumed concept')
    command.add_argument('--sup', required=True, help='The subsuming concept')
    command.add_argument('--given', help='Condition on this context')

    command = subparsers.add_parser('decide-subsumption', parents=[common, kb, query], help='Decide a subsumption')
    command.add_argument('--sub', required=True, help='The subsumed concept')
    command.add_argument('--sup', required=True, help='The subsuming concept')
    command.add_argument('--kind', choices=SUBSUMPTION_KINDS, default=CONTEXTUAL, help='The kind of subsumption')
    command.add_argument('--threshold', type=float, help='Probability threshold for at-least and exactly')
    command.add_argument('--given', help='Condition on this context (positive subsumption only)')

    command = subparsers.add_parser('prob-instance', parents=[common, kb, query], help='Probability of an instance')
    command.add_argument('--concept', required=True, help='The concept')
    command.add_argument('--individual', required=True, help='The individual')
    command.add_argument('--given', help='Condition on this context')

    command = subparsers.add_parser('decide-instance', parents=[common, kb, query], help='Decide an instance')
    command.add_argument('--concept', required=True, help='The concept')
    command.add_argument('--individual', required=True, help='The individual')

    command = subparsers.add_parser('satisfiability', parents=[common, kb, query],
                                    help='Decide concept satisfiability or compute its unsatisfiability probability')
    command.add_argument('--concept', required=True, help='The concept')
    command.add_argument('--probability', action='store_true', default=False,
                         help='Print the probability that the concept is unsatisfiable')
    command.add_argument('--given', help='Condition on this context (with --probability)')

    subparsers.add_parser('inconsistency-context', parents=[common, kb],
                          help='Print the context of the worlds whose restriction is inconsistent')

    command = subparsers.add_parser('zero-context', parents=[common], help='Print the context of impossible worlds')
    command.add_argument('bn', help='The Bayesian network file (.bn)')

    return parser


def configure_logging(args):
    loglevel = logging.WARNING
    if args.verbose:
        loglevel = logging.DEBUG
    logging.basicConfig(format='%(levelname)s: %(message)s', level=loglevel)
    trace = logging.getLogger(TRACE_LOGGER)
    trace.propagate = False
    for handler in list(trace.handlers):
        trace.removeHandler(handler)
    if args.trace:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter('%(message)s'))
        trace.addHandler(handler)
        trace.setLevel(logging.DEBUG)
    else:
        trace.addHandler(logging.NullHandler())


def format_probability(value, precision):
    return '{:.{}f}'.format(value, precision)


def _decision(value):
    print('result={}'.format('true' if value else 'false'))
    return EXIT_OK if value else EXIT_NO


def _probability(value, settings):
    print('result={}'.format(format_probability(value, settings.precision)))
    return EXIT_OK


def _context(phi, signature):
    print('result={}'.format(serialize_context(simplify(phi, signature))))
    return EXIT_OK


def answer(args, settings):
    """
    Run the query named by ``args.command`` and print its one-line result.

    :return: The exit code
    :rtype: int
    """
    verbose = bool(args.verbose)
    if args.command == 'zero-context':
        bn = parse_bn(read_text(args.bn), args.bn)
        return _context(zero_context(bn), bn.signature)

    kb = load_kb(args.ontology, args.bn)
    reasoner = Reasoner(kb, mode=args.mode, settings=settings, verbose=verbose)
    signature = kb.signature
    context = parse_context(args.context, signature) if getattr(args, 'context', None) else None
    given = parse_context(args.given, signature) if getattr(args, 'given', None) else None

    if args.command == 'consistency':
        result = reasoner.is_consistent()
        if result.witness is not None:
            logging.info('Inconsistent in %s', serialize_context(simplify(result.witness, signature)))
        print('result={}'.format('consistent' if result.value else 'inconsistent'))
        return EXIT_OK if result.value else EXIT_NO

    if args.command == 'inconsistency-context':
        return _context(reasoner.inconsistency_context(), signature)

    if args.command in ('prob-subsumption', 'decide-subsumption'):
        sub, sup = parse_concept(args.sub), parse_concept(args.sup)
        if args.command == 'prob-subsumption':
            if given is not None:
                return _probability(reasoner.conditional_subsumption_probability(sub, sup, context, given).value,
                                    settings)
            return _probability(reasoner.subsumption_probability(sub, sup, context).value, settings)
        if args.kind == CONTEXTUAL:
            return _decision(reasoner.decide_contextual_subsumption(sub, sup, context).value)
        if args.kind == POSITIVE:
            if given is not None:
                return _decision(reasoner.conditional_positive_subsumption(sub, sup, context, given).value)
            return _decision(reasoner.decide_positive_subsumption(sub, sup, context).value)
        return _decision(reasoner.decide_p_subsumption(sub, sup, context, args.threshold, args.kind).value)

    concept = parse_concept(args.concept)
    if args.command == 'prob-instance':
        if given is not None:
            return _probability(reasoner.conditional_instance_probability(concept, args.individual, context,
                                                                          given).value, settings)
        return _probability(reasoner.instance_probability(concept, args.individual, context).value, settings)
    if args.command == 'decide-instance':
        return _decision(reasoner.decide_instance(concept, args.individual, context).value)
    if args.probability:
        return _probability(reasoner.unsatisfiability_probability(concept, context, given).value, settings)
    return _decision(reasoner.concept_satisfiability(concept, context).value)


def main(args):
    """Main method"""

    configure_logging(args)
    start_time = time.time()
    try:
        settings = load_settings(args.config)
        exit_code = answer(args, settings)
    except KbParseError as exc:
        for diagnostic in exc.diagnostics:
            print(diagnostic, file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_RESOURCE
    except (BalcException, OSError) as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_USAGE
    logging.info('Query took {:.2f}s'.format(time.time() - start_time))
    return exit_code


def run(argv):
    """
    Parse ``argv`` and answer the query.

    :param list argv: The arguments without the program name
    :return: The exit code
    :rtype: int
    """
    try:
        args = get_arg_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return main(args)
