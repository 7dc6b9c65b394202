"""Parsing and serialization of Bayesian networks, ontologies, concepts and contexts"""

import logging
from collections import OrderedDict

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from balcreasoner.bayes import BayesNet, find_cycle, parent_assignments, table_violations
from balcreasoner.constants import BOOLEAN_DOMAIN, RESERVED_PREFIX
from balcreasoner.contexts import ComplexContext, Literal, PrimitiveContext, Signature
from balcreasoner.exceptions import KbParseError
from balcreasoner.ontology import (BOTTOM, TOP, And, ConceptAssertion, ConceptName, Exists, Forall, GCI, Kb, Not, Or,
                                   RoleAssertion, VAxiom, is_bottom, is_top)

GRAMMAR = r"""
    start_concept: concept
    start_context: context
    onto_line: gci | concept_assertion | role_assertion
    bn_line: var_decl | parents_decl | cpt_row

    gci: "gci" concept "sub" concept label?
    concept_assertion: "assert" concept "(" IDENT ")" label?
    role_assertion: "role" IDENT "(" IDENT "," IDENT ")" label?
    label: "@" context

    context: primitive ("|" primitive)*
           | "bottom" -> bottom_context
    primitive: "{" (literal ("," literal)*)? "}"
    ?literal: IDENT "=" IDENT -> pair
            | IDENT -> positive
            | "!" IDENT -> negative

    ?concept: conjunction
            | concept "or" conjunction -> disjunction
    ?conjunction: unary
                | conjunction "and" unary -> conjunction_of
    ?unary: atom
          | "not" unary -> negation
          | "exists" IDENT "." unary -> exists
          | "forall" IDENT "." unary -> forall
    ?atom: IDENT -> name
         | "top" -> top
         | "bottom" -> bottom
         | "(" concept ")"

    var_decl: "var" IDENT ":" IDENT+
    parents_decl: "parents" IDENT ":" IDENT*
    cpt_row: "cpt" IDENT "|" assignment* ":" entry+
    assignment: IDENT "=" IDENT
    entry: IDENT "=" NUMBER

    IDENT: /[A-Za-z_][A-Za-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.NUMBER
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

parser = Lark(GRAMMAR, start=['start_concept', 'start_context', 'onto_line', 'bn_line'], parser='lalr')

KEYWORDS = frozenset(['gci', 'sub', 'assert', 'role', 'and', 'or', 'not', 'exists', 'forall', 'top', 'bottom',
                      'var', 'parents', 'cpt'])

ERROR = 'error'
WARNING = 'warning'


class ParseDiagnostic(object):
    """A problem found in an input file. Lines and columns are 1-based."""

    def __init__(self, line, column, message, severity=ERROR, path=None):
        self.line = line
        self.column = max(1, column or 1)
        self.message = message
        self.severity = severity
        self.path = path

    def __str__(self):
        location = '{}:{}'.format(self.line, self.column)
        if self.path:
            location = '{}:{}'.format(self.path, location)
        return '{}: {}: {}'.format(location, self.severity, self.message)

    def __repr__(self):
        return 'ParseDiagnostic({!r})'.format(str(self))


class LineProblem(Exception):
    """Raised by the transformer for a semantic problem at a token."""

    def __init__(self, message, token=None):
        super(LineProblem, self).__init__(message)
        self.message = message
        self.column = getattr(token, 'column', 1)


class KbTransformer(Transformer):
    """Turn parse trees into concepts, contexts, axioms and raw BN declarations."""

    def __init__(self, signature=None):
        super(KbTransformer, self).__init__()
        self.signature = signature

    @staticmethod
    def identifier(token):
        if token.startswith(RESERVED_PREFIX):
            raise LineProblem('Reserved identifier "{}"'.format(token), token)
        if token in KEYWORDS:
            raise LineProblem('Keyword "{}" used as a name'.format(token), token)
        return str(token)

    def literal(self, variable, value, token):
        variable = self.identifier(variable)
        if self.signature is not None:
            if variable not in self.signature:
                raise LineProblem('Undeclared variable "{}"'.format(variable), token)
            if value not in self.signature.domain(variable):
                raise LineProblem('Value "{}" is not in the domain of "{}"'.format(value, variable), token)
        return Literal(variable, value)

    def boolean_literal(self, token, value):
        variable = self.identifier(token)
        if self.signature is not None and variable in self.signature and not self.signature.is_boolean(variable):
            raise LineProblem('Boolean shorthand used on non-Boolean variable "{}"'.format(variable), token)
        return self.literal(variable, value, token)

    def start_concept(self, children):
        return children[0]

    start_context = onto_line = bn_line = start_concept

    def name(self, children):
        return ConceptName(self.identifier(children[0]))

    def top(self, children):
        return TOP

    def bottom(self, children):
        return BOTTOM

    def negation(self, children):
        return Not(children[0])

    def conjunction_of(self, children):
        return And(children[0], children[1])

    def disjunction(self, children):
        return Or(children[0], children[1])

    def exists(self, children):
        return Exists(self.identifier(children[0]), children[1])

    def forall(self, children):
        return Forall(self.identifier(children[0]), children[1])

    def pair(self, children):
        variable, value = children
        return self.literal(variable, str(value), variable)

    def positive(self, children):
        return self.boolean_literal(children[0], BOOLEAN_DOMAIN[0])

    def negative(self, children):
        return self.boolean_literal(children[0], BOOLEAN_DOMAIN[1])

    def primitive(self, children):
        return PrimitiveContext(children)

    def context(self, children):
        return ComplexContext(children)

    def bottom_context(self, children):
        return ComplexContext.bottom()

    def label(self, children):
        return children[0]

    def gci(self, children):
        label = children[2] if len(children) > 2 else ComplexContext.top()
        return VAxiom(GCI(children[0], children[1]), label)

    def concept_assertion(self, children):
        label = children[2] if len(children) > 2 else ComplexContext.top()
        return VAxiom(ConceptAssertion(children[0], self.identifier(children[1])), label)

    def role_assertion(self, children):
        role, source, target = (self.identifier(token) for token in children[:3])
        label = children[3] if len(children) > 3 else ComplexContext.top()
        return VAxiom(RoleAssertion(role, source, target), label)

    def var_decl(self, children):
        self.identifier(children[0])
        return ('var', children[0], [self.identifier(token) for token in children[1:]])

    def parents_decl(self, children):
        self.identifier(children[0])
        return ('parents', children[0], [self.identifier(token) for token in children[1:]])

    def assignment(self, children):
        return ('assignment', children[0], str(children[1]))

    def entry(self, children):
        return ('entry', children[0], float(children[1]))

    def cpt_row(self, children):
        self.identifier(children[0])
        assignments = [child for child in children[1:] if child[0] == 'assignment']
        entries = [child for child in children[1:] if child[0] == 'entry']
        return ('cpt', children[0], assignments, entries)


def _describe(exc):
    if isinstance(exc, UnexpectedCharacters):
        return 'Unexpected character {!r}'.format(exc.char)
    if isinstance(exc, UnexpectedEOF):
        return 'Unexpected end of line'
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == '$END':
            return 'Unexpected end of line'
        return 'Unexpected token {!r}'.format(str(exc.token))
    return str(exc)


def parse_line(text, start, transformer, line=1, path=None):
    """
    Parse one line with the given start symbol.

    :return: A ``(result, diagnostic)`` pair, exactly one of them being None
    :rtype: tuple
    """
    try:
        return transformer.transform(parser.parse(text, start=start)), None
    except UnexpectedInput as exc:
        return None, ParseDiagnostic(line, getattr(exc, 'column', 1), _describe(exc), path=path)
    except VisitError as exc:
        problem = exc.orig_exc
        if isinstance(problem, LineProblem):
            return None, ParseDiagnostic(line, problem.column, problem.message, path=path)
        raise problem


def content_lines(text):
    """Yield ``(number, line)`` for every line that is neither blank nor a comment."""
    for number, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith('#'):
            yield number, line


def _parse_single(text, start, signature, path=None):
    result, diagnostic = parse_line(text.strip(), start, KbTransformer(signature), path=path)
    if diagnostic is not None:
        raise KbParseError([diagnostic])
    return result


def parse_concept(text, signature=None):
    """
    :raises KbParseError: On malformed input
    :rtype: balcreasoner.ontology.Concept
    """
    return _parse_single(text, 'start_concept', signature)


def parse_context(text, signature=None):
    """
    Parse ``{X=t, Z=t} | {Y=t, Z=t}``, ``{}`` or ``bottom``.

    :param str text: The context
    :param Signature signature: If given, literals are checked against it and the Boolean shorthand
        ``X`` / ``!X`` is only accepted for variables whose domain is ``t f``
    :raises KbParseError: On malformed input
    :rtype: ComplexContext
    """
    return _parse_single(text, 'start_context', signature)


def parse_ontology(text, signature, path=None):
    """
    Parse an ontology file, one axiom per line.

    Every line is parsed even after errors, so all problems are reported at once.

    :param str text: The file content
    :param Signature signature: Labels are checked against it
    :param str path: Used in diagnostics
    :raises KbParseError: If any line is malformed
    :return: The axioms in file order
    :rtype: tuple
    """
    transformer = KbTransformer(signature)
    axioms, diagnostics = [], []
    for number, line in content_lines(text):
        vaxiom, diagnostic = parse_line(line, 'onto_line', transformer, number, path)
        if diagnostic is not None:
            diagnostics.append(diagnostic)
        else:
            axioms.append(vaxiom)
    if diagnostics:
        raise KbParseError(diagnostics)
    return tuple(axioms)


def _parse_bn(text, path=None):
    transformer = KbTransformer()
    diagnostics = []
    domains, declared_at = OrderedDict(), {}
    parents, parents_at = OrderedDict(), {}
    rows = []

    for number, line in content_lines(text):
        result, diagnostic = parse_line(line, 'bn_line', transformer, number, path)
        if diagnostic is not None:
            diagnostics.append(diagnostic)
            continue
        kind, token = result[0], result[1]
        variable = str(token)
        if kind == 'var':
            values = result[2]
            if variable in domains:
                diagnostics.append(ParseDiagnostic(number, token.column, 'Variable "{}" is declared twice'
                                                   .format(variable), path=path))
            elif len(set(values)) != len(values):
                diagnostics.append(ParseDiagnostic(number, token.column, 'Variable "{}" repeats a value'
                                                   .format(variable), path=path))
            else:
                domains[variable] = values
                declared_at[variable] = number
        elif kind == 'parents':
            if variable in parents:
                diagnostics.append(ParseDiagnostic(number, token.column, 'Parents of "{}" are declared twice'
                                                   .format(variable), path=path))
            else:
                parents[variable] = result[2]
                parents_at[variable] = number
        else:
            rows.append((number, token, result[2], result[3]))

    cpts, rows_at = {}, {}
    for number, token, assignments, entries in rows:
        variable = str(token)
        if variable not in domains:
            diagnostics.append(ParseDiagnostic(number, token.column, 'Undeclared variable "{}"'.format(variable),
                                               path=path))
            continue
        expected = parents.get(variable, [])
        assigned = OrderedDict((str(parent), value) for _, parent, value in assignments)
        if len(assigned) != len(assignments) or set(assigned) != set(expected):
            diagnostics.append(ParseDiagnostic(number, token.column, 'cpt row for "{}" must assign exactly its '
                                               'parents ({})'.format(variable, ' '.join(expected) or 'none'),
                                               path=path))
            continue
        row = tuple(assigned[parent] for parent in expected)
        table = cpts.setdefault(variable, {})
        if row in table:
            diagnostics.append(ParseDiagnostic(number, token.column, 'Duplicate cpt row for "{}"'.format(variable),
                                               path=path))
            continue
        distribution = OrderedDict()
        for _, value, probability in entries:
            if str(value) in distribution:
                diagnostics.append(ParseDiagnostic(number, value.column, 'Value "{}" repeated in cpt row'
                                                   .format(value), path=path))
            distribution[str(value)] = probability
        table[row] = distribution
        rows_at[(variable, row)] = number

    for variable, number in parents_at.items():
        if variable not in domains:
            diagnostics.append(ParseDiagnostic(number, 1, 'Parents given for undeclared variable "{}"'
                                               .format(variable), path=path))
        for parent in parents[variable]:
            if parent not in domains:
                diagnostics.append(ParseDiagnostic(number, 1, 'Undeclared parent "{}" of "{}"'.format(parent, variable),
                                                   path=path))
    if diagnostics:
        raise KbParseError(diagnostics)

    bn = BayesNet(Signature(domains.items()), parents, cpts)
    cycle = find_cycle(bn)
    if cycle:
        raise KbParseError([ParseDiagnostic(parents_at.get(cycle[0], 1), 1, 'cycle {}'.format(' -> '.join(cycle)),
                                            path=path)])
    for variable in bn.signature.variables:
        for row, message in table_violations(bn, variable):
            number = rows_at.get((variable, row), declared_at[variable])
            diagnostics.append(ParseDiagnostic(number, 1, message, path=path))
    if diagnostics:
        raise KbParseError(diagnostics)
    return bn, declared_at


def parse_bn(text, path=None):
    """
    Parse a Bayesian network file made of ``var``, ``parents`` and ``cpt`` lines.

    :param str text: The file content
    :param str path: Used in diagnostics
    :raises KbParseError: On syntax errors and on every violation reported by validation
    :rtype: BayesNet
    """
    bn, _ = _parse_bn(text, path)
    return bn


def read_text(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def load_kb(ontology_path, bn_path):
    """
    Load a knowledge base from a ``.balc`` ontology file and a ``.bn`` network file.

    Variables declared in the network but used in no label are reported as warnings.

    :raises KbParseError: If either file is malformed
    :rtype: Kb
    """
    bn, declared_at = _parse_bn(read_text(bn_path), bn_path)
    ontology = parse_ontology(read_text(ontology_path), bn.signature, ontology_path)
    used = set()
    for vaxiom in ontology:
        used |= vaxiom.label.variables
    for variable in bn.signature.variables:
        if variable not in used:
            logging.warning(ParseDiagnostic(declared_at[variable], 1, 'Variable "{}" is used in no label'
                                            .format(variable), WARNING, bn_path))
    logging.info('Loaded %d axioms over %d variables', len(ontology), len(bn.signature))
    return Kb(ontology, bn)


def serialize_context(phi):
    """
    Deterministic text of a context: members and literals sorted, ``bottom`` for the empty disjunction.

    :rtype: str
    """
    if phi.is_bottom:
        return 'bottom'
    return ' | '.join('{' + ','.join('{}={}'.format(*literal) for literal in kappa) + '}' for kappa in phi)


_OR, _AND, _UNARY = 1, 2, 3


def _is_atomic(concept):
    return isinstance(concept, ConceptName) or is_top(concept) or is_bottom(concept)


def _wrapped(concept):
    text = serialize_concept(concept)
    return text if _is_atomic(concept) else '({})'.format(text)


def serialize_concept(concept, precedence=0):
    """
    Render a concept in the keyword syntax, with parentheses only where precedence requires them.

    Quantifier fillers and negated concepts are parenthesized unless they are names.
    """
    if is_top(concept):
        return 'top'
    if is_bottom(concept):
        return 'bottom'
    if isinstance(concept, ConceptName):
        return concept.name
    if isinstance(concept, Not):
        return 'not {}'.format(_wrapped(concept.operand))
    if isinstance(concept, Exists):
        return 'exists {}.{}'.format(concept.role, _wrapped(concept.filler))
    if isinstance(concept, Forall):
        return 'forall {}.{}'.format(concept.role, _wrapped(concept.filler))
    if isinstance(concept, And):
        text = '{} and {}'.format(serialize_concept(concept.left, _AND), serialize_concept(concept.right, _UNARY))
        own = _AND
    else:
        text = '{} or {}'.format(serialize_concept(concept.left, _OR), serialize_concept(concept.right, _AND))
        own = _OR
    return '({})'.format(text) if precedence > own else text


def serialize_assertion(assertion):
    if isinstance(assertion, ConceptAssertion):
        return '{}({})'.format(_wrapped(assertion.concept), assertion.individual)
    return '{}({},{})'.format(assertion.role, assertion.source, assertion.target)


def serialize_axiom(vaxiom):
    """Render a labelled axiom as one ontology line; the top label is left out."""
    axiom = vaxiom.axiom
    if isinstance(axiom, GCI):
        text = 'gci {} sub {}'.format(serialize_concept(axiom.sub), serialize_concept(axiom.sup))
    elif isinstance(axiom, ConceptAssertion):
        text = 'assert {}'.format(serialize_assertion(axiom))
    else:
        text = 'role {}'.format(serialize_assertion(axiom))
    if vaxiom.label.is_top:
        return text
    return '{} @ {}'.format(text, serialize_context(vaxiom.label))


def serialize_ontology(ontology):
    return ''.join('{}\n'.format(serialize_axiom(vaxiom)) for vaxiom in ontology)


def serialize_bn(bn):
    lines = []
    for variable in bn.signature.variables:
        lines.append('var {} : {}'.format(variable, ' '.join(bn.signature.domain(variable))))
    for variable in bn.signature.variables:
        if bn.parents[variable]:
            lines.append('parents {} : {}'.format(variable, ' '.join(bn.parents[variable])))
    for variable in bn.signature.variables:
        for row in parent_assignments(bn, variable):
            assignment = ' '.join('{}={}'.format(parent, value) for parent, value in zip(bn.parents[variable], row))
            distribution = bn.cpts[variable][row]
            entries = ' '.join('{}={!r}'.format(value, distribution[value]) for value in bn.signature.domain(variable))
            lines.append('cpt {} | {}: {}'.format(variable, assignment + ' ' if assignment else '', entries))
    return ''.join('{}\n'.format(line) for line in lines)
