import logging
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from balcreasoner.bayes import enumerate_worlds, world_probability
from balcreasoner.contexts import ComplexContext, Signature
from balcreasoner.exceptions import KbParseError
from balcreasoner.ontology import (BOTTOM, TOP, And, ConceptAssertion, ConceptName, Exists, Forall, GCI, Not, Or,
                                   RoleAssertion, VAxiom)
from balcreasoner.parsing import (ParseDiagnostic, content_lines, load_kb, parse_bn, parse_concept, parse_context,
                                  parse_ontology, read_text, serialize_bn, serialize_concept, serialize_context,
                                  serialize_ontology)

from tests.utils import fixture_bn, fixture_path, random_bn, random_concept, random_kb, random_label

A, B, C = ConceptName('A'), ConceptName('B'), ConceptName('C')
PIPE, LEAD = ConceptName('Pipe'), ConceptName('Lead')
SIGNATURE = Signature([('X', ('t', 'f')), ('Y', ('t', 'f')), ('Colour', ('red', 'green'))])


def diagnostics_of(excinfo):
    return excinfo.value.diagnostics


class TestParseConcept:

    @pytest.mark.parametrize('text, expected', [
        ('A', A),
        ('top', TOP),
        ('bottom', BOTTOM),
        ('not A', Not(A)),
        ('A and B and C', And(And(A, B), C)),
        ('A or B and C', Or(A, And(B, C))),
        ('not A and B', And(Not(A), B)),
        ('(A or B) and C', And(Or(A, B), C)),
        ('exists contains.Lead', Exists('contains', LEAD)),
        ('forall contains.(not Lead)', Forall('contains', Not(LEAD))),
        ('Pipe and exists contains.Lead', And(PIPE, Exists('contains', LEAD))),
        ('exists r.forall s.A', Exists('r', Forall('s', A))),
    ])
    def test_parse(self, text, expected):
        assert parse_concept(text) == expected

    @pytest.mark.parametrize('text', ['A and', 'exists .A', 'A ⊓ B', '(A or B', 'not', 'exists and.A'])
    def test_malformed(self, text):
        with pytest.raises(KbParseError):
            parse_concept(text)

    def test_reserved_identifier(self):
        with pytest.raises(KbParseError) as excinfo:
            parse_concept('A and __Aux')
        assert diagnostics_of(excinfo)[0].message == 'Reserved identifier "__Aux"'
        assert diagnostics_of(excinfo)[0].column == 7

    @pytest.mark.parametrize('concept, expected', [
        (Forall('contains', Not(LEAD)), 'forall contains.(not Lead)'),
        (And(Or(A, B), C), '(A or B) and C'),
        (Or(A, And(B, C)), 'A or B and C'),
        (And(A, And(B, C)), 'A and (B and C)'),
        (Not(Not(A)), 'not (not A)'),
        (Exists('r', TOP), 'exists r.top'),
    ])
    def test_serialize(self, concept, expected):
        assert serialize_concept(concept) == expected

    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_round_trip(self, seed):
        concept = random_concept(random.Random(seed), 4)
        assert parse_concept(serialize_concept(concept)) == concept


class TestParseContext:

    @pytest.mark.parametrize('text, expected', [
        ('{}', ComplexContext.top()),
        ('bottom', ComplexContext.bottom()),
        ('{X=t}', ComplexContext.of({'X': 't'})),
        ('{X=t, Y=f} | {Colour=red}', ComplexContext.of({'X': 't', 'Y': 'f'}, {'Colour': 'red'})),
        ('{X=t} | {X=t,Y=t}', ComplexContext.of({'X': 't'})),
        ('{X=t,X=f}', ComplexContext.bottom()),
        ('{X, !Y}', ComplexContext.of({'X': 't', 'Y': 'f'})),
    ])
    def test_parse(self, text, expected):
        assert parse_context(text, SIGNATURE) == expected

    def test_without_signature(self):
        assert parse_context('{Q, !R}') == ComplexContext.of({'Q': 't', 'R': 'f'})

    @pytest.mark.parametrize('text, message', [
        ('{Q=t}', 'Undeclared variable "Q"'),
        ('{X=maybe}', 'Value "maybe" is not in the domain of "X"'),
        ('{Colour}', 'Boolean shorthand used on non-Boolean variable "Colour"'),
        ('{!Colour}', 'Boolean shorthand used on non-Boolean variable "Colour"'),
    ])
    def test_checked_against_signature(self, text, message):
        with pytest.raises(KbParseError) as excinfo:
            parse_context(text, SIGNATURE)
        assert diagnostics_of(excinfo)[0].message == message

    @pytest.mark.parametrize('phi, expected', [
        (ComplexContext.bottom(), 'bottom'),
        (ComplexContext.top(), '{}'),
        (ComplexContext.of({'Z': 't', 'X': 't'}, {'Y': 't', 'Z': 't'}), '{X=t,Z=t} | {Y=t,Z=t}'),
    ])
    def test_serialize(self, phi, expected):
        assert serialize_context(phi) == expected
        assert parse_context(expected) == phi

    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        signature = random_bn(rng, rng.randint(1, 4)).signature
        phi = random_label(rng, signature)
        assert parse_context(serialize_context(phi), signature) == phi


class TestParseOntology:

    def test_lines(self):
        text = '\n'.join([
            '# comment',
            'gci Pipe and exists contains.Lead sub LeadPipe @ {}',
            '',
            'gci Water sub Drinkable @ {X=t}',
            'assert Pipe(pipe1)',
            'role contains(pipe1, m) @ {X} | {!Y}',
        ])
        axioms = parse_ontology(text, SIGNATURE)
        assert axioms == (
            VAxiom(GCI(And(PIPE, Exists('contains', LEAD)), ConceptName('LeadPipe')), ComplexContext.top()),
            VAxiom(GCI(ConceptName('Water'), ConceptName('Drinkable')), ComplexContext.of({'X': 't'})),
            VAxiom(ConceptAssertion(PIPE, 'pipe1')),
            VAxiom(RoleAssertion('contains', 'pipe1', 'm'), ComplexContext.of({'X': 't'}, {'Y': 'f'})),
        )

    def test_concepts_are_not_normalized(self):
        axiom, = parse_ontology('assert not (A and B)(a)', SIGNATURE)
        assert axiom.axiom.concept == Not(And(A, B))

    def test_reports_every_bad_line(self):
        path = fixture_path('malformed.balc')
        with pytest.raises(KbParseError) as excinfo:
            parse_ontology(read_text(path), fixture_bn().signature, path)
        first, second = diagnostics_of(excinfo)
        assert first.line == 1
        assert first.message.startswith('Unexpected token')
        assert (second.line, second.column) == (2, 23)
        assert str(second) == '{}:2:23: error: Undeclared variable "Q"'.format(path)

    def test_fixture(self):
        axioms = parse_ontology(read_text(fixture_path('example3.balc')), fixture_bn().signature)
        assert len(axioms) == 7
        assert axioms[5] == VAxiom(GCI(ConceptName('Water'), ConceptName('Drinkable')), ComplexContext.of({'W': 't'}))

    @pytest.mark.parametrize('name', ['example3.balc', 'instance.balc', 'small.balc'])
    def test_round_trip(self, name):
        signature = Signature([(variable, ('t', 'f')) for variable in ('X', 'Y', 'Z', 'W')])
        axioms = parse_ontology(read_text(fixture_path(name)), signature)
        assert parse_ontology(serialize_ontology(axioms), signature) == axioms

    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_random_round_trip(self, seed):
        kb = random_kb(seed)
        assert parse_ontology(serialize_ontology(kb.ontology), kb.signature) == kb.ontology


class TestParseBn:

    def test_fixture(self):
        bn = fixture_bn()
        assert bn.signature.variables == ('X', 'Y', 'Z', 'W')
        assert bn.parents['Z'] == ('X', 'Y')
        assert bn.signature.world_count() == 16
        assert bn.cpts['Y'][('f',)] == {'t': 0.7, 'f': 0.3}

    def test_round_trip(self):
        bn = fixture_bn()
        again = parse_bn(serialize_bn(bn))
        assert again.signature == bn.signature
        for world in enumerate_worlds(bn):
            assert world_probability(again, world) == pytest.approx(world_probability(bn, world))

    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_random_round_trip(self, seed):
        rng = random.Random(seed)
        bn = random_bn(rng, rng.randint(1, 4))
        again = parse_bn(serialize_bn(bn))
        assert again.signature == bn.signature
        assert again.parents == bn.parents
        for world in enumerate_worlds(bn):
            assert world_probability(again, world) == pytest.approx(world_probability(bn, world), abs=1e-9)

    def test_multi_valued(self):
        bn = parse_bn('var C : red green blue\ncpt C | : red=0.2 green=0.3 blue=0.5\n')
        assert bn.signature.domain('C') == ('red', 'green', 'blue')
        assert not bn.signature.is_boolean('C')

    @pytest.mark.parametrize('text, line, message', [
        ('var X : t f\ncpt X | : t=0.7 f=0.4\n', 2, 'row sum 1.1 in cpt row X |'),
        ('var X : t f\nvar Y : t f\nparents Y : X\ncpt X | : t=0.5 f=0.5\ncpt Y | X=t : t=0.5 f=0.5\n', 2,
         'missing cpt row Y | X=f'),
        ('var X : t f\ncpt X | : t=0.5 maybe=0.5\n', 2, 'missing value f in cpt row X |'),
        ('var X : t f\nvar X : t f\ncpt X | : t=0.5 f=0.5\n', 2, 'Variable "X" is declared twice'),
        ('var X : t f\ncpt Y | : t=1.0 f=0.0\ncpt X | : t=0.5 f=0.5\n', 2, 'Undeclared variable "Y"'),
        ('var X : t f\nvar Y : t f\nparents X : Y\ncpt X | : t=0.5 f=0.5\n', 4,
         'cpt row for "X" must assign exactly its parents (Y)'),
        ('var X : t f\ncpt X | : t=0.5 f=0.5 t=0.5\n', 2, 'Value "t" repeated in cpt row'),
        ('var X t f\n', 1, "Unexpected token 't'"),
    ])
    def test_diagnostics(self, text, line, message):
        with pytest.raises(KbParseError) as excinfo:
            parse_bn(text)
        assert (line, message) in [(diagnostic.line, diagnostic.message) for diagnostic in diagnostics_of(excinfo)]

    def test_cycle(self):
        with pytest.raises(KbParseError) as excinfo:
            parse_bn(read_text(fixture_path('cyclic.bn')))
        diagnostic, = diagnostics_of(excinfo)
        assert diagnostic.message.startswith('cycle ')
        assert diagnostic.line in (3, 4)

    def test_several_errors(self):
        text = 'var X : t f\nvar Y t f\nvar Z : t t\ncpt X | : t=1.0 f=0.0\n'
        with pytest.raises(KbParseError) as excinfo:
            parse_bn(text)
        assert [diagnostic.line for diagnostic in diagnostics_of(excinfo)] == [2, 3]


class TestLoadKb:

    def test_load(self):
        kb = load_kb(fixture_path('example3_pipe1.balc'), fixture_path('fig1.bn'))
        assert len(kb.ontology) == 8
        assert kb.ontology[-1] == VAxiom(ConceptAssertion(PIPE, 'pipe1'))

    def test_unused_variables(self, caplog):
        with caplog.at_level(logging.WARNING):
            load_kb(fixture_path('small.balc'), fixture_path('fig1.bn'))
        warnings = [record.getMessage() for record in caplog.records if record.levelno == logging.WARNING]
        assert warnings == [
            '{}:4:1: warning: Variable "Z" is used in no label'.format(fixture_path('fig1.bn')),
            '{}:5:1: warning: Variable "W" is used in no label'.format(fixture_path('fig1.bn')),
        ]

    def test_missing_file(self):
        with pytest.raises(OSError):
            load_kb(fixture_path('nothing.balc'), fixture_path('fig1.bn'))


def test_content_lines():
    assert list(content_lines('# head\n\nvar X : t f\n  # indented\ncpt X | : t=1 f=0')) == [
        (3, 'var X : t f'), (5, 'cpt X | : t=1 f=0')]


def test_diagnostic_without_path():
    assert str(ParseDiagnostic(3, 0, 'oops')) == '3:1: error: oops'
