"""ALC concepts, axioms, context-annotated ontologies and finite interpretations"""

import functools
from collections import OrderedDict
from dataclasses import dataclass, field

from balcreasoner.constants import RESERVED_CONCEPT
from balcreasoner.contexts import ComplexContext
from balcreasoner.exceptions import UndeclaredSymbol


class Concept(object):
    """Base class of the ALC concept constructors."""

    __slots__ = ()

    def nnf(self):
        """Return an equivalent concept where negation only occurs in front of concept names."""
        raise NotImplementedError()

    def negated_nnf(self):
        """Return the negation normal form of the complement of this concept."""
        raise NotImplementedError()

    def children(self):
        return ()


@dataclass(frozen=True)
class ConceptName(Concept):
    name: str

    def nnf(self):
        return self

    def negated_nnf(self):
        return Not(self)


@dataclass(frozen=True)
class Not(Concept):
    operand: Concept

    def nnf(self):
        return self.operand.negated_nnf()

    def negated_nnf(self):
        return self.operand.nnf()

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class And(Concept):
    left: Concept
    right: Concept

    def nnf(self):
        return And(self.left.nnf(), self.right.nnf())

    def negated_nnf(self):
        return Or(self.left.negated_nnf(), self.right.negated_nnf())

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Concept):
    left: Concept
    right: Concept

    def nnf(self):
        return Or(self.left.nnf(), self.right.nnf())

    def negated_nnf(self):
        return And(self.left.negated_nnf(), self.right.negated_nnf())

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Exists(Concept):
    role: str
    filler: Concept

    def nnf(self):
        return Exists(self.role, self.filler.nnf())

    def negated_nnf(self):
        return Forall(self.role, self.filler.negated_nnf())

    def children(self):
        return (self.filler,)


@dataclass(frozen=True)
class Forall(Concept):
    role: str
    filler: Concept

    def nnf(self):
        return Forall(self.role, self.filler.nnf())

    def negated_nnf(self):
        return Exists(self.role, self.filler.negated_nnf())

    def children(self):
        return (self.filler,)


AUX = ConceptName(RESERVED_CONCEPT)
TOP = Or(AUX, Not(AUX))
BOTTOM = And(AUX, Not(AUX))


def nnf(concept):
    return concept.nnf()


def is_top(concept):
    return concept in (TOP, Or(Not(AUX), AUX))


def is_bottom(concept):
    return concept in (BOTTOM, And(Not(AUX), AUX))


def is_nnf(concept):
    if isinstance(concept, Not):
        return isinstance(concept.operand, ConceptName)
    return all(is_nnf(child) for child in concept.children())


def subconcepts(concept):
    """Walk a concept tree depth first, the concept itself included."""
    stack = [concept]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children()))


def internalize(gci):
    """
    The NNF concept every individual has to satisfy because of a GCI (``not C or D``).

    Top on the left and bottom on the right are folded away, so ``top sub D`` yields ``D``.
    """
    if is_top(gci.sup):
        return TOP
    if is_top(gci.sub):
        return gci.sup.nnf()
    if is_bottom(gci.sup):
        return gci.sub.negated_nnf()
    return Or(gci.sub.negated_nnf(), gci.sup.nnf())


@dataclass(frozen=True)
class GCI(object):
    sub: Concept
    sup: Concept


def conjuncts(concept):
    if isinstance(concept, And):
        return conjuncts(concept.left) + conjuncts(concept.right)
    return [concept]


def absorb(gci):
    """
    Rewrite ``A and C sub D`` as ``A sub (not C or D)`` for the first concept name ``A`` among the
    conjuncts on the left.

    :return: ``(A, concept)``, where ``concept`` is in NNF and has to hold for every individual asserted to
        be ``A``, or None if no concept name occurs as a conjunct on the left
    """
    if is_top(gci.sup):
        return None
    parts = conjuncts(gci.sub.nnf())
    for index, part in enumerate(parts):
        if isinstance(part, ConceptName) and part != AUX:
            rest = parts[:index] + parts[index + 1:]
            if not rest:
                return part, gci.sup.nnf()
            return part, internalize(GCI(functools.reduce(And, rest), gci.sup))
    return None


@dataclass(frozen=True)
class ConceptAssertion(object):
    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion(object):
    role: str
    source: str
    target: str


def is_assertion(axiom):
    return isinstance(axiom, (ConceptAssertion, RoleAssertion))


@dataclass(frozen=True)
class VAxiom(object):
    """An axiom annotated with the complex context under which it holds."""

    axiom: object
    label: ComplexContext = field(default_factory=ComplexContext.top)


@dataclass(frozen=True)
class Vocabulary(object):
    """Concept names, role names and individuals of a set of axioms, in order of first use."""

    concepts: tuple = ()
    roles: tuple = ()
    individuals: tuple = ()


def vocabulary(axioms):
    """
    :param axioms: An iterable of :class:`GCI`, :class:`ConceptAssertion` or :class:`RoleAssertion`
    :rtype: Vocabulary
    """
    concepts, roles, individuals = OrderedDict(), OrderedDict(), OrderedDict()

    def visit(concept):
        for sub in subconcepts(concept):
            if isinstance(sub, ConceptName) and sub != AUX:
                concepts[sub.name] = None
            elif isinstance(sub, (Exists, Forall)):
                roles[sub.role] = None

    for axiom in axioms:
        if isinstance(axiom, GCI):
            visit(axiom.sub)
            visit(axiom.sup)
        elif isinstance(axiom, ConceptAssertion):
            visit(axiom.concept)
            individuals[axiom.individual] = None
        elif isinstance(axiom, RoleAssertion):
            roles[axiom.role] = None
            individuals[axiom.source] = None
            individuals[axiom.target] = None
    return Vocabulary(tuple(concepts), tuple(roles), tuple(individuals))


class Kb(object):
    """A context-annotated ontology paired with the Bayesian network over its context variables."""

    def __init__(self, ontology, bn):
        self.ontology = tuple(OrderedDict.fromkeys(ontology))
        self.bn = bn

    @property
    def signature(self):
        return self.bn.signature

    @property
    def axioms(self):
        return tuple(vaxiom.axiom for vaxiom in self.ontology)

    @property
    def tbox(self):
        return tuple(vaxiom for vaxiom in self.ontology if isinstance(vaxiom.axiom, GCI))

    @property
    def abox(self):
        return tuple(vaxiom for vaxiom in self.ontology if is_assertion(vaxiom.axiom))

    def vocabulary(self):
        return vocabulary(self.axioms)

    def validate(self):
        """
        :raises MalformedContext: If a label uses an undeclared variable or an out-of-domain value
        :return: The knowledge base itself
        """
        for vaxiom in self.ontology:
            self.signature.check_context(vaxiom.label)
        return self

    def extended(self, *vaxioms):
        """Return a new knowledge base with ``vaxioms`` appended; this one is left untouched."""
        return Kb(self.ontology + tuple(vaxioms), self.bn)

    def without_assertions(self):
        return Kb(self.tbox, self.bn)

    def __repr__(self):
        return 'Kb({} axioms, {!r})'.format(len(self.ontology), self.signature)


def restriction(ontology, world):
    """
    The classical ontology holding in ``world``: every axiom whose label the world satisfies.

    :param ontology: An iterable of :class:`VAxiom`
    :param World world: The world
    :return: The axioms in their original order, without duplicates
    :rtype: tuple
    """
    return tuple(OrderedDict.fromkeys(vaxiom.axiom for vaxiom in ontology if vaxiom.label.satisfied_by(world)))


class FiniteInterpretation(object):
    """A finite interpretation of concept names, role names and individuals, used for model checking."""

    def __init__(self, domain, concepts=None, roles=None, individuals=None):
        self.domain = frozenset(domain)
        self.concepts = {name: frozenset(extension) for name, extension in (concepts or {}).items()}
        self.roles = {name: frozenset(tuple(pair) for pair in extension) for name, extension in (roles or {}).items()}
        self.individuals = dict(individuals or {})
        for name, extension in self.concepts.items():
            if not extension <= self.domain:
                raise ValueError('Extension of concept "{}" leaves the domain'.format(name))
        for name, extension in self.roles.items():
            if any(d not in self.domain or e not in self.domain for d, e in extension):
                raise ValueError('Extension of role "{}" leaves the domain'.format(name))
        for name, element in self.individuals.items():
            if element not in self.domain:
                raise ValueError('Individual "{}" is mapped outside the domain'.format(name))

    def concept_extension(self, name):
        if name == RESERVED_CONCEPT:
            return self.concepts.get(name, frozenset())
        try:
            return self.concepts[name]
        except KeyError:
            raise UndeclaredSymbol('Concept name "{}" is not interpreted'.format(name))

    def role_extension(self, name):
        try:
            return self.roles[name]
        except KeyError:
            raise UndeclaredSymbol('Role name "{}" is not interpreted'.format(name))

    def individual(self, name):
        try:
            return self.individuals[name]
        except KeyError:
            raise UndeclaredSymbol('Individual "{}" is not interpreted'.format(name))


def interpret(interpretation, concept):
    """
    The extension of a concept under a finite interpretation.

    :param FiniteInterpretation interpretation: The interpretation
    :param Concept concept: The concept
    :raises UndeclaredSymbol: If a concept or role name is not interpreted
    :rtype: frozenset
    """
    if isinstance(concept, ConceptName):
        return interpretation.concept_extension(concept.name)
    if isinstance(concept, Not):
        return interpretation.domain - interpret(interpretation, concept.operand)
    if isinstance(concept, And):
        return interpret(interpretation, concept.left) & interpret(interpretation, concept.right)
    if isinstance(concept, Or):
        return interpret(interpretation, concept.left) | interpret(interpretation, concept.right)
    filler = interpret(interpretation, concept.filler)
    pairs = interpretation.role_extension(concept.role)
    if isinstance(concept, Exists):
        return frozenset(d for d, e in pairs if e in filler)
    if isinstance(concept, Forall):
        return interpretation.domain - frozenset(d for d, e in pairs if e not in filler)
    raise TypeError('Not a concept: {!r}'.format(concept))


def satisfies(interpretation, axiom):
    if isinstance(axiom, GCI):
        return interpret(interpretation, axiom.sub) <= interpret(interpretation, axiom.sup)
    if isinstance(axiom, ConceptAssertion):
        return interpretation.individual(axiom.individual) in interpret(interpretation, axiom.concept)
    if isinstance(axiom, RoleAssertion):
        pair = (interpretation.individual(axiom.source), interpretation.individual(axiom.target))
        return pair in interpretation.role_extension(axiom.role)
    raise TypeError('Not an axiom: {!r}'.format(axiom))


def is_model(interpretation, axioms):
    return all(satisfies(interpretation, axiom) for axiom in axioms)
