"""Context-labelled ABoxes, the working state of the pinpointing tableau"""

from collections import OrderedDict

from balcreasoner.constants import FRESH_INDIVIDUAL_PREFIX
from balcreasoner.contexts import ComplexContext, entails
from balcreasoner.ontology import And, ConceptAssertion, ConceptName, Not, Or, RoleAssertion, is_top


class LabelledAbox(object):
    """
    A set of assertions, each annotated with the complex context under which it holds.

    There is at most one label per assertion; :func:`oplus` disjoins new labels into existing ones.
    Forked copies extend the identifier of their origin (``0`` forks into ``0.1`` and ``0.2``), and
    the fresh-individual counter is carried along so names stay unique within a lineage.
    """

    def __init__(self, identifier='0'):
        self.identifier = identifier
        self.labels = OrderedDict()
        self.concepts = OrderedDict()
        self.edges = OrderedDict()
        self.parent = {}
        self.counter = 0
        self.applications = 0
        self.literals_changed = True

    def copy(self, identifier):
        other = LabelledAbox(identifier)
        other.labels = OrderedDict(self.labels)
        other.concepts = OrderedDict((name, OrderedDict(concepts)) for name, concepts in self.concepts.items())
        other.edges = OrderedDict((individual, list(edges)) for individual, edges in self.edges.items())
        other.parent = dict(self.parent)
        other.counter = self.counter
        other.applications = self.applications
        other.literals_changed = self.literals_changed
        return other

    def fork(self):
        """Split into two copies for the two branches of a disjunction."""
        origin = self.identifier
        other = self.copy('{}.2'.format(origin))
        self.identifier = '{}.1'.format(origin)
        return self, other

    @property
    def individuals(self):
        return list(self.concepts)

    def add_individual(self, individual):
        if individual not in self.concepts:
            self.concepts[individual] = OrderedDict()
            self.edges[individual] = []

    def fresh_individual(self, parent):
        self.counter += 1
        individual = '{}{}'.format(FRESH_INDIVIDUAL_PREFIX, self.counter)
        self.add_individual(individual)
        self.parent[individual] = parent
        return individual

    def label(self, assertion):
        return self.labels.get(assertion)

    def concept_label(self, concept, individual):
        return self.concepts.get(individual, {}).get(concept)

    def successors(self, individual, role):
        return [target for name, target in self.edges.get(individual, ()) if name == role]

    def ancestors(self, individual):
        while individual in self.parent:
            individual = self.parent[individual]
            yield individual

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return 'LabelledAbox({}, {} assertions)'.format(self.identifier, len(self.labels))


def insertable(abox, assertion, label, signature):
    """
    Tell whether adding ``assertion`` under ``label`` would enlarge the worlds it holds in.

    Unsatisfiable labels are never insertable.

    :param LabelledAbox abox: The ABox
    :param assertion: A :class:`ConceptAssertion` or :class:`RoleAssertion`
    :param ComplexContext label: The candidate label
    :param Signature signature: The signature used for entailment
    :rtype: bool
    """
    if label.is_bottom:
        return False
    existing = abox.labels.get(assertion)
    if existing is None:
        return True
    return not entails(label, existing, signature)


def oplus(abox, assertion, label):
    """
    Add ``assertion`` under ``label``, or disjoin ``label`` into its existing label.

    :return: The (modified) ABox
    :rtype: LabelledAbox
    """
    existing = abox.labels.get(assertion)
    merged = label if existing is None else existing | label
    if merged == existing:
        return abox
    abox.labels[assertion] = merged
    if isinstance(assertion, ConceptAssertion):
        abox.add_individual(assertion.individual)
        abox.concepts[assertion.individual][assertion.concept] = merged
        if isinstance(assertion.concept, (ConceptName, Not)):
            abox.literals_changed = True
    elif isinstance(assertion, RoleAssertion):
        abox.add_individual(assertion.source)
        abox.add_individual(assertion.target)
        if existing is None:
            abox.edges[assertion.source].append((assertion.role, assertion.target))
    return abox


def support(abox, concept, individual):
    """
    The context in which ``concept(individual)`` holds in ``abox``, either asserted or through its parts.

    A disjunction holds where one of its disjuncts holds, a conjunction where both conjuncts hold, and
    top holds everywhere.

    :rtype: ComplexContext
    """
    if is_top(concept):
        return ComplexContext.top()
    result = abox.concept_label(concept, individual)
    if result is None:
        result = ComplexContext.bottom()
    if isinstance(concept, Or):
        result = result | support(abox, concept.left, individual) | support(abox, concept.right, individual)
    elif isinstance(concept, And):
        result = result | (support(abox, concept.left, individual) & support(abox, concept.right, individual))
    return result


def content_key(abox):
    """A hashable key equal for ABoxes holding the same labelled assertions and individual tree."""
    return frozenset(abox.labels.items()), frozenset(abox.parent.items())


def _blocks(abox, blocker, individual, signature):
    candidates = abox.concepts[blocker]
    for concept, label in abox.concepts[individual].items():
        other = candidates.get(concept)
        if other is None or not entails(label, other, signature):
            return False
    return True


def is_directly_blocked(abox, individual, signature):
    if individual not in abox.parent:
        return False
    return any(_blocks(abox, ancestor, individual, signature) for ancestor in abox.ancestors(individual))


def is_blocked(abox, individual, signature):
    """
    Tell whether a generated individual, or one of its ancestors, is blocked by a proper ancestor.

    ``y`` is blocked by ``x`` when every ``C(y)`` labelled ``psi`` has a counterpart ``C(x)`` whose label is
    entailed by ``psi``. Named individuals are never blocked.
    """
    if is_directly_blocked(abox, individual, signature):
        return True
    return any(is_directly_blocked(abox, ancestor, signature) for ancestor in abox.ancestors(individual))


def clash_context(abox):
    """
    The disjunction, over every pair ``A(x)``, ``not A(x)``, of the conjunction of their labels.

    :rtype: ComplexContext
    """
    result = ComplexContext.bottom()
    for concepts in abox.concepts.values():
        for concept, label in concepts.items():
            if isinstance(concept, Not) and isinstance(concept.operand, ConceptName):
                positive = concepts.get(concept.operand)
                if positive is not None:
                    result = result | (positive & label)
    return result
