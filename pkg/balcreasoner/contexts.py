"""Primitive and complex contexts over multi-valued random variables"""

import itertools
from collections import OrderedDict, namedtuple
from collections.abc import Mapping
from functools import lru_cache

from balcreasoner.constants import BOOLEAN_DOMAIN
from balcreasoner.exceptions import MalformedContext

Literal = namedtuple('Literal', 'variable value')


class Signature(object):
    """The random variables of a knowledge base with their ordered value domains."""

    __slots__ = ('_domains', '_hash')

    def __init__(self, domains):
        """
        :param domains: A mapping or an iterable of ``(variable, values)`` pairs. Order is significant.
        :raises MalformedContext: If a variable is declared twice or a domain is empty or repetitive.
        """
        items = domains.items() if isinstance(domains, Mapping) else domains
        self._domains = OrderedDict()
        for variable, values in items:
            values = tuple(values)
            if variable in self._domains:
                raise MalformedContext('Variable "{}" is declared twice'.format(variable))
            if not values:
                raise MalformedContext('Variable "{}" has an empty domain'.format(variable))
            if len(set(values)) != len(values):
                raise MalformedContext('Variable "{}" repeats a value in its domain'.format(variable))
            self._domains[variable] = values
        self._hash = hash(tuple(self._domains.items()))

    @property
    def variables(self):
        return tuple(self._domains)

    def domain(self, variable):
        try:
            return self._domains[variable]
        except KeyError:
            raise MalformedContext('Undeclared variable "{}"'.format(variable))

    def is_boolean(self, variable):
        return sorted(self.domain(variable)) == sorted(BOOLEAN_DOMAIN)

    def check_literal(self, literal):
        """
        Check a literal against the declared domains.

        :param Literal literal: The literal to check
        :raises MalformedContext: If the variable is undeclared or the value is outside its domain
        """
        if literal.value not in self.domain(literal.variable):
            raise MalformedContext('Value "{}" is not in the domain of "{}"'.format(literal.value, literal.variable))

    def check_context(self, context):
        """Check every literal of a primitive or complex context."""
        members = context.members if isinstance(context, ComplexContext) else (context,)
        for kappa in members:
            for literal in kappa.literals:
                self.check_literal(literal)

    def check_world(self, world):
        if set(world) != set(self._domains):
            raise MalformedContext('World {!r} does not assign exactly the declared variables'.format(world))
        for variable, value in world.items():
            self.check_literal(Literal(variable, value))

    def worlds(self, variables=None):
        """
        Enumerate total assignments, in lexicographic order of the declared domains.

        :param variables: Restrict the assignments to these variables (declaration order is kept)
        :return: A generator of :class:`World`
        """
        if variables is None:
            selected = self.variables
        else:
            wanted = set(variables)
            for variable in wanted:
                self.domain(variable)
            selected = tuple(variable for variable in self._domains if variable in wanted)
        for values in itertools.product(*(self._domains[variable] for variable in selected)):
            yield World(zip(selected, values))

    def world_count(self):
        count = 1
        for values in self._domains.values():
            count *= len(values)
        return count

    def __contains__(self, variable):
        return variable in self._domains

    def __iter__(self):
        return iter(self._domains)

    def __len__(self):
        return len(self._domains)

    def __eq__(self, other):
        return isinstance(other, Signature) and list(self._domains.items()) == list(other._domains.items())

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return 'Signature({})'.format(', '.join('{}: {}'.format(variable, ' '.join(values))
                                                for variable, values in self._domains.items()))


class World(Mapping):
    """A total assignment of values to the variables of a signature."""

    __slots__ = ('_values', '_hash')

    def __init__(self, values):
        self._values = OrderedDict(values)
        self._hash = hash(frozenset(self._values.items()))

    def __getitem__(self, variable):
        return self._values[variable]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __eq__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return dict(self._values) == dict(other.items())

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return 'World({})'.format(', '.join('{}={}'.format(name, value) for name, value in self._values.items()))


class PrimitiveContext(object):
    """A conjunction of literals. It may be inconsistent; see :attr:`is_consistent`."""

    __slots__ = ('literals', '_hash')

    def __init__(self, literals=()):
        if isinstance(literals, Mapping):
            literals = literals.items()
        self.literals = frozenset(literal if isinstance(literal, Literal) else Literal(*literal)
                                  for literal in literals)
        self._hash = hash(self.literals)

    @property
    def variables(self):
        return frozenset(literal.variable for literal in self.literals)

    @property
    def is_consistent(self):
        return len(self.variables) == len(self.literals)

    def value_of(self, variable):
        for literal in self.literals:
            if literal.variable == variable:
                return literal.value
        return None

    def without(self, variable):
        return PrimitiveContext(literal for literal in self.literals if literal.variable != variable)

    def satisfied_by(self, assignment):
        """
        :param assignment: A :class:`World` or any mapping from variables to values
        :rtype: bool
        """
        return all(assignment.get(literal.variable) == literal.value for literal in self.literals)

    def conflicts_with(self, other):
        values = dict(self.literals) if self.is_consistent else None
        for literal in other.literals:
            if values is not None:
                value = values.get(literal.variable)
                if value is not None and value != literal.value:
                    return True
            elif any(mine.variable == literal.variable and mine.value != literal.value for mine in self.literals):
                return True
        return False

    def issubset(self, other):
        return self.literals <= other.literals

    def union(self, other):
        return PrimitiveContext(self.literals | other.literals)

    def sort_key(self):
        return tuple(sorted(self.literals))

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self):
        return len(self.literals)

    def __eq__(self, other):
        return isinstance(other, PrimitiveContext) and self.literals == other.literals

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return '{' + ','.join('{}={}'.format(*literal) for literal in self) + '}'


def canonicalize(members):
    """
    Drop inconsistent members and members that are supersets of other members.

    :param members: An iterable of :class:`PrimitiveContext`
    :rtype: frozenset
    """
    kept = []
    for kappa in sorted(set(members), key=lambda kappa: (len(kappa), kappa.sort_key())):
        if not kappa.is_consistent:
            continue
        if any(smaller.issubset(kappa) for smaller in kept):
            continue
        kept.append(kappa)
    return frozenset(kept)


class ComplexContext(object):
    """
    A disjunction of primitive contexts, always held in canonical form.

    ``ComplexContext()`` is bottom (no member); ``ComplexContext.top()`` is the singleton holding the
    empty primitive context.
    """

    __slots__ = ('members', '_hash')

    def __init__(self, members=()):
        self.members = canonicalize(member if isinstance(member, PrimitiveContext) else PrimitiveContext(member)
                                    for member in members)
        self._hash = hash(self.members)

    @classmethod
    def top(cls):
        return cls([PrimitiveContext()])

    @classmethod
    def bottom(cls):
        return cls()

    @classmethod
    def of(cls, *members):
        """Build a context from mappings, e.g. ``ComplexContext.of({'X': 't'}, {'Y': 't'})``."""
        return cls(PrimitiveContext(member) for member in members)

    @property
    def is_top(self):
        return PrimitiveContext() in self.members

    @property
    def is_bottom(self):
        return not self.members

    @property
    def variables(self):
        return frozenset(itertools.chain.from_iterable(kappa.variables for kappa in self.members))

    def satisfied_by(self, assignment):
        return any(kappa.satisfied_by(assignment) for kappa in self.members)

    def __and__(self, other):
        return conjoin(self, other)

    def __or__(self, other):
        return disjoin(self, other)

    def __iter__(self):
        return iter(sorted(self.members, key=PrimitiveContext.sort_key))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, ComplexContext) and self.members == other.members

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_bottom:
            return 'bottom'
        return ' | '.join(repr(kappa) for kappa in self)


def is_consistent(context, signature=None):
    """
    Tell whether a primitive context assigns at most one value per variable.

    :param PrimitiveContext context: The primitive context
    :param Signature signature: If given, the literals are checked against it first
    :raises MalformedContext: On undeclared variables or out-of-domain values
    :rtype: bool
    """
    if signature is not None:
        signature.check_context(context)
    return context.is_consistent


def world_satisfies(world, context):
    return context.satisfied_by(world)


def world_context(world):
    """Return the primitive context pinning every variable of ``world``."""
    return PrimitiveContext(world.items())


def conjoin(phi, psi):
    return ComplexContext(kappa.union(lam) for kappa in phi.members for lam in psi.members)


def disjoin(phi, psi):
    return ComplexContext(phi.members | psi.members)


def negate(phi, signature):
    """
    Complement of a complex context with respect to the worlds of ``signature``.

    The result lists the assignments of the variables mentioned in ``phi`` that falsify it.
    """
    signature.check_context(phi)
    return ComplexContext(world_context(world) for world in signature.worlds(phi.variables)
                          if not phi.satisfied_by(world))


def is_satisfiable(phi):
    return not phi.is_bottom


def entails(phi, psi, signature):
    """
    Tell whether every world satisfying ``phi`` satisfies ``psi``.

    :param ComplexContext phi: The premise
    :param ComplexContext psi: The conclusion
    :param Signature signature: The domains used to enumerate extensions of each member of ``phi``
    :rtype: bool
    """
    return _entails(phi, psi, signature)


@lru_cache(maxsize=1 << 16)
def _entails(phi, psi, signature):
    return all(_primitive_entails(kappa, psi, signature) for kappa in phi.members)


def _primitive_entails(kappa, psi, signature):
    candidates = [lam for lam in psi.members if not lam.conflicts_with(kappa)]
    if not candidates:
        return False
    if any(lam.issubset(kappa) for lam in candidates):
        return True
    free = frozenset(itertools.chain.from_iterable(lam.variables for lam in candidates)) - kappa.variables
    fixed = dict(kappa.literals)
    for world in signature.worlds(free):
        assignment = dict(fixed)
        assignment.update(world)
        if not any(lam.satisfied_by(assignment) for lam in candidates):
            return False
    return True


def equivalent(phi, psi, signature):
    return entails(phi, psi, signature) and entails(psi, phi, signature)


def simplify(phi, signature):
    """
    Drop literals from every member as long as the weakened member still entails ``phi``.

    The result is world-equivalent to ``phi`` and canonical, each member being a prime implicant.
    It is used for display; it does not look for a minimum cover.
    """
    members = []
    for kappa in phi:
        for literal in sorted(kappa.literals):
            weaker = kappa.without(literal.variable)
            if entails(ComplexContext([weaker]), phi, signature):
                kappa = weaker
        members.append(kappa)
    return ComplexContext(members)
