# Comparison tolerance for probabilities
TOLERANCE = 1e-9

# Decimal places used when printing probabilities
DISPLAY_PRECISION = 6

# Saturation budget of the labelled tableau
DEFAULT_MAX_RULE_APPLICATIONS = 10000
DEFAULT_MAX_ABOXES = 4096

# Step budget of the classical tableau (per consistency call)
DEFAULT_MAX_CLASSICAL_STEPS = 200000

# Reserved names, never accepted from input files
RESERVED_PREFIX = '__'
RESERVED_CONCEPT = '__Aux'
IMPLICIT_INDIVIDUAL = '__a0'
QUERY_INDIVIDUAL = '__query0'
FRESH_INDIVIDUAL_PREFIX = '__n'

# Values used by the Boolean shorthand X / !X
BOOLEAN_DOMAIN = ('t', 'f')

# Reasoning modes
MODE_TABLEAU = 'tableau'
MODE_ORACLE = 'oracle'
MODES = (MODE_TABLEAU, MODE_ORACLE)

# Name of the logger used for the rule trace
TRACE_LOGGER = 'balcreasoner.trace'
