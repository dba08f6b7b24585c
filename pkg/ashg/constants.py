from __future__ import annotations

from enum import Enum, IntEnum

#
# constants
#

DEFAULT_MAX_EXACT_PLAYERS = 16   # exhaustive oracle cap
DEFAULT_BASE_TEMPERATURE  = 0.8
DEFAULT_RESTARTS          = 10
DEFAULT_K                 = 5
STEP_LIMIT_FACTOR         = 200  # step_limit = 200 * n * k
NO_IMPROVE_FACTOR         = 50   # no_improve_limit = 50 * k
ENUMERATION_CHUNK         = 4096 # structures evaluated per numpy batch
METRICS_PRECISION         = 6    # decimals when rendering exact metrics

#
# solver config file keys
#


class Keys:
    ALGORITHM        = "algorithm"
    INIT             = "init"
    STEP_LIMIT       = "step_limit"
    NO_IMPROVE_LIMIT = "no_improve_limit"
    RESTARTS         = "restarts"
    SEED             = "seed"
    EPSILON          = "epsilon"
    K                = "k"
    SCHEDULE         = "schedule"
    SWAPS            = "swaps"

    ALL = (ALGORITHM, INIT, STEP_LIMIT, NO_IMPROVE_LIMIT, RESTARTS, SEED, EPSILON, K, SCHEDULE, SWAPS)


METRICS_FIELDS = ("min", "avg", "total", "gini", "min_count")

#
# enumerations
#


class Algorithm(str, Enum):
    NONE = "none"
    SA   = "sa"
    LEX  = "lex"


class InitKind(str, Enum):
    RANDOM = "random"
    GREEDY = "greedy"
    FILE   = "file"


class Schedule(str, Enum):
    LINEAR  = "linear"   # 0.8 * (1 - step/limit)
    LITERAL = "literal"  # 0.8 * step/limit


class MoveKind(str, Enum):
    MOVE = "move"
    SWAP = "swap"


class Preset(str, Enum):
    EQUAL    = "equal"
    BALANCED = "balanced"
    AT_LEAST = "at_least"
    FREE     = "free"


class Verdict(IntEnum):
    SECOND_BETTER = -1
    EQUAL         = 0
    FIRST_BETTER  = 1


class ExitCode(IntEnum):
    OK         = 0
    USAGE      = 1
    INPUT      = 2
    INFEASIBLE = 3
    GUARD      = 4
