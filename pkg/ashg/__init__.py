from .constants import *
from .errors import *
from .game import *
from .game_reader import *
from .game_writer import *
from .metrics import *
from .oracle import *
from .heuristics import *
from .datagen import *
