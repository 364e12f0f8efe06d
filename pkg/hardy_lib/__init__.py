from . import config
from . import errors
from . import quantum
from . import search
from . import ladder
from . import lhv
from . import apparatus
from . import utils

__version__ = '0.1.0'
