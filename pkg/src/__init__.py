"""
Integral Vinberg representations of labeled Coxeter truncation polytopes.
"""

__version__ = "0.1.0"

from . import arithmetic
from . import coxeter
from . import cartan
from . import polytope
from . import deform
from . import integral
from . import realize
from . import data
from . import utils

__all__ = ['arithmetic', 'coxeter', 'cartan', 'polytope', 'deform', 'integral', 'realize', 'data', 'utils']
