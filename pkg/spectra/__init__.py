from . import circle_functions
from .abelian import FiniteAbelianGroup, GroupSignal
from .circle import CircleSignal, FourierSeries
from .errors import SpectraError
from .linalg import DEFAULT_TOLERANCE, Tolerance
from .riesz import RieszCertificate, VectorFamily
from .schur import SchurFactorization, schur_decompose
from .spectral import SpectralDecomposition, spectral_decompose

VERSION = "2026.10.17"
