"""
Type-2 Convolution Toolkit

Sup-convolution of fuzzy truth values on [0,1] under a pair of t-norms.
Features an alpha-cut engine, brute-force grid oracles, the convolution
order, and a randomized harness for the t-norm laws.

Version: 1.0.0
License: MIT
"""

__version__ = "1.0.0"
__author__ = "t2conv developers"
__license__ = "MIT"
__description__ = "Convolution of fuzzy truth values under pairs of t-norms"

# Import main classes for programmatic usage
from .tnorms import TnormSpec, TnormException, ordinal_sum, tnorm_eval, load_tnorm
from .truth_value import TruthValue, TruthValueException, BadShape
from .interval_cuts import CutFamily, Interval, CutException, cuts_of, tv_from_cuts
from .convolution import convolve_cuts, convolve_oracle, meet_min, HypothesisViolation
from .order import leq_convolution, leq_by_cuts
from .harness import VerificationHarness, AxiomReport, NecessityWitness, HarnessException
from .data_processor import DataProcessor
from .config import ConfigManager, ConfigException

__all__ = [
    'TnormSpec',
    'TnormException',
    'ordinal_sum',
    'tnorm_eval',
    'load_tnorm',
    'TruthValue',
    'TruthValueException',
    'BadShape',
    'CutFamily',
    'Interval',
    'CutException',
    'cuts_of',
    'tv_from_cuts',
    'convolve_cuts',
    'convolve_oracle',
    'meet_min',
    'HypothesisViolation',
    'leq_convolution',
    'leq_by_cuts',
    'VerificationHarness',
    'AxiomReport',
    'NecessityWitness',
    'HarnessException',
    'DataProcessor',
    'ConfigManager',
    'ConfigException',
    '__version__',
    '__author__',
    '__license__',
    '__description__'
]
