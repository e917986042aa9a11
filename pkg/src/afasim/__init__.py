"""
afasim: affine and probabilistic automata over exact rationals

Evaluate - exact cutpoint semantics of PFAs and AfAs
Simulate - residue-number-system decisions in logarithmic working registers
Embed - nonnegative integer form of an affine automaton
Experiment - density and equidistribution checks on unary languages
"""
from pkg_resources import get_distribution

__version__ = get_distribution(__name__).version
__minor_version__ = ".".join(__version__.split(".")[:2])
