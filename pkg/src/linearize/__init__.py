"""Exact computations around the Jones polynomial and its categorification.

Laurent polynomials, graded chain complexes and their homology, simplicial
homology, the Kauffman bracket and Jones polynomial of planar diagrams,
Khovanov homology via the cube of resolutions, and PageRank.
"""

__version__ = "0.1.0"

from .complexes import (
    ChainMap,
    GradedChainComplex,
    GradedModule,
    HomologyTable,
    cone,
    euler_characteristic,
    gdim,
    homology,
    shift,
    verify_complex,
)
from .khovanov import build_cube, graded_euler, khovanov_homology
from .laurent import LaurentPoly, parse_laurent
from .linkdiag import PDCode, jones, kauffman_bracket, parse_pd, skein_triple
from .matrix import RationalMatrix
from .pagerank import WebGraph, pagerank
from .simplicial import SimplicialComplex, betti_numbers, euler_char_counts

__all__ = [
    "ChainMap", "GradedChainComplex", "GradedModule", "HomologyTable", "LaurentPoly",
    "PDCode", "RationalMatrix", "SimplicialComplex", "WebGraph",
    "betti_numbers", "build_cube", "cone", "euler_char_counts", "euler_characteristic",
    "gdim", "graded_euler", "homology", "jones", "kauffman_bracket", "khovanov_homology",
    "pagerank", "parse_laurent", "parse_pd", "shift", "skein_triple", "verify_complex",
]
