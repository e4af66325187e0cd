"""Exact homological invariants of maximal orders in simple algebras over Q and Q_p.

Layers, bottom up: finite fields (ffield), truncated Witt rings (witt), the
local tower R < S < T (local), chain-ring linear algebra and homology
(chainring, fpmod), the order A and its reduction as structure-constant
algebras (algebra), the brute-force Hochschild oracle (hochschild), the
2-periodic small complexes (complexes), the two-row spectral sequence (brun),
closed-form evaluators (closed), global number-ring assembly (numring), and
the CLI (cli).  Every closed form is cross-validated against chain-level
computation in the test suite; `python -m orderthh.cli --mode verify` runs the
same matrix from the command line.
"""

from .chainring import Complex, LocalModule, homology, snf
from .closed import hh_A, hh_A_modp, thh_A, thh_A_modp, thh_S, thh_S_modp, uct_check
from .ffield import factor_poly, fq_make, frobenius, trace_rel
from .local import Tower, make_tower
from .numring import GlobalAlgebraSpec, NumberRingSpec, RamifiedPrime, hh_U, thh_U, thh_V

__all__ = [
    "Complex",
    "GlobalAlgebraSpec",
    "LocalModule",
    "NumberRingSpec",
    "RamifiedPrime",
    "Tower",
    "factor_poly",
    "fq_make",
    "frobenius",
    "hh_A",
    "hh_A_modp",
    "hh_U",
    "homology",
    "make_tower",
    "snf",
    "thh_A",
    "thh_A_modp",
    "thh_S",
    "thh_S_modp",
    "thh_U",
    "thh_V",
    "trace_rel",
    "uct_check",
]
