"""Ideal lattices of finite commutative rings and BL-ring checks."""

from ._kernels import backend
from .axioms import ClassificationReport, classify
from .errors import (
    BLRingError,
    IdealCapError,
    InconclusiveSearch,
    LatticeError,
    MixedRingError,
    NotAnIdealError,
    NotBLError,
    NotPrimeError,
    NotUnitalError,
    OrderCapError,
    RingAxiomError,
    RingSpecError,
    StructureConstantError,
)
from .harness import CorpusSpec, TheoremRun, generate_corpus, run_theorem_suite
from .ideals import (
    Ideal,
    IdealLattice,
    annihilator,
    enumerate_ideals,
    ideal_generated,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    residuum,
)
from .ring_core import FiniteRing, RingHom, direct_product, dual, make_cyclic, make_structure_algebra, nil2, quotient_ring
from .ringspec import load_table_file, parse_ring
from .spectrum import check_spectrum_props, localize, n_of_p, prime_ideals, radical
from .structure import (
    FiniteResiduatedLattice,
    iso_search,
    lukasiewicz_chain,
    mv_center,
    ordinal_sum,
    quotient_by_dense_filter,
)
from .verdict import AxiomVerdict

__all__ = [name for name in dir() if not name.startswith("_")]
