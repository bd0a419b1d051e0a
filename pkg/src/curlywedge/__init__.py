"""Nonabelian exterior squares, Schur multipliers and Bogomolov multipliers
of finite solvable groups given by polycyclic presentations."""

from .bogomolov import (BogomolovReport, FiveTermReport, analyze,
                        blackburn_evens_multiplier_order, bogomolov_multiplier,
                        class2_check, five_term_check, frobenius_checks,
                        m0_lattice_classes, m0_lattice_pairs)
from .catalog import CatalogEntry, get, list_names
from .cover import (CoverElement, ExtSquareData, TailedCover, build_cover,
                    collect_with_tails, consistency_lattice, curly_wedge_order,
                    exterior_square_data, exterior_square_order,
                    express_as_wedge_word, multiplier, wedge)
from .errors import (BoundExceeded, CrossCheckError, CurlywedgeError,
                     FormatError, InconsistencyError, InfiniteIndexError)
from .lattice import (IntegerLattice, hnf, lattice_sum, quotient_invariants,
                      saturation, snf)
from .pc import (PcPresentation, abelianization, collect, commutator,
                 conjugacy_classes, conjugate, consistency_failures,
                 centralizer_generators, derived_subgroup, elements,
                 format_presentation, inverse, is_consistent, multiply,
                 nilpotency_class, parse_presentation, power,
                 quotient_presentation)

__version__ = "0.1.0"
