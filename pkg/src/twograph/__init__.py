"""Periodicity of single-vertex 2-graphs: word rewriting, coordinate maps,
exhaustive period checks and tail symmetries."""
__version__ = "0.1.0"

from .words import (ThetaError, ThetaSpec, Letter, E, F, parse_theta, parse_word,
                    format_word, degree, normal_form, refactor, swap_ef, swap_fe)
from .maps import (EndoMap, AperiodicityCertificate, extract_maps, compose_along,
                   closure, find_certificate, constancy_depth)
from .periodicity import (PeriodCandidate, GammaTable, Witness, Periodic, NotPeriodic,
                          NoCandidates, UndecidedUpToBound, DegeneratePeriod, SampledPass,
                          EnumerationLimitError, check_period, minimal_period,
                          forward_pass, reverse_pass, brute_force_oracle,
                          gamma_shift_check, half_symmetry, sub_two_graph)
from .catalog import CATALOG, catalog_list, get_entry
