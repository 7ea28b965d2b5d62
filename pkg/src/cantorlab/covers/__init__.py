"""Cover constructions, each emitting a verifiable CoverCertificate."""

from .blocks import Factorization, block_factorization_witness
from .certificates import CoverCertificate, CoverStage
from .ergodic import (
    birkhoff_average_direct,
    birkhoff_average_shifted,
    ergodic_cover,
    ergodic_cover_iterate,
    l2_average_distance,
    sqrt_upper,
)
from .independent import (
    admissible_shifts,
    bidirectional_cover,
    enumerable_shift_cover,
    lemma1_k,
)
from .kucera import kucera_iterate, kucera_step, resolve_open_input
from .prefixes import (
    common_section,
    finite_change_cover,
    prefix_addition_cover,
    prefix_family,
)

__all__ = [
    "CoverCertificate",
    "CoverStage",
    "Factorization",
    "admissible_shifts",
    "bidirectional_cover",
    "birkhoff_average_direct",
    "birkhoff_average_shifted",
    "block_factorization_witness",
    "common_section",
    "enumerable_shift_cover",
    "ergodic_cover",
    "ergodic_cover_iterate",
    "finite_change_cover",
    "kucera_iterate",
    "kucera_step",
    "l2_average_distance",
    "lemma1_k",
    "prefix_addition_cover",
    "prefix_family",
    "resolve_open_input",
    "sqrt_upper",
]
