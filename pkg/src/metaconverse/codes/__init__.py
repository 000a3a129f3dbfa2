"""Codebooks, Reed-Solomon codes, simulation and exhaustive search."""
from .core import (
    Codebook, all_words, exhaustive_ml_decode, is_mds, map_error_probability, min_distance,
    ml_error_probability, parse_code, read_code, singleton_defect, write_code,
)
from .gf import GF2m, field
from .rs import ERASED, DecodeResult, ReedSolomon
from .search import SearchResult, best_code_search
from .simulate import TrialReport, run_trials


def reed_solomon(m: int, n: int, k: int) -> Codebook:
    return ReedSolomon(m, n, k).codebook()


def ee_bd_decode(rs: ReedSolomon, received) -> DecodeResult:
    """Errors-and-erasures bounded-distance decoding (ERASED marks erasures)."""
    return rs.decode(received)


__all__ = [
    "Codebook", "all_words", "exhaustive_ml_decode", "is_mds", "map_error_probability", "min_distance",
    "ml_error_probability", "parse_code", "read_code", "singleton_defect", "write_code", "GF2m", "field",
    "ERASED", "DecodeResult", "ReedSolomon", "SearchResult", "best_code_search", "TrialReport", "run_trials",
    "reed_solomon", "ee_bd_decode",
]
