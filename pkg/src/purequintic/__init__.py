"""Classification of pure quintic fields by differential principal factorization type."""

from __future__ import annotations

from .arith import classify_prime, factorize, is_prime, normalize_radicand
from .classify import classify, deterministic_classify
from .conductor import Species, enumerate_multiplet, multiplicity, profile
from .dataset import load_dataset, parse_dataset, statistics, validate
from .dpf import DpfType, signature_from_type, type_from_signature
from .oracle import NullOracle, TableOracle, external_oracle, table_oracle
from .similarity import group_into_classes, similarity_key

__version__ = "0.1.0"

__all__ = [
    "DpfType", "NullOracle", "Species", "TableOracle", "classify", "classify_prime",
    "deterministic_classify", "enumerate_multiplet", "external_oracle", "factorize",
    "group_into_classes", "is_prime", "load_dataset", "multiplicity", "normalize_radicand",
    "parse_dataset", "profile", "signature_from_type", "similarity_key", "statistics",
    "table_oracle", "type_from_signature", "validate",
]
