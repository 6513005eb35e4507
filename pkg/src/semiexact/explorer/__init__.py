"""Enumeration, random generation, oracles and fuzzing over small semimodules."""

from .enumeration import canonical_form, enumerate_commutative_monoids, enumerate_semimodules
from .fuzz import FuzzConfig, run_fuzz
from .generators import generate_lemma_instance, mix_seed, random_morphism, random_semimodule
from .oracle import naive_commutative_monoid_count, oracle_exactness

__all__ = [
    "FuzzConfig",
    "canonical_form",
    "enumerate_commutative_monoids",
    "enumerate_semimodules",
    "generate_lemma_instance",
    "mix_seed",
    "naive_commutative_monoid_count",
    "oracle_exactness",
    "random_morphism",
    "random_semimodule",
    "run_fuzz",
]
