"""Finite semirings and semimodules with relative exactness and diagram lemmas."""

from .algebra import (
    NATURALS,
    Morphism,
    Semimodule,
    Semiring,
    ValidationReport,
    builtin_semimodule,
    builtin_semiring,
    cancellable_elements,
    cyclic_group,
    direct_sum,
    make_morphism,
    make_semimodule,
    make_semiring,
    saturating_monoid,
    validate_morphism,
    validate_semimodule,
    validate_semiring,
)
from .diagrams import Diagram, LemmaVerdict, SnakeCertificate, connecting_morphism, lemma_verify
from .document import AlgebraDocument, parse, serialize
from .errors import (
    AxiomError,
    BudgetExceeded,
    ConsistencyError,
    DocumentSyntaxError,
    HypothesisError,
    InputError,
    MismatchError,
    NameResolutionError,
    SemiexactError,
)
from .exactness import JunctionVerdict, Sequence, is_short_exact, junction_verdict, sequence_report
from .morphisms import Classification, classify, cokernel, hom_enumerate, image, kernel
from .substructures import (
    Congruence,
    Subsemimodule,
    all_subsemimodules,
    bourne_congruence,
    bourne_quotient,
    iizuka_congruence,
    quotient,
    subtractive_closure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
