"""Parser and exact canonicalizer for multivector identities."""
from .canonical import CanonicalForm, IdentityReport, canonicalize, verify_identity
from .corpus import (
    CorpusError, CorpusItem, CorpusReport, builtin, builtin_all, corrupted, load, loads, negative_control,
    run_corpus,
)
from .parser import ParseError, Scope, parse
from .poly import Poly
