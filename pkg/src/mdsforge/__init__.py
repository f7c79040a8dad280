"""Finite-field MDS matrices: checks, diagonal decomposition, involution
certificates, exhaustive enumeration and counting."""

from .errors import CheckpointMismatch, DomainError, LimitExceeded, MdsError, UsageError
from .gf import Field, FieldElement, parse_field
from .matlin import DiagonalMatrix, SquareMatrix, parse_matrix
from .mdscheck import check_r, check_r_order2, is_involutory, is_mds, is_representative_mds
from .decomp import (
    DecompositionTriple,
    InvolutoryCertificate,
    certify,
    compose,
    decompose,
    involutory_certificate,
    involutory_member,
)

__version__ = "0.1.0"
