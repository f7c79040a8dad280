"""Unique factorisation M = D1 * M1 * D2 and the involution certificate.

Any matrix without zero entries factors uniquely into a diagonal D1, a
representative M1 (all-ones first row and column) and a diagonal D2 whose
first entry is 1.  Some diagonal sandwich of M1 is involutory exactly when
the inverse (d_ij) of M1 satisfies d_ij = alpha_i * alpha_j * c_ij for
nonzero alphas; that alpha-vector is the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DomainError, UsageError
from .gf import Field
from .matlin import DiagonalMatrix, SquareMatrix, has_ones_border, inverse, sandwich


@dataclass(frozen=True)
class DecompositionTriple:
    d1: DiagonalMatrix
    m1: SquareMatrix
    d2: DiagonalMatrix

    def validate(self) -> None:
        f = self.m1.field
        if self.d1.field != f or self.d2.field != f:
            raise UsageError("triple components belong to different fields")
        if self.d1.n != self.m1.n or self.d2.n != self.m1.n:
            raise UsageError("triple components have different orders")
        if self.d2.diag[0] != 1:
            raise UsageError("first entry of D2 must be 1")
        if not has_ones_border(self.m1):
            raise UsageError("M1 must have an all-ones first row and column")
        if not (self.d1.is_nonsingular() and self.d2.is_nonsingular()):
            raise UsageError("diagonal factors must be non-singular")

    def to_json(self) -> dict:
        return {
            "field": self.m1.field.spec_string(),
            "d1": self.d1.to_json(),
            "d2": self.d2.to_json(),
            "m1": self.m1.to_json()["rows"],
        }


def decompose(m: SquareMatrix) -> DecompositionTriple:
    f = m.field
    rows = m.rows
    if any(0 in r for r in rows):
        raise DomainError("decomposition requires all entries nonzero")
    inv, mul = f.inv, f.mul
    col_inv = [inv(r[0]) for r in rows]
    a11 = rows[0][0]
    # c_ij = a_i1^{-1} a_ij a_11 a_1j^{-1}
    row1_inv = [mul(a11, inv(x)) for x in rows[0]]
    m1 = tuple(
        tuple(mul(mul(ci, x), rj) for x, rj in zip(r, row1_inv))
        for ci, r in zip(col_inv, rows)
    )
    d1 = DiagonalMatrix(f, tuple(r[0] for r in rows))
    a11_inv = inv(a11)
    d2 = DiagonalMatrix(f, tuple(mul(a11_inv, x) for x in rows[0]))
    return DecompositionTriple(d1, SquareMatrix(f, m1), d2)


def compose(t: DecompositionTriple) -> SquareMatrix:
    t.validate()
    return sandwich(t.d1, t.m1, t.d2)


@dataclass(frozen=True)
class InvolutoryCertificate:
    field: Field
    alphas: tuple[int, ...]

    def negated(self) -> "InvolutoryCertificate":
        return InvolutoryCertificate(self.field, tuple(self.field.neg(a) for a in self.alphas))

    def to_json(self) -> dict:
        return {"field": self.field.spec_string(),
                "alphas": [self.field.format(a) for a in self.alphas]}


@dataclass(frozen=True)
class CertificateOutcome:
    certificate: Optional[InvolutoryCertificate]
    reason: Optional[str] = None
    where: tuple = ()

    def to_json(self) -> dict:
        if self.certificate is not None:
            return {"certified": True, **self.certificate.to_json()}
        return {"certified": False, "reason": self.reason,
                "at": [i + 1 for i in self.where]}


def certify(m1: SquareMatrix) -> CertificateOutcome:
    """Search for the alpha-vector of a non-singular representative.

    The diagonal ratios d_ii / c_ii must be squares and the ratios
    d_ij / c_ij symmetric.  alpha_1 is the canonical square root of d_11 and
    alpha_j = d_1j / alpha_1; every d_ij = alpha_i alpha_j c_ij is then
    verified.  A failure names the first broken condition.
    """
    if not has_ones_border(m1):
        raise UsageError("certificate needs a representative matrix (all-ones border)")
    f = m1.field
    inv_rows = inverse(m1).rows
    c = m1.rows
    n = m1.n
    mul, div = f.mul, f.div
    for i in range(n):
        d, cc = inv_rows[i][i], c[i][i]
        if (d == 0) != (cc == 0) or (d and not f.is_qr(div(d, cc))):
            return CertificateOutcome(None, "non-QR diagonal ratio", (i,))
    for i in range(n):
        for j in range(i + 1, n):
            if mul(inv_rows[i][j], c[j][i]) != mul(inv_rows[j][i], c[i][j]):
                return CertificateOutcome(None, "asymmetric ratio", (i, j))
    a1 = f.sqrt(inv_rows[0][0])
    alphas = [a1] + [div(inv_rows[0][j], a1) for j in range(1, n)]
    if 0 in alphas:
        return CertificateOutcome(None, "pairwise mismatch", (0, alphas.index(0)))
    for i in range(n):
        for j in range(n):
            if inv_rows[i][j] != mul(mul(alphas[i], alphas[j]), c[i][j]):
                return CertificateOutcome(None, "pairwise mismatch", (i, j))
    return CertificateOutcome(InvolutoryCertificate(f, tuple(alphas)))


def involutory_certificate(m1: SquareMatrix) -> Optional[InvolutoryCertificate]:
    return certify(m1).certificate


def involutory_member(
    m1: SquareMatrix, cert: InvolutoryCertificate, lambdas: Sequence[int]
) -> SquareMatrix:
    """The involutory matrix diag(a1, l2..ln) * M1 * diag(1, a2/l2, ..., an/ln)."""
    f = m1.field
    if cert.field != f:
        raise UsageError("certificate and matrix belong to different fields")
    n = m1.n
    lambdas = [int(x) for x in lambdas]
    if len(lambdas) != n - 1 or len(cert.alphas) != n:
        raise UsageError(f"need {n - 1} lambdas and {n} alphas for order {n}")
    if any(x == 0 for x in lambdas):
        raise DomainError("lambda entries must be nonzero")
    d1 = DiagonalMatrix(f, (cert.alphas[0], *lambdas))
    d2 = DiagonalMatrix(f, (1, *(f.div(a, lam) for a, lam in zip(cert.alphas[1:], lambdas))))
    return sandwich(d1, m1, d2)
