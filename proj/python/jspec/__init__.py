"""Spectra of doubly infinite complex Jacobi operators."""

from ._core import (
    JspecError,
    OperatorSpec,
    bessel_compact,
    bessel_j,
    charfn,
    detp_identity_residual,
    eigenvector,
    from_json,
    green,
    linear_free,
    q_geometric,
    qpochhammer,
    spectrum,
)

__all__ = [
    "JspecError",
    "OperatorSpec",
    "bessel_compact",
    "bessel_j",
    "charfn",
    "detp_identity_residual",
    "eigenvector",
    "from_json",
    "green",
    "linear_free",
    "q_geometric",
    "qpochhammer",
    "spectrum",
]
