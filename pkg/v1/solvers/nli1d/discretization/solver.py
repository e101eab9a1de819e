"""Banded Cholesky factorization and solves for symmetric positive definite systems."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_solve_banded, cholesky_banded

from nli1d.shared_libraries.error_handling import DimensionMismatchError, NotPositiveDefiniteError
from nli1d.shared_libraries.logging_config import get_logger, log_function_call
from nli1d.discretization.banded import BandedSymmetricMatrix

logger = get_logger(__name__)


@dataclass(frozen=True)
class BandedCholeskyFactor:
    """Lower banded factor L with A = L·Lᵀ, stored like the matrix it came from."""

    band: np.ndarray

    @property
    def dim(self) -> int:
        return self.band.shape[1]

    @property
    def half_bandwidth(self) -> int:
        return self.band.shape[0] - 1

    def to_dense(self) -> np.ndarray:
        n = self.dim
        dense = np.diag(self.band[0]).astype(float)
        for k in range(1, min(self.half_bandwidth, n - 1) + 1):
            dense += np.diag(self.band[k, : n - k], -k)
        return dense


@log_function_call()
def factor(A: BandedSymmetricMatrix) -> BandedCholeskyFactor:
    """Cholesky factor of A; NotPositiveDefiniteError when a pivot is not positive."""
    try:
        band = cholesky_banded(A.band, lower=True, check_finite=True)
    except LinAlgError as e:
        raise NotPositiveDefiniteError(f"banded Cholesky failed on a {A.dim}x{A.dim} matrix: {e}") from e
    except ValueError as e:
        raise NotPositiveDefiniteError(f"matrix contains non-finite entries: {e}") from e
    if np.any(band[0] <= 0.0):
        raise NotPositiveDefiniteError("factor has a non-positive diagonal entry")
    return BandedCholeskyFactor(band)


def solve(L: BandedCholeskyFactor, rhs: np.ndarray) -> np.ndarray:
    """Solve L·Lᵀ·u = rhs."""
    rhs = np.asarray(rhs, dtype=float)
    if rhs.ndim != 1 or rhs.shape[0] != L.dim:
        raise DimensionMismatchError(f"right-hand side of shape {rhs.shape} against factor of dimension {L.dim}")
    return cho_solve_banded((L.band, True), rhs, check_finite=False)
