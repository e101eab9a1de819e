"""Symmetric banded matrices in LAPACK lower-band storage: band[i − j, j] = A_ij, 0 <= i − j <= u."""

from dataclasses import dataclass

import numpy as np

from nli1d.shared_libraries.error_handling import DimensionMismatchError


@dataclass(frozen=True)
class BandedSymmetricMatrix:
    """Symmetric matrix of half-bandwidth u; only the lower band is stored, reads are mirrored."""

    band: np.ndarray  # shape (u + 1, dim)

    @property
    def dim(self) -> int:
        return self.band.shape[1]

    @property
    def half_bandwidth(self) -> int:
        return self.band.shape[0] - 1

    def entry(self, i: int, j: int) -> float:
        if i < j:
            i, j = j, i
        if i - j > self.half_bandwidth:
            return 0.0
        return float(self.band[i - j, j])

    def diagonal(self) -> np.ndarray:
        return self.band[0].copy()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(f"vector of shape {x.shape} against matrix of dimension {self.dim}")
        y = self.band[0] * x
        for k in range(1, min(self.half_bandwidth, self.dim - 1) + 1):
            sub = self.band[k, : self.dim - k]
            y[k:] += sub * x[: self.dim - k]
            y[: self.dim - k] += sub * x[k:]
        return y

    def absolute(self) -> "BandedSymmetricMatrix":
        return BandedSymmetricMatrix(np.abs(self.band))

    def norm_inf(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.max(self.absolute().matvec(np.ones(self.dim))))

    def to_dense(self) -> np.ndarray:
        n = self.dim
        dense = np.diag(self.band[0]).astype(float)
        for k in range(1, min(self.half_bandwidth, n - 1) + 1):
            sub = self.band[k, : n - k]
            dense += np.diag(sub, -k) + np.diag(sub, k)
        return dense

    def principal_block(self, start: int, stop: int) -> "BandedSymmetricMatrix":
        """Rows and columns start .. stop − 1."""
        band = self.band[:, start:stop].copy()
        size = stop - start
        for k in range(1, self.half_bandwidth + 1):
            band[k, max(size - k, 0):] = 0.0
        return BandedSymmetricMatrix(band)

    @classmethod
    def from_dense(cls, dense: np.ndarray, half_bandwidth: int) -> "BandedSymmetricMatrix":
        dense = np.asarray(dense, dtype=float)
        n = dense.shape[0]
        band = np.zeros((half_bandwidth + 1, n))
        for k in range(min(half_bandwidth, n - 1) + 1):
            band[k, : n - k] = np.diagonal(dense, -k)
        return cls(band)

    @classmethod
    def identity(cls, n: int, half_bandwidth: int = 0) -> "BandedSymmetricMatrix":
        band = np.zeros((half_bandwidth + 1, n))
        band[0] = 1.0
        return cls(band)
