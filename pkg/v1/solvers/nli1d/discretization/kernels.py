"""
Piecewise-constant interface kernels.

γ(x, y) = c_pq · χ(|x − y| ≤ δ_p) where p is the side of x and q the side of y. The
diagonal blocks are fixed by the 1D scaling c_pp = (3/2)κ_p/δ_p³; the four families only
differ in the cross amplitudes c12 and c21.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from nli1d.shared_libraries.logging_config import get_logger
from nli1d.shared_libraries.types import DomainLayout, KernelConstants2D, KernelFamily, Material, Side
from nli1d.discretization.geometry import classify

logger = get_logger(__name__)


class Kernel(BaseModel):
    """Four-block kernel amplitudes with the horizons they are truncated at."""
    model_config = ConfigDict(frozen=True)

    family: Optional[KernelFamily] = Field(None, description="Family tag; None for hand-built kernels")
    c11: float = Field(gt=0)
    c12: float = Field(gt=0)
    c21: float = Field(gt=0)
    c22: float = Field(gt=0)
    delta1: float = Field(gt=0)
    delta2: float = Field(gt=0)
    layout: DomainLayout

    def amplitudes(self) -> np.ndarray:
        """2×2 table indexed [p − 1, q − 1]."""
        return np.array([[self.c11, self.c12], [self.c21, self.c22]])

    def horizons(self) -> np.ndarray:
        return np.array([self.delta1, self.delta2])

    def scaled(self, s: float) -> "Kernel":
        return self.model_copy(update={
            "c11": s * self.c11, "c12": s * self.c12, "c21": s * self.c21, "c22": s * self.c22,
        })


def _cross_amplitudes(family: KernelFamily, material: Material, delta1: float, delta2: float):
    k1, k2 = material.kappa1, material.kappa2
    d1, d2 = delta1 ** 3, delta2 ** 3
    if family == KernelFamily.K1:
        return 1.5 * k2 / d1, 1.5 * k1 / d2
    if family == KernelFamily.K2:
        return 1.5 * k1 / d1, 1.5 * k2 / d2
    if family == KernelFamily.K3:
        shared = 0.75 * (k1 / d1 + k2 / d2)
        return shared, shared
    if family == KernelFamily.K4:
        return 0.75 * (k1 + k2) / d1, 0.75 * (k1 + k2) / d2
    raise ValueError(f"unknown kernel family {family!r}")


def make_kernel(family: KernelFamily, material: Material, delta1: float, delta2: float,
                layout: DomainLayout) -> Kernel:
    """Kernel of the given family; horizons must match the layout's."""
    family = KernelFamily(family)
    c12, c21 = _cross_amplitudes(family, material, delta1, delta2)
    kernel = Kernel(
        family=family,
        c11=1.5 * material.kappa1 / delta1 ** 3,
        c12=c12,
        c21=c21,
        c22=1.5 * material.kappa2 / delta2 ** 3,
        delta1=delta1,
        delta2=delta2,
        layout=layout,
    )
    logger.debug(f"Kernel {family.value}: c11={kernel.c11!r} c12={c12!r} c21={c21!r} c22={kernel.c22!r}")
    return kernel


def single_material_kernel(kappa: float, delta: float, layout: DomainLayout) -> Kernel:
    """Kernel with one amplitude (3/2)κ/δ³ everywhere and no interface."""
    c = 1.5 * kappa / delta ** 3
    return Kernel(family=None, c11=c, c12=c, c21=c, c22=c, delta1=delta, delta2=delta, layout=layout)


def kernel_eval(kernel: Kernel, x: float, y: float,
                side_x: Optional[Side] = None, side_y: Optional[Side] = None) -> float:
    """
    γ(x, y). Sides are taken from the callers' element labels when given; otherwise
    the points are classified (x_Γ itself then needs an explicit side).
    """
    p = Side(side_x) if side_x is not None else classify(kernel.layout, x).side
    q = Side(side_y) if side_y is not None else classify(kernel.layout, y).side
    radius = kernel.delta1 if p == Side.LEFT else kernel.delta2
    if abs(x - y) > radius:
        return 0.0
    return float(kernel.amplitudes()[p - 1, q - 1])


def kernel_constants_2d(material: Material, delta1: float, delta2: float) -> KernelConstants2D:
    """Constants for which the 2D operator tends to κΔ (β = −4 makes the second moment vanish)."""
    return KernelConstants2D(
        c11_2d=4.0 * material.kappa1 / (math.pi * delta1 ** 4),
        c22_2d=4.0 * material.kappa2 / (math.pi * delta2 ** 4),
        ctilde12=4.0 * material.kappa2 / math.pi,
        ctilde21=4.0 * material.kappa1 / math.pi,
        beta=-4.0,
    )
