"""Common data schema and types for the nonlocal interface solver."""

from enum import Enum, IntEnum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import constants

Quadratic = Tuple[float, float, float]


class Side(IntEnum):
    """Material side of a point: 1 for Γ₁ ∪ Ω₁, 2 for Ω₂ ∪ Γ₂."""
    LEFT = 1
    RIGHT = 2


class Region(str, Enum):
    """The four pieces of the global domain [a − δ₁, b + δ₂]."""
    GAMMA1 = "gamma1"
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"
    GAMMA2 = "gamma2"

    @property
    def side(self) -> Side:
        return Side.LEFT if self in (Region.GAMMA1, Region.OMEGA1) else Side.RIGHT

    @property
    def constrained(self) -> bool:
        return self in (Region.GAMMA1, Region.GAMMA2)


class KernelFamily(str, Enum):
    """Interface kernel families, differing in the cross amplitudes c12 and c21."""
    K1 = "k1"
    K2 = "k2"
    K3 = "k3"
    K4 = "k4"


class StudyKind(str, Enum):
    """Convergence studies exposed on the command line."""
    DELTA = "delta"
    H = "h"
    JUMP_H = "jump-h"
    JUMP_DELTA = "jump-delta"
    OPERATOR_LIMIT = "operator-limit"


class JumpMode(str, Enum):
    """Parameter held fixed by a jump study."""
    FIXED_DELTA_VARY_H = "fixed_delta_vary_h"
    FIXED_H_VARY_DELTA = "fixed_h_vary_delta"


class VerifyTarget(str, Enum):
    """Built-in verification runs."""
    GREEN = "green"
    OPERATOR_1D = "operator-1d"
    OPERATOR_2D = "operator-2d"
    LOCAL_FEM = "local-fem"
    ALL = "all"


class Material(BaseModel):
    """Constant diffusivities of the two subdomains."""
    model_config = ConfigDict(frozen=True)

    kappa1: float = Field(gt=0, description="Diffusivity of Ω₁")
    kappa2: float = Field(gt=0, description="Diffusivity of Ω₂")

    def kappa(self, side: int) -> float:
        return self.kappa1 if side == Side.LEFT else self.kappa2


class DomainLayout(BaseModel):
    """Γ₁ = [a − δ₁, a], Ω₁ = (a, x_Γ), Ω₂ = (x_Γ, b), Γ₂ = [b, b + δ₂]."""
    model_config = ConfigDict(frozen=True)

    a: float = Field(description="Left end of Ω₁")
    x_gamma: float = Field(description="Interface coordinate")
    b: float = Field(description="Right end of Ω₂")
    delta1: float = Field(gt=0, description="Horizon of side 1")
    delta2: float = Field(gt=0, description="Horizon of side 2")

    @model_validator(mode="after")
    def _check_order(self) -> "DomainLayout":
        if not self.a < self.x_gamma < self.b:
            raise ValueError(f"layout requires a < x_gamma < b, got a={self.a}, x_gamma={self.x_gamma}, b={self.b}")
        return self

    @property
    def left_end(self) -> float:
        return self.a - self.delta1

    @property
    def right_end(self) -> float:
        return self.b + self.delta2

    @property
    def max_delta(self) -> float:
        return max(self.delta1, self.delta2)

    def delta(self, side: int) -> float:
        return self.delta1 if side == Side.LEFT else self.delta2


class Interval(BaseModel):
    """Open interval (lo, hi); empty when hi <= lo."""
    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float

    @property
    def length(self) -> float:
        return max(self.hi - self.lo, 0.0)

    @property
    def is_empty(self) -> bool:
        return self.hi <= self.lo

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def issubset(self, other: "Interval") -> bool:
        return self.is_empty or (other.lo <= self.lo and self.hi <= other.hi)


class RegionSet(BaseModel):
    """Interaction regions next to the interface, each clipped to its host subdomain."""
    model_config = ConfigDict(frozen=True)

    gamma12: Interval = Field(description="Part of Ω₂ seen by Ω₁ (within δ₁ of x_Γ)")
    gamma21: Interval = Field(description="Part of Ω₁ seen by Ω₂ (within δ₂ of x_Γ)")
    under_gamma12: Interval = Field(description="Part of Ω₂ within δ₂ of x_Γ")
    under_gamma21: Interval = Field(description="Part of Ω₁ within δ₁ of x_Γ")
    gamma_star: Interval = Field(description="Symmetric band around x_Γ of half-width max(δ₁, δ₂)")

    def label(self, x: float) -> str:
        """Equation that governs x in the strong form: 'interface' near x_Γ, 'domain' elsewhere."""
        if self.under_gamma21.contains(x) or self.under_gamma12.contains(x):
            return "interface"
        return "domain"


class SourceTerm(BaseModel):
    """Per-side constant source f."""
    model_config = ConfigDict(frozen=True)

    f1: float = Field(description="Source on Ω₁")
    f2: float = Field(description="Source on Ω₂")

    @classmethod
    def constant(cls, f: float) -> "SourceTerm":
        return cls(f1=f, f2=f)

    def value(self, side: int) -> float:
        return self.f1 if side == Side.LEFT else self.f2

    def scaled(self, s: float) -> "SourceTerm":
        return SourceTerm(f1=s * self.f1, f2=s * self.f2)


class ConstraintData(BaseModel):
    """Volume-constraint data: g1 on Γ₁ and g2 on Γ₂, each c₀ + c₁x + c₂x²."""
    model_config = ConfigDict(frozen=True)

    g1: Quadratic
    g2: Quadratic

    @classmethod
    def constant(cls, c: float) -> "ConstraintData":
        return cls(g1=(c, 0.0, 0.0), g2=(c, 0.0, 0.0))

    @staticmethod
    def evaluate(coefficients: Quadratic, x):
        c0, c1, c2 = coefficients
        return c0 + (c1 + c2 * x) * x


class KernelConstants2D(BaseModel):
    """Kernel constants that make the 2D nonlocal operator converge to κΔ."""
    model_config = ConfigDict(frozen=True)

    c11_2d: float = Field(gt=0)
    c22_2d: float = Field(gt=0)
    ctilde12: float = Field(gt=0)
    ctilde21: float = Field(gt=0)
    beta: float = -4.0


class RunConfig(BaseModel):
    """Everything needed to solve one nonlocal interface problem, flat as stored in JSON."""
    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    kappa1: float = Field(constants.DEFAULT_KAPPA1, gt=0)
    kappa2: float = Field(constants.DEFAULT_KAPPA2, gt=0)
    delta1: float = Field(constants.DEFAULT_DELTA1, gt=0)
    delta2: float = Field(constants.DEFAULT_DELTA2, gt=0)
    h: float = Field(constants.DEFAULT_H, gt=0)
    h_fine: float = Field(constants.DEFAULT_H_FINE, gt=0, description="Reference mesh size of h-studies")
    kernel: KernelFamily = KernelFamily(constants.DEFAULT_KERNEL)
    f: float = constants.DEFAULT_SOURCE
    g1: Quadratic = constants.DEFAULT_G1
    g2: Quadratic = constants.DEFAULT_G2
    a: float = constants.DEFAULT_A
    x_gamma: float = constants.DEFAULT_X_GAMMA
    b: float = constants.DEFAULT_B

    @model_validator(mode="after")
    def _check_domain(self) -> "RunConfig":
        if not self.a < self.x_gamma < self.b:
            raise ValueError(f"domain requires a < x_gamma < b, got a={self.a}, x_gamma={self.x_gamma}, b={self.b}")
        return self

    def layout(self) -> DomainLayout:
        return DomainLayout(a=self.a, x_gamma=self.x_gamma, b=self.b, delta1=self.delta1, delta2=self.delta2)

    def material(self) -> Material:
        return Material(kappa1=self.kappa1, kappa2=self.kappa2)

    def source(self) -> SourceTerm:
        return SourceTerm.constant(self.f)

    def constraints(self) -> ConstraintData:
        return ConstraintData(g1=self.g1, g2=self.g2)


class StudyRow(BaseModel):
    """One row of a convergence table."""
    param1: float = Field(description="δ₁ for horizon sweeps, h for mesh sweeps, δ for operator sweeps")
    param2: Optional[float] = Field(None, description="δ₂ for horizon sweeps")
    quantity: Optional[float] = Field(None, ge=0, description="L² error or jump magnitude; None if the row failed")
    order: Optional[float] = Field(None, description="log₂ of the previous quantity over this one")
    error: Optional[Dict[str, Any]] = Field(None, description="Error response of a failed row")


class StudyReport(BaseModel):
    """Ordered rows of a study plus the configuration that produced them."""
    kind: StudyKind
    kernel: Optional[KernelFamily] = None
    config: Dict[str, Any] = Field(default_factory=dict, description="Snapshot of the run configuration")
    fixed: Dict[str, float] = Field(default_factory=dict, description="Parameters held fixed by the sweep")
    rows: List[StudyRow] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_row_order(self) -> "StudyReport":
        params = [row.param1 for row in self.rows]
        if any(later >= earlier for earlier, later in zip(params, params[1:])):
            raise ValueError("study rows must be ordered by strictly decreasing parameter")
        return self

    @property
    def quantities(self) -> List[Optional[float]]:
        return [row.quantity for row in self.rows]

    @property
    def orders(self) -> List[Optional[float]]:
        return [row.order for row in self.rows]


class VerificationResult(BaseModel):
    """Outcome of one built-in verification check."""
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""
