"""Pydantic request/response models for the HTTP service.

The CLI uses the same models, so wire format and terminal output stay in
lockstep.  Model parameters accept either T or beta, never both.
"""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field, model_validator

from ..model import ModelParams

CONVENTION_NOTE = (
    "u = exp(h); c = exp(2*J/T), d = exp(2*Jp/T); roots ascending; "
    "residual is |u - g(u)|/(1 + |u|)"
)


class ParamsIn(BaseModel):
    J: float
    Jp: float
    T: Optional[float] = None
    beta: Optional[float] = None
    k: int = 2

    @model_validator(mode="after")
    def _one_temperature(self):
        if (self.T is None) == (self.beta is None):
            raise ValueError("provide exactly one of T and beta")
        if self.beta is not None and self.beta <= 0:
            raise ValueError("beta must be positive")
        return self

    def to_params(self) -> ModelParams:
        temperature = self.T if self.T is not None else 1.0 / self.beta
        return ModelParams(J=self.J, Jp=self.Jp, T=temperature, k=self.k)


class ParamsOut(BaseModel):
    J: float
    Jp: float
    T: float
    beta: float
    k: int

    @classmethod
    def from_params(cls, p: ModelParams) -> "ParamsOut":
        return cls(J=p.J, Jp=p.Jp, T=p.T, beta=p.beta, k=p.k)


class RootOut(BaseModel):
    u: float
    h: float
    residual: float
    stability: str


class NonSymOut(BaseModel):
    x: float
    m: float
    t: float
    residual: float


class Prop51Out(BaseModel):
    prediction: Union[int, tuple[int, int], None]
    empirical: int
    agree: Optional[bool]


class SolveResponse(BaseModel):
    params: ParamsOut
    convention_note: str = CONVENTION_NOTE
    roots: list[RootOut] = Field(default_factory=list)
    nonsym: Optional[list[NonSymOut]] = None
    prop51: Optional[Prop51Out] = None


class VerifyRequest(ParamsIn):
    n: int = 2


class RootVerification(BaseModel):
    u: float
    h: float
    Z_n: float
    compat_max_error: float
    telescoping_gap: float
    sector_spread: float


class VerifyResponse(BaseModel):
    params: ParamsOut
    n: int
    reports: list[RootVerification]


class OracleRequest(ParamsIn):
    n: int = 2
    field: str = "zero"          # "zero" or "ti-root=<i>"


class OracleResponse(BaseModel):
    n: int
    Z_n: float
    compat_max_error: Optional[float]
    telescoping_gap: Optional[float]
    free_energy_paper: float
    free_energy_physics: float


class CurveRequest(ParamsIn):
    root: Optional[int] = None            # 1-based branch index
    h: Optional[float] = None             # explicit boundary value instead
    T_range: Optional[str] = None         # "a:b:steps"


class CurvePointOut(BaseModel):
    T: float
    beta: float
    h: float
    F: float
    S_numeric: float
    S_paper_formula: float


class BranchValue(BaseModel):
    root_index: int
    u: float
    h: float
    F: float
    S_numeric: float
    S_paper_formula: float


class ThermoResponse(BaseModel):
    params: ParamsOut
    branches: list[BranchValue] = Field(default_factory=list)
    curve: Optional[list[CurvePointOut]] = None
    curve_csv: Optional[str] = None


class AxisIn(BaseModel):
    name: str
    min: float
    max: float
    steps: int


class ScanRequest(BaseModel):
    axes: list[AxisIn]
    J: Optional[float] = None
    Jp: Optional[float] = None
    T: Optional[float] = None
    k: int = 2
    format: str = "csv"

    @model_validator(mode="after")
    def _fixed_or_swept(self):
        swept = {a.name for a in self.axes}
        for name in ("J", "Jp", "T"):
            if name not in swept and getattr(self, name) is None:
                raise ValueError(f"{name} needs either an axis or a fixed value")
        return self


class ScanResponse(BaseModel):
    points: int
    format: str
    body: str


class HealthResponse(BaseModel):
    status: str
    version: str
