"""Schemas of the JSON documents written by each command."""

import json
from typing import Any, Dict, List, Literal, Optional, Type

from pydantic import BaseModel, ConfigDict

from fracspde.errors import DomainError


class Provenance(BaseModel):
    model_config = ConfigDict(extra="allow")

    tool: Literal["fracspde"]
    version: str
    command: str
    params: Dict[str, Any]
    seed: Optional[int] = None


class Document(BaseModel):
    """Common base: every document starts with its provenance header."""

    model_config = ConfigDict(extra="forbid")

    provenance: Provenance


class ExponentsModel(BaseModel):
    rho0: float
    rho: float
    rho_tilde: float
    rho1: float
    rho2: float
    rho_tilde1: float
    rho_tilde2: float


class VerdictModel(BaseModel):
    status: Literal["Solvable", "NotSolvable", "SolvableSufficientOnly", "Unknown"]
    case_tag: str
    threshold: float
    boundary: bool


class TagsModel(BaseModel):
    slnd_time: Literal["two_sided", "one_sided", "none"]
    slnd_space: bool
    variance_lower_time_valid: bool
    temporal_upper_bound_valid: bool
    extra_assumption_needed: bool
    extra_assumption_holds: bool


class KResultModel(BaseModel):
    value: float
    method: Literal["closed_form", "quadrature"]
    case_tag: Optional[str]
    rho0: float
    fallback: bool


class FitModel(BaseModel):
    slope: float
    intercept: float
    r2: float


class CheckDocument(Document):
    exponents: ExponentsModel
    verdict: VerdictModel
    tags: TagsModel
    moduli_samples: Optional[Dict[str, Optional[List[float]]]] = None


class ExponentsDocument(Document):
    exponents: ExponentsModel


class KConstDocument(Document):
    closed: Optional[KResultModel]
    oracle: Optional[KResultModel]
    relative_difference: Optional[float]


class KernelRow(BaseModel):
    t: float
    r: float
    value: Optional[float]


class KernelEvalDocument(Document):
    rows: List[KernelRow]


class SeriesTermModel(BaseModel):
    exp: float
    logpow: int
    coef: float
    source: str


class ExpansionModel(BaseModel):
    regime: Literal["generic", "arithmetic"]
    terms: List[SeriesTermModel]
    collisions: List[List[int]]
    excluded_indices: Dict[str, List[int]]
    tolerance_based: bool
    search_bound: int
    search_complete: bool
    first_collision: Optional[List[int]] = None


class PartialSumRow(BaseModel):
    z: float
    partial_sum: float


class KernelExpandDocument(Document):
    expansion: ExpansionModel
    rows: List[PartialSumRow]


class AsymptoteModel(BaseModel):
    form: Literal["power_law", "stretched_exp", "oscillatory_exp"]
    constants: Dict[str, float]


class AsymptoteRow(BaseModel):
    r: float
    leading_term: float
    kernel: Optional[float] = None


class KernelAsymDocument(Document):
    asymptote: AsymptoteModel
    rows: List[AsymptoteRow]


class ProfileRow(BaseModel):
    z: float
    profile: float
    series: float


class KernelProfileDocument(Document):
    constants: Dict[str, float]
    rows: List[ProfileRow]


class IncrementRow(BaseModel):
    lag: float
    variance: float


class VarIncDocument(Document):
    axis: Literal["time", "space"]
    expected_slope: float
    rows: List[IncrementRow]
    fit: Optional[FitModel]


class PointModel(BaseModel):
    t: float
    x: List[float]


class SimulateDocument(Document):
    mode_count: int
    tau_max: float
    xi_max: float
    points: List[PointModel]
    values: List[List[float]]


class CondVarDocument(Document):
    kind: Literal["one_sided", "two_sided", "space"]
    exponent: float
    min_ratio: float
    ratios: List[float]
    distances: List[float]
    conditional_variances: List[float]
    floors: List[float]
    violations: List[int]


class SmallBallDocument(Document):
    axis: Literal["time", "space"]
    eps: List[float]
    prob: List[float]
    n_samples: int
    expected_exponent: float
    seed: int
    jitter: float
    fit: Optional[FitModel]


SCHEMAS: Dict[str, Type[Document]] = {
    "check": CheckDocument,
    "exponents": ExponentsDocument,
    "kconst": KConstDocument,
    "kernel-eval": KernelEvalDocument,
    "kernel-expand": KernelExpandDocument,
    "kernel-asym": KernelAsymDocument,
    "kernel-profile": KernelProfileDocument,
    "varinc": VarIncDocument,
    "simulate": SimulateDocument,
    "condvar": CondVarDocument,
    "smallball": SmallBallDocument,
}


def schema_for(command: str) -> Type[Document]:
    try:
        return SCHEMAS[command]
    except KeyError:
        raise DomainError(f"no schema for '{command}', expected one of {sorted(SCHEMAS)}") from None


def json_schema(command: str) -> str:
    """JSON Schema of a command's document, pretty-printed."""
    return json.dumps(schema_for(command).model_json_schema(), indent=2, sort_keys=True) + "\n"


def validate_document(command: str, document: Dict[str, Any]) -> Document:
    """
    Validate a (normalized) document against its command schema.

    Raises:
        pydantic.ValidationError: If the document does not match
    """
    return schema_for(command).model_validate(document)
