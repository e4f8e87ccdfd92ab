"""Parameter records shared by the special functions."""

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator

from fracspde.settings import DEFAULT_ABS_TOL, DEFAULT_MAX_TERMS, DEFAULT_REL_TOL


class MLParams(BaseModel):
    """Indices (a, b) of the Mittag-Leffler function E_{a,b}."""

    model_config = ConfigDict(frozen=True)

    a: PositiveFloat
    b: float


class EvalTolerance(BaseModel):
    """Accuracy target for series and quadrature evaluations."""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=DEFAULT_ABS_TOL, ge=0.0)
    rel_tol: float = Field(default=DEFAULT_REL_TOL, ge=0.0)
    max_terms: PositiveInt = DEFAULT_MAX_TERMS

    @model_validator(mode="after")
    def _check_positive_budget(self) -> "EvalTolerance":
        if self.abs_tol + self.rel_tol <= 0.0:
            raise ValueError("abs_tol + rel_tol must be positive")
        return self

    def accepts(self, error: float, value: float) -> bool:
        """Whether an error estimate meets the tolerance for a given value."""
        return error <= self.abs_tol + self.rel_tol * abs(value)


DEFAULT_TOLERANCE = EvalTolerance()
