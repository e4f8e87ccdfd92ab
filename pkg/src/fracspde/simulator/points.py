"""Space-time points at which the solution is evaluated."""

import math
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from fracspde.errors import DomainError


class SpacetimePoint(BaseModel):
    """A point (t, x) with t > 0 and x in R^d."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(gt=0.0)
    x: Tuple[float, ...] = (0.0,)

    @field_validator("x", mode="before")
    @classmethod
    def _coerce_position(cls, value: Any) -> Tuple[float, ...]:
        if isinstance(value, (int, float)):
            return (float(value),)
        return tuple(float(c) for c in value)

    @property
    def dimension(self) -> int:
        return len(self.x)

    def distance(self, other: "SpacetimePoint") -> float:
        """Euclidean distance between the spatial parts."""
        if self.dimension != other.dimension:
            raise DomainError(f"points live in different dimensions ({self.dimension} and {other.dimension})")
        return math.dist(self.x, other.x)

    def to_dict(self) -> Dict[str, Any]:
        return {"t": self.t, "x": list(self.x)}


def time_grid(start: float, stop: float, count: int, x0: Union[float, Sequence[float]] = 0.0) -> List[SpacetimePoint]:
    """`count` equally spaced times in [start, stop] at the position x0."""
    if count < 1 or not 0.0 < start <= stop:
        raise DomainError(f"need count >= 1 and 0 < start <= stop, got {count}, [{start}, {stop}]")
    step = (stop - start) / (count - 1) if count > 1 else 0.0
    return [SpacetimePoint(t=start + i * step, x=x0) for i in range(count)]


def space_grid(t: float, start: float, stop: float, count: int) -> List[SpacetimePoint]:
    """`count` equally spaced positions in [start, stop] (d = 1) at time t."""
    if count < 1 or start > stop:
        raise DomainError(f"need count >= 1 and start <= stop, got {count}, [{start}, {stop}]")
    step = (stop - start) / (count - 1) if count > 1 else 0.0
    return [SpacetimePoint(t=t, x=start + i * step) for i in range(count)]
