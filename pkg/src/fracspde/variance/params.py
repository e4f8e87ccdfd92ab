"""Quadrature settings and cooperative cancellation for long integrals."""

import threading
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from fracspde.errors import CancelledError
from fracspde.settings import DEFAULT_MAX_PANELS, DEFAULT_QUAD_ABS_TOL, DEFAULT_QUAD_REL_TOL


class CancellationToken:
    """
    Flag shared between a caller and a running computation.

    Integrands poll the token; once it is set the next poll raises
    CancelledError and the quadrature unwinds.
    """

    def __init__(self):
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self) -> None:
        if self._event.is_set():
            raise CancelledError("computation cancelled")


class Method(str, Enum):
    """Evaluation route for quantities that have both a closed form and an oracle."""

    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class OscillationMode(str, Enum):
    """How finite oscillatory ranges are split before adaptive quadrature."""

    PANELS_BETWEEN_ZEROS = "panels_between_zeros"
    PLAIN_ADAPTIVE = "plain_adaptive"


class QuadratureSpec(BaseModel):
    """Accuracy and budget of the variance quadratures."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rel_tol: float = Field(default=DEFAULT_QUAD_REL_TOL, gt=0.0)
    abs_tol: float = Field(default=DEFAULT_QUAD_ABS_TOL, ge=0.0)
    max_panels: PositiveInt = DEFAULT_MAX_PANELS
    oscillation_mode: OscillationMode = OscillationMode.PANELS_BETWEEN_ZEROS
    cancel: Optional[CancellationToken] = Field(default=None, exclude=True)

    def check(self) -> None:
        """Raise CancelledError if the attached token has been set."""
        if self.cancel is not None:
            self.cancel.check()


DEFAULT_QUADRATURE = QuadratureSpec()
