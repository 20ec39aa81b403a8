"""Run-wide tuning knobs shared by the library pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

SMOOTH_MEAN = "mean"
SMOOTH_EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class RunConfig:
    """Pipeline configuration.

    alpha          period validation strictness in (0, 1)
    max_order      largest candidate trend order
    smooth_radius  window radius; None picks max(1, round(l/8)) per series
    smooth_kind    "mean" or "exponential"
    exp_alpha      center weight for exponential smoothing
    channel_filter channels to process; None means all
    rng_seed       seed for synthetic data helpers
    """

    alpha: float = 0.8
    max_order: int = 30
    smooth_radius: int | None = None
    smooth_kind: str = SMOOTH_MEAN
    exp_alpha: float = 0.5
    channel_filter: list[str] | None = field(default=None)
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        if self.smooth_radius is not None and self.smooth_radius < 0:
            raise ValueError(f"smooth_radius must be >= 0, got {self.smooth_radius}")
        if self.smooth_kind not in (SMOOTH_MEAN, SMOOTH_EXPONENTIAL):
            raise ValueError(f"unknown smooth_kind {self.smooth_kind!r}")
        if not 0.0 < self.exp_alpha <= 1.0:
            raise ValueError(f"exp_alpha must lie in (0, 1], got {self.exp_alpha}")
