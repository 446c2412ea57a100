from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


@dataclass(frozen=True)
class RunResult:
    """Final populations of one run plus what is needed to reproduce it.

    Single-population baselines store their population on both sides. The HV
    fields stay ``None`` until a harness scores the run.
    """

    problem: str
    m: int
    config: dict
    seed: int
    X_d: np.ndarray
    F_d: np.ndarray
    X_c: np.ndarray
    F_c: np.ndarray
    generations: int
    evaluations: int
    wall_time: float
    hv_d: float | None = None
    hv_c: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def hv_selected(self) -> float | None:
        if self.hv_d is None or self.hv_c is None:
            return None
        return max(self.hv_d, self.hv_c)

    @property
    def selected_population(self) -> str:
        return "c" if (self.hv_c or 0.0) >= (self.hv_d or 0.0) else "d"

    def with_hv(self, hv_d: float, hv_c: float) -> "RunResult":
        return replace(self, hv_d=float(hv_d), hv_c=float(hv_c))
