from __future__ import annotations

from dataclasses import asdict, dataclass, replace

ALGORITHMS = ("moea_ad", "moead_pbi", "moead_ipbi")
VARIANTS = ("full", "v1", "v2", "v3")


@dataclass(frozen=True)
class AlgorithmConfig:
    """Parameters of one run. ``p_m=None`` means ``1/n``; ``N=None`` takes the default weight-set size."""

    algorithm: str = "moea_ad"
    variant: str = "full"
    generations: int = 250
    seed: int = 0
    N: int | None = None
    T: int = 20
    delta: float = 0.9
    theta: float = 5.0
    alpha: float = 1e-6
    theta_ipbi: float = 0.1
    nr_c: int = 2
    p_c: float = 1.0
    eta_c: float = 30.0
    p_m: float | None = None
    eta_m: float = 20.0
    # Diagnostic switch: freeze the ideal/nadir estimates after initialization.
    update_references: bool = True

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")
        if self.nr_c < 1:
            raise ValueError("nr_c must be >= 1")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def mutation_probability(self, n: int) -> float:
        return 1.0 / n if self.p_m is None else self.p_m

    def with_(self, **changes) -> "AlgorithmConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def label(self) -> str:
        if self.algorithm == "moea_ad" and self.variant != "full":
            return f"moea_ad_{self.variant}"
        return self.algorithm
