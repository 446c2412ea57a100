"""Generation budgets per problem family and objective count (minus versions share their plain row)."""

from __future__ import annotations

_OBJECTIVES = (3, 5, 8, 10, 15)
_ROWS = {
    "dtlz1": (400, 600, 750, 1000, 1500),
    "dtlz2": (250, 350, 500, 750, 1000),
    "dtlz3": (1000, 1000, 1000, 1500, 2000),
    "dtlz4": (600, 1000, 1250, 2000, 3000),
    "wfg": (400, 750, 1500, 2000, 3000),
}
BUDGETS = {(row, m): g for row, gens in _ROWS.items() for m, g in zip(_OBJECTIVES, gens)}


def resolve_generations(problem: str, m: int) -> int:
    base = problem.lower().removeprefix("minus-")
    row = "wfg" if base.startswith("wfg") and base[3:].isdigit() and 1 <= int(base[3:]) <= 9 else base
    try:
        return BUDGETS[(row, int(m))]
    except KeyError:
        raise ValueError(f"no generation budget for {problem!r} with m={m}; pass generations explicitly") from None
