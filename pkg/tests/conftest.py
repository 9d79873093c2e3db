"""Shared builders for tests: assessment inputs and randomized planner instances."""

from __future__ import annotations

import random

from ratqual.catalog import Characteristic
from ratqual.core import (
    AggregationWeights,
    AssessmentInput,
    CompatibilityMatrix,
    OperationalRates,
    OrgMaturity,
)
from ratqual.planner import ActionCostModel, BRUTE_FORCE_GUARD


def matrix_from_ones(ones: set[tuple[int, int]], strict: bool = True) -> CompatibilityMatrix:
    """Matrix with the given 1-based (row, col) cells set to 1."""
    cells = tuple(
        tuple(1.0 if (row, col) in ones else 0.0 for col in range(1, 7))
        for row in range(1, 5)
    )
    return CompatibilityMatrix(cells, strict=strict)


def make_input(
    levels: dict[str, int] | None = None,
    ones: set[tuple[int, int]] | None = None,
    rates: tuple[float, float, float] = (1.0, 1.0, 1.0),
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
    characteristic: Characteristic = Characteristic.INTEROPERABILITY,
) -> AssessmentInput:
    levels = levels if levels is not None else {"org-a": 3, "org-b": 4}
    return AssessmentInput(
        characteristic=characteristic,
        org_maturities=tuple(
            OrgMaturity(org_id, characteristic, level)
            for org_id, level in sorted(levels.items())
        ),
        matrix=matrix_from_ones(ones or set()),
        rates=OperationalRates(*rates),
        weights=AggregationWeights(*weights),
    )


ALL_CELLS = [(row, col) for row in range(1, 5) for col in range(1, 7)]


def lattice_size(state: AssessmentInput, costs: ActionCostModel) -> int:
    size = 1
    for entry in state.org_maturities:
        size *= 6 - entry.qmml
    dirty = sum(1 for row, col in ALL_CELLS if state.matrix.cell(row, col) > 0)
    size *= 2 ** dirty
    grid = costs.rate_grid()
    for current in (state.rates.ds, state.rates.qos, state.rates.ts):
        size *= 1 + sum(1 for value in grid if value > current)
    return size


def random_planner_instance(
    rng: random.Random,
) -> tuple[AssessmentInput, float, ActionCostModel]:
    """Desk-scale random instance kept inside the brute-force guard.

    At most 3 organizations, at most 8 incompatible cells, rate step 0.1,
    random positive costs.
    """
    while True:
        n_orgs = rng.randint(1, 3)
        levels = {f"org-{i}": rng.randint(2, 5) for i in range(n_orgs)}
        n_dirty = rng.randint(0, 8)
        ones = set(rng.sample(ALL_CELLS, n_dirty))
        rates = tuple(rng.uniform(0.5, 1.0) for _ in range(3))
        weights = rng.choice(
            [(1.0, 1.0, 1.0), tuple(rng.uniform(0.5, 2.0) for _ in range(3))]
        )
        costs = ActionCostModel(
            maturity_step_cost=rng.uniform(0.5, 5.0),
            cell_costs=tuple(
                tuple(rng.uniform(0.5, 5.0) for _ in range(6)) for _ in range(4)
            ),
            rate_unit_costs=tuple(rng.uniform(2.0, 20.0) for _ in range(3)),
            rate_step=0.1,
        )
        state = make_input(levels=levels, ones=ones, rates=rates, weights=weights)
        if lattice_size(state, costs) > BRUTE_FORCE_GUARD:
            continue
        from ratqual.core import assess
        from ratqual.planner import max_achievable

        current = assess(state).ratqual
        best = max_achievable(state, costs)
        if rng.random() < 0.25:
            target = rng.uniform(0.0, current)
        else:
            target = rng.uniform(current, best)
        return state, target, costs
