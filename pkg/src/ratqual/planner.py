"""Minimum-cost improvement planning toward a target quality ratio.

Given an as-is assessment state and a target ratio, the planner searches the
discretized lever lattice (per-organization maturity raises, barrier-cell
fixes, rate improvements on a step grid) for the cheapest action set whose
projected ratio reaches the target.

Two searchers share one lattice definition, one cost fold, and one candidate
comparator, but explore it differently:

* :func:`plan` prunes: maturity raises are only ever uniform lifts of the
  level floor (raising a non-minimum organization is strictly dominated),
  cell subsets are reduced to a dominance frontier, and pairs whose partial
  cost already exceeds the incumbent are cut.
* :func:`brute_force_plan` enumerates every lattice point behind a hard
  size guard and exists to cross-check the pruned search.

Candidates are ranked by (total cost, action count, canonical action keys);
both searchers fold costs over the canonically sorted action list so equal
action sets always produce bit-equal totals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence, Union

from ratqual.core import (
    AssessmentInput,
    AssessmentResult,
    CompatibilityMatrix,
    MATRIX_COLUMN_LABELS,
    MATRIX_ROW_LABELS,
    OperationalRates,
    OrgMaturity,
    assess,
    compatibility_degree,
    operational_performance,
    potentiality_of_org,
    validate_maturity_level,
)
from ratqual.errors import (
    FormatError,
    InfeasibleError,
    SearchSpaceError,
    ValidationError,
)

BRUTE_FORCE_GUARD = 2 ** 20


class RateKind(str, Enum):
    DS = "DS"
    QOS = "QoS"
    TS = "TS"


_RATE_ORDER: dict[RateKind, int] = {RateKind.DS: 0, RateKind.QOS: 1, RateKind.TS: 2}


@dataclass(frozen=True)
class RaiseMaturity:
    """Lift one organization's maturity to a strictly higher level."""

    org_id: str
    to_level: int


@dataclass(frozen=True)
class FixCompatibilityCell:
    """Clear one barrier cell (1-based row 1..4, column 1..6) to 0."""

    row: int
    col: int


@dataclass(frozen=True)
class ImproveRate:
    """Raise one operational rate to a higher grid value."""

    which: RateKind
    to_value: float


ImprovementAction = Union[RaiseMaturity, FixCompatibilityCell, ImproveRate]


def action_key(action: ImprovementAction) -> tuple:
    """Canonical ordering key: maturity raises, then cell fixes, then rates."""
    if isinstance(action, RaiseMaturity):
        return (0, action.org_id, action.to_level)
    if isinstance(action, FixCompatibilityCell):
        return (1, action.row, action.col)
    if isinstance(action, ImproveRate):
        return (2, _RATE_ORDER[action.which], action.to_value)
    raise ValidationError(f"unknown improvement action {action!r}")


def describe_action(action: ImprovementAction) -> str:
    if isinstance(action, RaiseMaturity):
        return f"RaiseMaturity({action.org_id!r}, to_level={action.to_level})"
    if isinstance(action, FixCompatibilityCell):
        row = MATRIX_ROW_LABELS[action.row - 1]
        col = MATRIX_COLUMN_LABELS[action.col - 1]
        return f"FixCompatibilityCell({row}, {col})"
    return f"ImproveRate({action.which.value}, to_value={action.to_value})"


def _default_cell_costs() -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(1.0 for _ in range(6)) for _ in range(4))


@dataclass(frozen=True)
class ActionCostModel:
    """Monetary-unit costs for each lever plus the rate discretization step."""

    maturity_step_cost: float = 1.0
    cell_costs: tuple[tuple[float, ...], ...] = field(default_factory=_default_cell_costs)
    rate_unit_costs: tuple[float, float, float] = (10.0, 10.0, 10.0)
    rate_step: float = 0.05

    def __post_init__(self) -> None:
        if not (isinstance(self.maturity_step_cost, (int, float)) and self.maturity_step_cost > 0):
            raise ValidationError("costs.maturity_step_cost: must be a positive number")
        cells = tuple(tuple(float(c) for c in row) for row in self.cell_costs)
        if len(cells) != 4 or any(len(row) != 6 for row in cells):
            raise ValidationError("costs.cell_costs: expected a 4x6 grid")
        for i, row in enumerate(cells, start=1):
            for j, cost in enumerate(row, start=1):
                if not cost > 0:
                    raise ValidationError(
                        f"costs.cell_costs[{i}][{j}]: must be a positive number"
                    )
        object.__setattr__(self, "cell_costs", cells)
        units = tuple(float(u) for u in self.rate_unit_costs)
        if len(units) != 3 or any(not u > 0 for u in units):
            raise ValidationError("costs.rate_unit_costs: expected three positive numbers")
        object.__setattr__(self, "rate_unit_costs", units)
        step = self.rate_step
        if not (isinstance(step, (int, float)) and 0 < step <= 1):
            raise ValidationError("costs.rate_step: must lie within (0, 1]")
        divisions = round(1.0 / step)
        if divisions < 1 or abs(divisions * step - 1.0) > 1e-9:
            raise ValidationError("costs.rate_step: must divide 1 evenly")
        object.__setattr__(self, "rate_step", float(step))

    @property
    def grid_divisions(self) -> int:
        return round(1.0 / self.rate_step)

    def rate_grid(self) -> tuple[float, ...]:
        """Reachable rate values: i / divisions, exact at the endpoints."""
        n = self.grid_divisions
        return tuple(i / n for i in range(1, n + 1))

    def cell_cost(self, row: int, col: int) -> float:
        return self.cell_costs[row - 1][col - 1]

    def rate_unit_cost(self, which: RateKind) -> float:
        return self.rate_unit_costs[_RATE_ORDER[which]]


@dataclass(frozen=True)
class Scenario:
    """A costed action set whose projected ratio satisfies its target."""

    actions: tuple[ImprovementAction, ...]
    total_cost: float
    projected: AssessmentResult
    target: float
    baseline: AssessmentResult
    state: AssessmentInput


def _current_rate(state: AssessmentInput, which: RateKind) -> float:
    if which is RateKind.DS:
        return state.rates.ds
    if which is RateKind.QOS:
        return state.rates.qos
    return state.rates.ts


def action_cost(action: ImprovementAction, state: AssessmentInput, costs: ActionCostModel) -> float:
    if isinstance(action, RaiseMaturity):
        return (action.to_level - state.maturity_of(action.org_id)) * costs.maturity_step_cost
    if isinstance(action, FixCompatibilityCell):
        return costs.cell_cost(action.row, action.col)
    if isinstance(action, ImproveRate):
        return (action.to_value - _current_rate(state, action.which)) * costs.rate_unit_cost(
            action.which
        )
    raise ValidationError(f"unknown improvement action {action!r}")


def _fold_cost(
    state: AssessmentInput,
    costs: ActionCostModel,
    actions: Iterable[ImprovementAction],
    start: float = 0.0,
) -> float:
    """Sequential cost accumulation; the single source of candidate totals."""
    total = start
    for action in actions:
        total += action_cost(action, state, costs)
    return total


def scenario_cost(
    state: AssessmentInput, costs: ActionCostModel, actions: Sequence[ImprovementAction]
) -> float:
    return _fold_cost(state, costs, sorted(actions, key=action_key))


def _validate_actions(
    state: AssessmentInput, actions: Sequence[ImprovementAction]
) -> None:
    seen_levers: set[tuple] = set()
    for action in actions:
        if isinstance(action, RaiseMaturity):
            lever = ("maturity", action.org_id)
            current = state.maturity_of(action.org_id)
            validate_maturity_level(action.to_level, f"{describe_action(action)}.to_level")
            if action.to_level <= current:
                raise ValidationError(
                    f"{describe_action(action)}: to_level must exceed the current level {current}"
                )
        elif isinstance(action, FixCompatibilityCell):
            if action.row not in (1, 2, 3, 4) or action.col not in (1, 2, 3, 4, 5, 6):
                raise ValidationError(
                    f"{describe_action(action)}: row must be 1..4 and col 1..6"
                )
            lever = ("cell", action.row, action.col)
            if not state.matrix.cell(action.row, action.col) > 0:
                raise ValidationError(
                    f"{describe_action(action)}: targets a cell that is already compatible"
                )
        elif isinstance(action, ImproveRate):
            lever = ("rate", action.which)
            current = _current_rate(state, action.which)
            if not isinstance(action.to_value, (int, float)) or not 0 <= action.to_value <= 1:
                raise ValidationError(
                    f"{describe_action(action)}: to_value must lie within [0, 1]"
                )
            if not action.to_value > current:
                raise ValidationError(
                    f"{describe_action(action)}: to_value must exceed the current rate {current!r}"
                )
        else:
            raise ValidationError(f"unknown improvement action {action!r}")
        if lever in seen_levers:
            raise ValidationError(
                f"{describe_action(action)}: conflicts with another action on the same lever"
            )
        seen_levers.add(lever)


def apply_actions(
    state: AssessmentInput, actions: Sequence[ImprovementAction]
) -> AssessmentInput:
    """Validated copy of the state with all actions applied."""
    _validate_actions(state, actions)
    levels = {entry.org_id: entry.qmml for entry in state.org_maturities}
    matrix = state.matrix
    rates = {"ds": state.rates.ds, "qos": state.rates.qos, "ts": state.rates.ts}
    rate_field = {RateKind.DS: "ds", RateKind.QOS: "qos", RateKind.TS: "ts"}
    for action in actions:
        if isinstance(action, RaiseMaturity):
            levels[action.org_id] = action.to_level
        elif isinstance(action, FixCompatibilityCell):
            matrix = matrix.with_cell(action.row, action.col, 0.0)
        else:
            rates[rate_field[action.which]] = action.to_value
    return AssessmentInput(
        characteristic=state.characteristic,
        org_maturities=tuple(
            OrgMaturity(
                org_id=entry.org_id,
                characteristic=state.characteristic,
                qmml=levels[entry.org_id],
            )
            for entry in state.org_maturities
        ),
        matrix=matrix,
        rates=OperationalRates(ds=rates["ds"], qos=rates["qos"], ts=rates["ts"]),
        weights=state.weights,
    )


def project(
    state: AssessmentInput, actions: Sequence[ImprovementAction]
) -> AssessmentResult:
    """Re-assess a copy of the state after applying the actions."""
    return assess(apply_actions(state, actions))


# --- lattice definition (shared by both searchers) ---------------------------

def _sorted_org_levels(state: AssessmentInput) -> list[tuple[str, int]]:
    return sorted((entry.org_id, entry.qmml) for entry in state.org_maturities)


def _dirty_cells(state: AssessmentInput) -> list[tuple[int, int, float]]:
    cells = []
    for row in range(1, 5):
        for col in range(1, 7):
            value = state.matrix.cell(row, col)
            if value > 0:
                cells.append((row, col, value))
    return cells


def _rate_option_lists(
    state: AssessmentInput, costs: ActionCostModel
) -> list[list[ImproveRate | None]]:
    """Per-rate choices: keep (None) or raise to a higher grid value."""
    grid = costs.rate_grid()
    options: list[list[ImproveRate | None]] = []
    for kind in (RateKind.DS, RateKind.QOS, RateKind.TS):
        current = _current_rate(state, kind)
        choices: list[ImproveRate | None] = [None]
        choices.extend(ImproveRate(kind, value) for value in grid if value > current)
        options.append(choices)
    return options


def _matrix_after_fix(matrix: CompatibilityMatrix, fixed: Iterable[tuple[int, int]]) -> CompatibilityMatrix:
    result = matrix
    for row, col in fixed:
        result = result.with_cell(row, col, 0.0)
    return result


def _rates_after(state: AssessmentInput, combo: Sequence[ImproveRate]) -> OperationalRates:
    values = {"ds": state.rates.ds, "qos": state.rates.qos, "ts": state.rates.ts}
    for action in combo:
        if action.which is RateKind.DS:
            values["ds"] = action.to_value
        elif action.which is RateKind.QOS:
            values["qos"] = action.to_value
        else:
            values["ts"] = action.to_value
    return OperationalRates(**values)


def max_achievable(state: AssessmentInput, costs: ActionCostModel) -> float:
    """Ratio when every lever sits at its lattice maximum."""
    qp = potentiality_of_org(5)
    dc = compatibility_degree(_matrix_after_fix(state.matrix, [(r, c) for r, c, _ in _dirty_cells(state)]))
    top = costs.rate_grid()[-1]
    po = operational_performance(
        OperationalRates(
            ds=max(state.rates.ds, top),
            qos=max(state.rates.qos, top),
            ts=max(state.rates.ts, top),
        )
    )
    w = state.weights
    return (w.w1 * qp + w.w2 * dc + w.w3 * po) / (w.w1 + w.w2 + w.w3)


def _validate_target(target: object) -> float:
    if isinstance(target, bool) or not isinstance(target, (int, float)):
        raise ValidationError(f"target: expected a number, got {target!r}")
    target = float(target)
    if not 0.0 <= target <= 1.0:
        raise ValidationError(f"target: must lie within [0, 1], got {target!r}")
    return target


_EMPTY: tuple = ()


def _empty_scenario(
    state: AssessmentInput, target: float, baseline: AssessmentResult
) -> Scenario:
    return Scenario(
        actions=_EMPTY,
        total_cost=0.0,
        projected=baseline,
        target=target,
        baseline=baseline,
        state=state,
    )


def _infeasible(state: AssessmentInput, costs: ActionCostModel, target: float) -> InfeasibleError:
    best = max_achievable(state, costs)
    return InfeasibleError(
        f"target {target!r} is unreachable; the maximum achievable ratio with "
        f"every lever at its lattice maximum is {best!r}",
        max_achievable=best,
    )


@dataclass(frozen=True)
class _CellOption:
    """One frontier entry in the cell-fix dimension."""

    actions: tuple[FixCompatibilityCell, ...]
    cost: float
    dc: float


def _cell_options(state: AssessmentInput, costs: ActionCostModel) -> list[_CellOption]:
    """Dominance frontier over subsets of dirty cells.

    An option is dropped when another fixes at least as much incompatibility
    for no more cost, no more actions, and a canonically smaller action list,
    so pruning can never discard a tie-break winner.
    """
    base = _CellOption(actions=(), cost=0.0, dc=compatibility_degree(state.matrix))
    frontier: list[_CellOption] = [base]
    for row, col, _value in _dirty_cells(state):
        action = FixCompatibilityCell(row, col)
        extended = [
            _CellOption(
                actions=option.actions + (action,),
                cost=option.cost + action_cost(action, state, costs),
                dc=compatibility_degree(
                    _matrix_after_fix(state.matrix, [(a.row, a.col) for a in option.actions] + [(row, col)])
                ),
            )
            for option in frontier
        ]
        merged = frontier + extended
        keep: list[_CellOption] = []
        for candidate in merged:
            dominated = False
            for other in merged:
                if other is candidate:
                    continue
                if (
                    other.dc >= candidate.dc
                    and other.cost <= candidate.cost
                    and len(other.actions) <= len(candidate.actions)
                    and tuple(map(action_key, other.actions))
                    <= tuple(map(action_key, candidate.actions))
                    and (
                        other.dc > candidate.dc
                        or other.cost < candidate.cost
                        or len(other.actions) < len(candidate.actions)
                        or tuple(map(action_key, other.actions))
                        < tuple(map(action_key, candidate.actions))
                    )
                ):
                    dominated = True
                    break
            if not dominated:
                keep.append(candidate)
        frontier = keep
    return frontier


def _maturity_options(
    state: AssessmentInput, costs: ActionCostModel
) -> list[tuple[tuple[RaiseMaturity, ...], float, float]]:
    """Uniform floor-lift options: raise every organization below L up to L.

    Raising any organization above the resulting floor costs strictly more
    without changing the potentiality minimum, so only these configurations
    can be optimal.
    """
    levels = _sorted_org_levels(state)
    floor = min(level for _org, level in levels)
    options = []
    for target_level in range(floor, 6):
        actions = tuple(
            RaiseMaturity(org_id, target_level)
            for org_id, level in levels
            if level < target_level
        )
        cost = _fold_cost(state, costs, actions)
        options.append((actions, cost, potentiality_of_org(target_level)))
    return options


class _Incumbent:
    """Best candidate so far under (total cost, action count, canonical keys).

    Keys are compared lazily: only candidates tied on cost and count pay for
    building their key tuples.
    """

    __slots__ = ("cost", "count", "actions", "_keys")

    def __init__(self) -> None:
        self.cost: float | None = None
        self.count = 0
        self.actions: tuple[ImprovementAction, ...] | None = None
        self._keys: tuple | None = None

    def keys(self) -> tuple:
        if self._keys is None:
            self._keys = tuple(map(action_key, self.actions or ()))
        return self._keys

    def offer(self, actions: tuple[ImprovementAction, ...], total: float) -> None:
        if self.cost is None or total < self.cost:
            better = True
        elif total > self.cost:
            better = False
        elif len(actions) != self.count:
            better = len(actions) < self.count
        else:
            better = tuple(map(action_key, actions)) < self.keys()
        if better:
            self.cost = total
            self.count = len(actions)
            self.actions = actions
            self._keys = None


def _rate_combo_table(
    state: AssessmentInput, costs: ActionCostModel
) -> list[tuple[tuple[ImproveRate, ...], float, tuple[float, ...]]]:
    """All rate-grid combinations with their performance and per-action costs."""
    table = []
    for chosen in itertools.product(*_rate_option_lists(state, costs)):
        combo = tuple(action for action in chosen if action is not None)
        po = operational_performance(_rates_after(state, combo))
        step_costs = tuple(action_cost(action, state, costs) for action in combo)
        table.append((combo, po, step_costs))
    return table


def plan(
    state: AssessmentInput,
    target: float,
    costs: ActionCostModel | None = None,
) -> Scenario:
    """Cheapest action set whose projected ratio reaches the target.

    Exact on the whole lattice, including the (fewer actions, then canonical
    action order) tie-break; verified against :func:`brute_force_plan`.
    """
    costs = costs if costs is not None else ActionCostModel()
    target = _validate_target(target)
    baseline = assess(state)
    if baseline.ratqual >= target:
        return _empty_scenario(state, target, baseline)
    if max_achievable(state, costs) < target:
        raise _infeasible(state, costs, target)

    w = state.weights
    weight_sum = w.w1 + w.w2 + w.w3

    rate_combos = _rate_combo_table(state, costs)
    max_po = max(po for _combo, po, _steps in rate_combos)
    w3 = w.w3
    cell_frontier = _cell_options(state, costs)

    best = _Incumbent()

    for maturity_actions, maturity_cost, qp in _maturity_options(state, costs):
        if best.cost is not None and maturity_cost > best.cost:
            continue
        partial_num = w.w1 * qp
        for cell_option in cell_frontier:
            prefix = maturity_actions + cell_option.actions
            prefix_cost = _fold_cost(state, costs, cell_option.actions, start=maturity_cost)
            if best.cost is not None and prefix_cost > best.cost:
                continue
            pair_num = partial_num + w.w2 * cell_option.dc
            if (pair_num + w3 * max_po) / weight_sum < target:
                continue
            for combo, po, step_costs in rate_combos:
                if (pair_num + w3 * po) / weight_sum < target:
                    continue
                total = prefix_cost
                for step in step_costs:
                    total += step
                best.offer(prefix + combo, total)

    if best.actions is None:
        raise _infeasible(state, costs, target)

    projected = project(state, best.actions)
    return Scenario(
        actions=best.actions,
        total_cost=best.cost,
        projected=projected,
        target=target,
        baseline=baseline,
        state=state,
    )


def brute_force_plan(
    state: AssessmentInput,
    target: float,
    costs: ActionCostModel | None = None,
) -> Scenario:
    """Exact optimum by full enumeration of the same lattice as :func:`plan`.

    Testing oracle: refuses lattices above ``BRUTE_FORCE_GUARD`` points.
    """
    costs = costs if costs is not None else ActionCostModel()
    target = _validate_target(target)
    baseline = assess(state)

    levels = _sorted_org_levels(state)
    dirty = _dirty_cells(state)
    rate_lists = _rate_option_lists(state, costs)

    lattice = 1
    for _org, level in levels:
        lattice *= 6 - level
    lattice *= 2 ** len(dirty)
    for choices in rate_lists:
        lattice *= len(choices)
    if lattice > BRUTE_FORCE_GUARD:
        raise SearchSpaceError(
            f"brute-force enumeration refused: {lattice} lattice points exceed "
            f"the guard of {BRUTE_FORCE_GUARD}"
        )

    w = state.weights
    weight_sum = w.w1 + w.w2 + w.w3
    w3 = w.w3

    maturity_combos: list[tuple[tuple[RaiseMaturity, ...], float]] = []
    per_org_choices = [
        [None] + [RaiseMaturity(org_id, to_level) for to_level in range(level + 1, 6)]
        for org_id, level in levels
    ]
    for chosen in itertools.product(*per_org_choices):
        actions = tuple(action for action in chosen if action is not None)
        new_levels = {org: lvl for org, lvl in levels}
        for action in actions:
            new_levels[action.org_id] = action.to_level
        qp = potentiality_of_org(min(new_levels.values()))
        maturity_combos.append((actions, qp))

    cell_subsets: list[tuple[tuple[FixCompatibilityCell, ...], float]] = []
    for mask in itertools.product((False, True), repeat=len(dirty)):
        actions = tuple(
            FixCompatibilityCell(row, col)
            for (row, col, _value), include in zip(dirty, mask)
            if include
        )
        dc = compatibility_degree(
            _matrix_after_fix(state.matrix, [(a.row, a.col) for a in actions])
        )
        cell_subsets.append((actions, dc))

    rate_combos = _rate_combo_table(state, costs)

    best = _Incumbent()

    for maturity_actions, qp in maturity_combos:
        maturity_cost = _fold_cost(state, costs, maturity_actions)
        partial_num = w.w1 * qp
        for cell_actions, dc in cell_subsets:
            prefix = maturity_actions + cell_actions
            prefix_cost = _fold_cost(state, costs, cell_actions, start=maturity_cost)
            pair_num = partial_num + w.w2 * dc
            for combo, po, step_costs in rate_combos:
                if (pair_num + w3 * po) / weight_sum < target:
                    continue
                total = prefix_cost
                for step in step_costs:
                    total += step
                best.offer(prefix + combo, total)

    if best.actions is None:
        raise _infeasible(state, costs, target)
    if not best.actions:
        return _empty_scenario(state, target, baseline)

    projected = project(state, best.actions)
    return Scenario(
        actions=best.actions,
        total_cost=best.cost,
        projected=projected,
        target=target,
        baseline=baseline,
        state=state,
    )


def explain_scenario(scenario: Scenario) -> list[str]:
    """One recommendation line per action, with the component value it moves."""
    lines: list[str] = []
    previous = scenario.baseline
    applied: list[ImprovementAction] = []
    for action in scenario.actions:
        applied.append(action)
        current = project(scenario.state, applied)
        if isinstance(action, RaiseMaturity):
            lines.append(
                f"Improve {scenario.state.characteristic.value} maturity of "
                f"organization '{action.org_id}' to reach level {action.to_level} "
                f"(quality potentiality {previous.qp:.4f} -> {current.qp:.4f})"
            )
        elif isinstance(action, FixCompatibilityCell):
            row = MATRIX_ROW_LABELS[action.row - 1].lower()
            col = MATRIX_COLUMN_LABELS[action.col - 1].lower()
            lines.append(
                f"Resolve {col} incompatibilities at the {row} layer "
                f"(compatibility degree {previous.dc:.4f} -> {current.dc:.4f})"
            )
        elif action.which is RateKind.DS:
            lines.append(
                f"Optimize the availability of the involved application servers "
                f"to {action.to_value:g} (operational performance "
                f"{previous.po:.4f} -> {current.po:.4f})"
            )
        elif action.which is RateKind.QOS:
            lines.append(
                f"Raise the availability of the communication networks to "
                f"{action.to_value:g} (operational performance "
                f"{previous.po:.4f} -> {current.po:.4f})"
            )
        else:
            lines.append(
                f"Better meet end-user expectations, raising satisfaction to "
                f"{action.to_value:g} (operational performance "
                f"{previous.po:.4f} -> {current.po:.4f})"
            )
        previous = current
    return lines


# --- document forms -----------------------------------------------------------

def action_to_doc(action: ImprovementAction) -> dict:
    if isinstance(action, RaiseMaturity):
        return {"kind": "raise_maturity", "org_id": action.org_id, "to_level": action.to_level}
    if isinstance(action, FixCompatibilityCell):
        return {
            "kind": "fix_compatibility_cell",
            "row": action.row,
            "col": action.col,
            "row_label": MATRIX_ROW_LABELS[action.row - 1],
            "col_label": MATRIX_COLUMN_LABELS[action.col - 1],
        }
    return {"kind": "improve_rate", "which": action.which.value, "to_value": action.to_value}


def scenario_to_doc(scenario: Scenario) -> dict:
    from ratqual.scope import result_to_doc

    return {
        "target": scenario.target,
        "total_cost": scenario.total_cost,
        "actions": [action_to_doc(action) for action in scenario.actions],
        "baseline": result_to_doc(scenario.baseline),
        "projected": result_to_doc(scenario.projected),
        "explanation": explain_scenario(scenario),
    }


def cost_model_from_doc(doc: object, path: str = "costs") -> ActionCostModel:
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected an object")
    fields = {k: v for k, v in doc.items() if isinstance(k, str) and not k.startswith("_")}
    unknown = sorted(
        set(fields) - {"maturity_step_cost", "cell_costs", "rate_unit_costs", "rate_step"}
    )
    if unknown:
        raise FormatError(f"{path}: unknown field(s): {', '.join(unknown)}")
    kwargs: dict = {}
    if "maturity_step_cost" in fields:
        kwargs["maturity_step_cost"] = fields["maturity_step_cost"]
    if "cell_costs" in fields:
        raw = fields["cell_costs"]
        if not isinstance(raw, list):
            raise FormatError(f"{path}.cell_costs: expected a 4x6 array")
        kwargs["cell_costs"] = tuple(tuple(row) for row in raw)
    if "rate_unit_costs" in fields:
        raw = fields["rate_unit_costs"]
        if not isinstance(raw, dict) or set(raw) != {"ds", "qos", "ts"}:
            raise FormatError(f"{path}.rate_unit_costs: expected an object with ds, qos, ts")
        kwargs["rate_unit_costs"] = (raw["ds"], raw["qos"], raw["ts"])
    if "rate_step" in fields:
        kwargs["rate_step"] = fields["rate_step"]
    return ActionCostModel(**kwargs)


def load_cost_model(path: str | Path) -> ActionCostModel:
    from ratqual.scope import loads_document

    text = Path(path).read_text(encoding="utf-8")
    return cost_model_from_doc(loads_document(text, str(path)))
