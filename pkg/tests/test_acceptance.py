"""Acceptance suite: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Expected values come from independent oracles computed here (exact
rational arithmetic, high-precision decimal cube roots, exhaustive
enumeration), never from the code paths under test.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import subprocess
import sys
from datetime import datetime, timedelta, timezone
from decimal import Decimal, localcontext
from fractions import Fraction

from ratqual.catalog import Characteristic
from ratqual.core import (
    AggregationWeights,
    OperationalRates,
    aggregate,
    assess,
    compatibility_degree,
    operational_performance,
    potentiality_of_org,
)
from ratqual.monitoring import SnapshotStore
from ratqual.planner import (
    ActionCostModel,
    FixCompatibilityCell,
    ImproveRate,
    RaiseMaturity,
    RateKind,
    brute_force_plan,
    plan,
    project,
)
from ratqual.scope import (
    AssessmentSettings,
    CollaborationScope,
    Organization,
    dumps_canonical,
    load_scope,
    loads_document,
    save_scope,
)

from conftest import make_input, matrix_from_ones, random_planner_instance, ALL_CELLS

TOL = 1e-12


def _passed(line: str) -> None:
    print(f"PASS {line}")


def test_criterion_1_maturity_table_mapping_exact():
    """Level-to-potentiality table reproduced exactly, zero tolerance."""
    table = {1: 0.2, 2: 0.4, 3: 0.6, 4: 0.8, 5: 1.0}
    for level, expected in table.items():
        assert potentiality_of_org(level) == expected
    _passed("1: maturity level table 1..5 -> 0.2..1.0 reproduced exactly")


def test_criterion_2_compatibility_degree_exact():
    """1,000 random binary matrices vs the exact rational count oracle."""
    rng = random.Random(0xC0DE02)
    for _ in range(1000):
        ones = {cell for cell in ALL_CELLS if rng.random() < rng.random()}
        matrix = matrix_from_ones(ones)
        oracle = float(1 - Fraction(len(ones), 24))
        assert abs(compatibility_degree(matrix) - oracle) <= TOL

        row, col = rng.choice(ALL_CELLS)
        flipped = set(ones)
        if (row, col) in flipped:
            flipped.discard((row, col))
        else:
            flipped.add((row, col))
        delta = compatibility_degree(matrix_from_ones(flipped)) - compatibility_degree(matrix)
        assert abs(abs(delta) - 1 / 24) <= TOL
    _passed("2: compatibility degree matches 1 - ones/24 on 1000 matrices; flips move 1/24")


def _cbrt_oracle(value: float) -> float:
    """High-precision cube root, independent of the binary libm path."""
    if value == 0.0:
        return 0.0
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(value)
        root = d ** (Decimal(1) / Decimal(3))
        for _ in range(4):
            root = (2 * root + d / (root * root)) / 3
        return float(root)


def test_criterion_3_operational_performance_oracle():
    """1,000 random rate triples vs a 50-digit decimal cube-root oracle."""
    rng = random.Random(0xC0DE03)
    for _ in range(1000):
        rates = tuple(
            0.0 if rng.random() < 0.1 else rng.uniform(1e-6, 1.0) for _ in range(3)
        )
        po = operational_performance(OperationalRates(*rates))
        expected = _cbrt_oracle(rates[0] * rates[1] * rates[2])
        assert abs(po - expected) <= TOL
        assert (po == 0.0) == (0.0 in rates)
        assert min(rates) - TOL <= po <= max(rates) + TOL
    _passed("3: geometric mean matches high-precision oracle on 1000 triples")


def test_criterion_4_aggregation_properties():
    """Weight scaling, equal-weight equivalence, idempotence, monotonicity."""
    rng = random.Random(0xC0DE04)

    for _ in range(1000):
        qp, dc, po = (rng.random() for _ in range(3))
        weights = tuple(rng.uniform(0.0, 100.0) for _ in range(3))
        if sum(weights) <= 1e-9:
            weights = (1.0, 1.0, 1.0)
        factor = rng.uniform(1e-3, 1e3)
        plain = aggregate(qp, dc, po, AggregationWeights(*weights))
        scaled = aggregate(
            qp, dc, po, AggregationWeights(*(factor * w for w in weights))
        )
        assert abs(plain - scaled) <= TOL

    for _ in range(1000):
        qp, dc, po = (rng.random() for _ in range(3))
        assert aggregate(qp, dc, po, AggregationWeights()) == (qp + dc + po) / 3

    for _ in range(1000):
        value = rng.random()
        weights = tuple(rng.uniform(0.1, 10.0) for _ in range(3))
        assert abs(aggregate(value, value, value, AggregationWeights(*weights)) - value) <= TOL

    for _ in range(1000):
        levels = {f"o{i}": rng.randint(1, 4) for i in range(rng.randint(1, 3))}
        ones = {cell for cell in ALL_CELLS if rng.random() < 0.3}
        rates = [rng.uniform(0.05, 0.95) for _ in range(3)]
        state = make_input(levels=levels, ones=ones, rates=tuple(rates))
        before = assess(state).ratqual

        coordinate = rng.randint(0, 4)
        if coordinate == 0:
            key = rng.choice(sorted(levels))
            levels = dict(levels, **{key: levels[key] + 1})
        elif coordinate == 1 and ones:
            ones = set(ones)
            ones.discard(rng.choice(sorted(ones)))
        else:
            index = coordinate - 2 if coordinate >= 2 else 0
            rates[index] = rates[index] + (1.0 - rates[index]) * rng.random()
        after = assess(make_input(levels=levels, ones=ones, rates=tuple(rates))).ratqual
        assert after >= before
    _passed("4: aggregation invariances and assess monotonicity over 4x1000 samples")


def test_criterion_5_planner_matches_exhaustive_oracle():
    """200 randomized desk-scale instances: identical cost and action sets."""
    rng = random.Random(0xC0DE05)
    checked = 0
    empty = 0
    for _ in range(200):
        state, target, costs = random_planner_instance(rng)
        mine = plan(state, target, costs)
        oracle = brute_force_plan(state, target, costs)
        assert mine.total_cost == oracle.total_cost
        assert mine.actions == oracle.actions
        reprojected = project(state, mine.actions)
        assert reprojected == mine.projected
        assert reprojected.ratqual >= target
        checked += 1
        empty += not mine.actions
    assert checked == 200
    assert 0 < empty < 200  # the mix exercises both trivial and real plans
    _passed(f"5: plan equals brute force on 200 instances ({empty} already satisfied)")


def test_criterion_6_structural_recommendation_fixture():
    """A degraded alignment scenario yields all four recommendation kinds."""
    characteristic = Characteristic.INTER_ALIGNMENT_ABILITY
    state = make_input(
        levels={"org-east": 2, "org-west": 2},
        ones={(1, 2)},  # Process layer, Semantic barrier column
        rates=(0.8, 1.0, 0.75),
        characteristic=characteristic,
    )
    costs = ActionCostModel(
        maturity_step_cost=10.0,
        cell_costs=tuple(tuple(2.0 for _ in range(6)) for _ in range(4)),
        rate_unit_costs=(10.0, 10.0, 10.0),
        rate_step=0.05,
    )
    scenario = plan(state, 0.86, costs)
    assert scenario.actions == brute_force_plan(state, 0.86, costs).actions

    raises = [a for a in scenario.actions if isinstance(a, RaiseMaturity)]
    fixes = [a for a in scenario.actions if isinstance(a, FixCompatibilityCell)]
    rates = [a for a in scenario.actions if isinstance(a, ImproveRate)]
    assert raises and all(a.to_level == 3 for a in raises)
    assert any(a.col == 2 for a in fixes)  # the Semantic column
    assert {a.which for a in rates} == {RateKind.DS, RateKind.TS}
    _passed("6: alignment fixture plans maturity-to-3, semantic fix, DS and TS raises")


def test_criterion_7_persistence_round_trips(tmp_path):
    """Scope documents and snapshot stores survive disk round-trips."""
    rng = random.Random(0xC0DE07)
    for index in range(25):
        n_orgs = rng.randint(2, 4)
        org_ids = [f"org-{i}" for i in range(n_orgs)]
        assessments = {}
        for characteristic in rng.sample(list(Characteristic), rng.randint(0, 3)):
            assessments[characteristic] = AssessmentSettings(
                org_maturities=tuple((org, rng.randint(1, 5)) for org in org_ids),
                matrix=matrix_from_ones({c for c in ALL_CELLS if rng.random() < 0.25}),
                rates=OperationalRates(rng.random(), rng.random(), rng.random()),
                weights=AggregationWeights(
                    rng.uniform(0.1, 5), rng.uniform(0.1, 5), rng.uniform(0.1, 5)
                ),
            )
        scope = CollaborationScope(
            scope_id=f"scope-{index}",
            name=f"Scope {index}",
            organizations=tuple(Organization(org, org.upper()) for org in org_ids),
            assessments=assessments,
            created_at=datetime(2026, 1, 1, tzinfo=timezone.utc)
            + timedelta(minutes=rng.randint(0, 500000)),
            version=rng.randint(1, 5),
        )
        path = tmp_path / f"{scope.scope_id}.json"
        save_scope(scope, path)
        assert load_scope(path) == scope
        save_scope(scope, tmp_path / "again.json")
        assert (tmp_path / "again.json").read_bytes() == path.read_bytes()

    store = SnapshotStore(tmp_path / "snapshots")
    recorded = []
    for minute in range(20):
        rates = (rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0))
        recorded.append(
            store.record_snapshot(
                "scope-0",
                "Interoperability",
                make_input(rates=rates),
                taken_at=datetime(2026, 3, 1, tzinfo=timezone.utc)
                + timedelta(minutes=minute),
            )
        )
    # read_snapshots recomputes every stored result from its stored input.
    reread = store.read_snapshots("scope-0", "Interoperability", verify=True)
    assert [s.result for s in reread] == [s.result for s in recorded]
    assert [s.input for s in reread] == [s.input for s in recorded]
    _passed("7: 25 scope documents and a 20-snapshot store round-trip byte-stably")


def _cli(home, *args, expect=0):
    env = dict(os.environ, RATQUAL_HOME=str(home))
    result = subprocess.run(
        [sys.executable, "-m", "ratqual", *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=60,
    )
    assert result.returncode == expect, (
        f"ratqual {' '.join(args)} -> {result.returncode}, expected {expect}\n"
        f"stdout: {result.stdout}\nstderr: {result.stderr}"
    )
    return result


def test_criterion_8_end_to_end_cli(tmp_path):
    """init-scope, edit, assess --record twice, report --csv, exit codes."""
    home = tmp_path / "home"

    _cli(home, "init-scope", "--scope", "e2e", "--name", "End to end")

    scope_path = home / "scopes" / "e2e.json"
    doc = loads_document(scope_path.read_text(encoding="utf-8"))
    block = doc["assessments"]["Interoperability"]
    block["org_maturities"] = {"org-a": 3, "org-b": 4}
    block["matrix"][0][1] = 1
    block["rates"] = {"ds": 0.9, "qos": 0.8, "ts": 0.7}
    scope_path.write_text(dumps_canonical(doc), encoding="utf-8")

    machine = json.loads(
        _cli(home, "assess", "--scope", "e2e", "-c", "Interoperability",
             "--format", "machine").stdout
    )
    _cli(home, "assess", "--scope", "e2e", "-c", "Interoperability", "--record")
    _cli(home, "assess", "--scope", "e2e", "-c", "Interoperability", "--record")

    report = _cli(home, "report", "--scope", "e2e", "-c", "Interoperability", "--csv")
    rows = list(csv.DictReader(io.StringIO(report.stdout)))
    assert len(rows) == 2
    for row in rows:
        assert float(row["ratqual"]) == machine["result"]["ratqual"]
        assert float(row["qp"]) == machine["result"]["qp"]
        assert float(row["dc"]) == machine["result"]["dc"]
        assert float(row["po"]) == machine["result"]["po"]

    # Exit-code table: 1 validation, 2 usage, 3 I/O.
    bad = dict(doc)
    bad["organizations"] = doc["organizations"][:1]
    bad["sub_processes"] = []
    bad["info_systems"] = []
    bad["app_services"] = []
    (home / "scopes" / "broken.json").write_text(dumps_canonical(bad), encoding="utf-8")
    _cli(home, "validate", "--scope", "broken", expect=1)
    _cli(home, "definitely-not-a-command", expect=2)
    _cli(
        home,
        "plan", "--scope", "e2e", "-c", "Interoperability",
        "--target", "0.9", "--costs", str(home / "missing.json"),
        expect=3,
    )
    _passed("8: CLI pipeline produces a two-row CSV matching direct assessment")
