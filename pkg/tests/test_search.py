import itertools
import json

import pytest

from scall import (
    GAConfig,
    NoFeasibleAllocationError,
    SpaceTooLargeError,
    alternatives,
    derived_seed,
    evaluate,
    exhaustive_search,
    ga_search,
    space_size,
    validate_model,
)
from scall.ahp import TradeoffVector, derive_tradeoff
from scall.benchgen import BenchSpec, generate_model
from scall.fixtures import auv_model

from conftest import F_E1, e1_doc, e1_variant


def test_exhaustive_e1_topk(e1_model):
    rep = exhaustive_search(e1_model, F_E1, top_k=4)
    assert rep.best == (0, 0)
    assert rep.best_result.w == pytest.approx(2.5, abs=1e-12)
    assert rep.exact and rep.generations is None and rep.seed is None
    assert rep.evaluated == 4
    assert [p for p, _ in rep.alternatives] == [(0, 0), (0, 1), (1, 1), (1, 0)]
    assert [r.w for _, r in rep.alternatives] == pytest.approx([2.5, 2.5, 2.5, 4.5], abs=1e-12)


def test_exhaustive_no_feasible():
    model = validate_model(e1_variant(R=[[1], [1]]))
    with pytest.raises(NoFeasibleAllocationError):
        exhaustive_search(model, F_E1)


def test_exhaustive_single_component_argmin():
    doc = {
        "resources": [{"id": "r", "name": "R", "unit": "x"}],
        "units": [{"id": f"u{i}", "name": f"U{i}", "kind": "CPU"} for i in range(3)],
        "components": [{"id": "c", "name": "C", "allowedUnits": []}],
        "T": [[[5], [2], [7]]],
        "R": [[9], [9], [9]],
        "K": [[0]],
        "C": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
        "B": [[0, 9, 9], [9, 0, 9], [9, 9, 0]],
    }
    model = validate_model(doc)
    rep = exhaustive_search(model, TradeoffVector(f=(1.0,), fc=0.0), top_k=1)
    assert rep.best == (1,)
    assert rep.best_result.w == 2.0


def test_exhaustive_cap(e1_model, monkeypatch):
    with pytest.raises(SpaceTooLargeError):
        exhaustive_search(e1_model, F_E1, cap=3)
    monkeypatch.setenv("SCALL_EXHAUSTIVE_CAP", "3")
    with pytest.raises(SpaceTooLargeError):
        exhaustive_search(e1_model, F_E1)
    monkeypatch.setenv("SCALL_EXHAUSTIVE_CAP", "10")
    assert exhaustive_search(e1_model, F_E1).best == (0, 0)


def test_exhaustive_respects_allowed_units():
    doc = e1_doc()
    doc["components"][0]["allowedUnits"] = ["h2"]
    model = validate_model(doc)
    rep = exhaustive_search(model, F_E1, top_k=4)
    assert rep.evaluated == 2  # only h2 placements of the first component
    assert all(p[0] == 1 for p, _ in rep.alternatives)


def test_exhaustive_tiebreak_is_lexicographic():
    # identical units and no communication: every allocation costs the same
    doc = e1_variant(T=[[[2], [2]], [[3], [3]]], K=[[0, 0], [0, 0]])
    model = validate_model(doc)
    rep = exhaustive_search(model, F_E1, top_k=4)
    assert rep.best == (0, 0)
    assert [p for p, _ in rep.alternatives] == sorted(itertools.product((0, 1), repeat=2))


def test_ga_finds_e1_optimum_any_seed(e1_model):
    for seed in (0, 1, 7, 12345, 2**63):
        rep = ga_search(e1_model, F_E1, GAConfig(seed=seed))
        assert rep.best_result.w == pytest.approx(2.5, abs=1e-12)
        assert not rep.exact and rep.seed == seed


def test_ga_determinism(e1_model):
    a = ga_search(e1_model, F_E1, GAConfig(seed=99))
    b = ga_search(e1_model, F_E1, GAConfig(seed=99))
    da = a.to_dict(e1_model, include_timing=False)
    db = b.to_dict(e1_model, include_timing=False)
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_ga_no_feasible_diagnostics():
    model = validate_model(e1_variant(R=[[1], [1]]))
    with pytest.raises(NoFeasibleAllocationError) as exc:
        ga_search(model, F_E1, GAConfig(seed=3))
    diag = exc.value.diagnostics
    assert diag["bestViolation"] > 0
    assert len(diag["bestInfeasible"]) == 2


def test_ga_respects_allowed_units():
    doc = e1_doc()
    doc["components"][0]["allowedUnits"] = ["h2"]
    model = validate_model(doc)
    for seed in range(10):
        rep = ga_search(model, F_E1, GAConfig(seed=seed, generations=5, stall_limit=5))
        assert rep.best[0] == 1


def test_ga_best_is_feasible_on_generated_models():
    for seed in range(15):
        spec = BenchSpec(n_range=(3, 6), m_range=(2, 4), l_range=(1, 3),
                         instances=1, seed=seed, tightness=1.2)
        model = generate_model(spec, 0)
        F = TradeoffVector.uniform(model.l)
        cfg = GAConfig(seed=seed, population_size=12, generations=30, stall_limit=10)
        try:
            rep = ga_search(model, F, cfg)
        except NoFeasibleAllocationError:
            continue
        res = rep.best_result
        assert res.feasible and res.rho == 1 and res.kappa == 1
        assert model.allocation_satisfies_constraints(rep.best)


def test_oracle_dominance():
    for seed in range(10):
        spec = BenchSpec(n_range=(3, 5), m_range=(2, 3), l_range=(1, 2),
                         instances=1, seed=seed + 50, tightness=1.8)
        model = generate_model(spec, 0)
        F = TradeoffVector.uniform(model.l)
        try:
            exact = exhaustive_search(model, F).best_result.w
        except NoFeasibleAllocationError:
            continue
        ga = ga_search(model, F, GAConfig(seed=seed, population_size=10, generations=10,
                                          stall_limit=5)).best_result.w
        assert ga >= exact - 1e-12 * max(1.0, exact)


def test_ga_stall_limit_stops_early(e1_model):
    rep = ga_search(e1_model, F_E1, GAConfig(seed=0, generations=200, stall_limit=5))
    assert rep.generations < 200


def test_ga_evaluated_counts(e1_model):
    cfg = GAConfig(seed=0, population_size=10, generations=3, stall_limit=3, elitism=2)
    rep = ga_search(e1_model, F_E1, cfg)
    # initial population plus the fresh (non-elite) individuals of each generation
    assert rep.evaluated == 10 + rep.generations * 8


def test_gaconfig_validation():
    with pytest.raises(ValueError):
        GAConfig(population_size=1)
    with pytest.raises(ValueError):
        GAConfig(tournament_size=100)
    with pytest.raises(ValueError):
        GAConfig(elitism=50)
    with pytest.raises(ValueError):
        GAConfig(crossover_rate=1.5)


def test_gaconfig_wire_roundtrip():
    cfg = GAConfig.from_dict({"populationSize": 20, "stallLimit": 9, "seed": 5})
    assert cfg.population_size == 20 and cfg.stall_limit == 9 and cfg.seed == 5
    assert GAConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ValueError):
        GAConfig.from_dict({"popSize": 20})


def test_derived_seed_fixed_and_distinct():
    seeds = [derived_seed(42, i) for i in range(10)]
    assert len(set(seeds)) == 10
    assert all(0 <= s < 2**64 for s in seeds)
    assert seeds == [derived_seed(42, i) for i in range(10)]


def test_alternatives_e1(e1_model):
    reports = alternatives(e1_model, F_E1, count=3, base_seed=11)
    assert 1 <= len(reports) <= 3
    assert reports[0].best_result.w == pytest.approx(2.5, abs=1e-12)
    ws = [r.best_result.w for r in reports]
    assert ws == sorted(ws)
    assert len({r.best for r in reports}) == len(reports)


def test_alternatives_count_one_uses_first_derived_seed(e1_model):
    single = alternatives(e1_model, F_E1, count=1, base_seed=5)[0]
    direct = ga_search(e1_model, F_E1, GAConfig(seed=derived_seed(5, 0)))
    assert single.to_dict(e1_model, include_timing=False) == direct.to_dict(
        e1_model, include_timing=False
    )


def test_alternatives_auv_sorted_distinct():
    model = auv_model()
    F = derive_tradeoff(model.comparison)
    reports = alternatives(model, F, count=5, base_seed=0)
    ws = [r.best_result.w for r in reports]
    assert ws == sorted(ws)
    assert len({r.best for r in reports}) == len(reports)


def test_auv_ga_seed_42_matches_oracle():
    model = auv_model()
    F = derive_tradeoff(model.comparison)
    exact = exhaustive_search(model, F)
    ga = ga_search(model, F, GAConfig(seed=42))
    assert space_size(model) == 177147
    assert ga.best_result.w == pytest.approx(exact.best_result.w, rel=1e-12)
