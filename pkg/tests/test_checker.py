"""Law registry: seeding, honest runs, and defect injection.

The registry is exercised two ways: a small honest run where every law
family must pass, and one run per injector where the designated catching
law must produce at least one failing outcome with a witness.  Injection
runs use each family's own default instance count because the catches
live at specific derived seeds.
"""

import pytest

from relmonad.checker import (
    INJECTORS,
    LAW_FAMILIES,
    LAW_ORDER,
    CheckConfig,
    law_description,
    run_suite,
    run_single,
)
from relmonad.gen import derive_seed


def test_registry_order_matches_families():
    assert LAW_ORDER == tuple(LAW_FAMILIES)
    assert len(LAW_ORDER) == 23


def test_every_law_has_a_description():
    for law in LAW_ORDER:
        assert law_description(law)


def test_derived_seeds_are_distinct():
    seen = set()
    for law in LAW_ORDER:
        for i in range(3):
            seen.add(derive_seed(9, law, i))
    assert len(seen) == 3 * len(LAW_ORDER)
    assert derive_seed(9, LAW_ORDER[0], 0) != derive_seed(10, LAW_ORDER[0], 0)


def test_run_single_is_deterministic():
    cfg = CheckConfig(seed=5)
    a = run_single("extension-associative", 1, cfg)
    b = run_single("extension-associative", 1, cfg)
    assert a == b
    assert a.ok and a.checked > 0


def test_unknown_law_raises():
    with pytest.raises(KeyError):
        run_single("no-such-law", 0, CheckConfig())


@pytest.mark.parametrize("law", LAW_ORDER)
def test_law_passes_small_run(law):
    cfg = CheckConfig(seed=7, instances=2)
    for i in range(2):
        out = run_single(law, i, cfg)
        assert out.ok, f"{law}[{i}]: {out.witness}"
        assert out.witness == ""


def test_report_shape_and_summaries():
    cfg = CheckConfig(seed=3, instances=1)
    rep = run_suite(cfg)
    assert rep.ok
    assert len(rep.outcomes) == len(LAW_ORDER)
    summ = rep.summaries()
    assert [s.law for s in summ] == list(LAW_ORDER)
    assert all(s.instances == 1 and s.failed == 0 for s in summ)


def test_law_selection_restricts_run():
    cfg = CheckConfig(seed=3, instances=1, laws=("yoneda-count", "extension-unit"))
    rep = run_suite(cfg)
    assert {o.law for o in rep.outcomes} == {"yoneda-count", "extension-unit"}


def test_sample_policy_also_passes():
    cfg = CheckConfig(seed=11, instances=2, policy="sample")
    for i in range(2):
        out = run_single("extension-unit", i, cfg)
        assert out.ok, out.witness


# default instance counts carry the family minimums used by the
# acceptance run; shrinking one silently weakens a criterion
def test_family_instance_floors():
    def total(*laws):
        return sum(LAW_FAMILIES[l][1] for l in laws)

    assert total(
        "extension-associative", "extension-unit", "collapse-after-extension",
        "collapse-on-unit", "extension-absorbs-unit",
    ) >= 100
    assert total(
        "strength-unit-triangles", "strength-substitution",
        "strength-extension-transpose", "strength-cells-functorial",
    ) >= 100
    assert total("lift-identity", "lift-composition", "lift-naturality") >= 50
    assert total(
        "interchange-oracle", "interchange-units",
        "interchange-extensions", "interchange-hexagon",
    ) >= 50
    assert LAW_FAMILIES["braiding-words"][1] >= 10
    assert LAW_FAMILIES["extension-universal"][1] >= 10
    assert total(
        "square-unit-compat", "square-extension-compat", "square-collapse-compat",
    ) >= 25
    assert LAW_FAMILIES["yoneda-count"][1] >= 10
    assert LAW_FAMILIES["instance-valid"][1] >= 10


# each injector paired with one law whose default run must catch it
CATCHES = [
    ("theta-corrupt", "extension-unit"),
    ("that-corrupt", "extension-associative"),
    ("gamma-identity", "interchange-oracle"),
    ("t-order-scramble", "lift-composition"),
    ("naturality-broken", "instance-valid"),
    ("contravariance-broken", "instance-valid"),
]


def test_catch_table_covers_every_injector():
    assert {name for name, _ in CATCHES} == set(INJECTORS)


@pytest.mark.parametrize("inject,law", CATCHES)
def test_injector_is_caught(inject, law):
    cfg = CheckConfig(seed=42, laws=(law,), inject=inject)
    rep = run_suite(cfg)
    fails = [o for o in rep.outcomes if not o.ok]
    assert fails, f"{inject} slipped past {law}"
    assert all(o.witness for o in fails)
    assert all("\n" not in o.witness and len(o.witness) <= 200 for o in fails)


@pytest.mark.parametrize("inject,law", CATCHES)
def test_injection_does_not_leak_between_runs(inject, law):
    # a fresh config without the injector must be clean again
    rep = run_suite(CheckConfig(seed=42, laws=(law,), instances=2))
    assert rep.ok


def test_outcome_seeds_follow_derivation():
    cfg = CheckConfig(seed=6, instances=2, laws=("yoneda-count",))
    rep = run_suite(cfg)
    assert [o.seed for o in rep.outcomes] == [
        derive_seed(6, "yoneda-count", 0),
        derive_seed(6, "yoneda-count", 1),
    ]
