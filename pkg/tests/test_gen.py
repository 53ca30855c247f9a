"""Generated instances are valid, bounded, and reproducible from seeds."""

import random

import pytest

from relmonad.errors import BudgetExceededError
from relmonad.fincat import FunctorTable, validate_category, validate_functor
from relmonad.gen import (
    GenConfig,
    builtin_category,
    derive_seed,
    enumerate_functor_nats,
    free_dag_category,
    gen_category,
    gen_functor,
    gen_multimap,
    gen_nat_trans,
    gen_presheaf,
    presheaf_quotient,
)
from relmonad.multimap import validate_multimap
from relmonad.presheaf import (
    coproduct_presheaves,
    representable,
    validate_presheaf,
)


def test_derived_seeds_are_frozen():
    # values pinned so report lines stay comparable across runs and versions
    assert derive_seed(42, "extension-associative", 0) == 16374528019434475523
    assert derive_seed(42, "interchange-oracle", 3) == 8903106525276228081
    assert derive_seed(42, "yoneda-count", 11) == 1886727272431500477


def test_derived_seeds_separate_laws():
    seen = {derive_seed(7, law, i) for law in ("a", "b") for i in range(50)}
    assert len(seen) == 100


def test_builtins_are_categories():
    for name in ("arrow", "z2", "leftzero3", "square"):
        c = builtin_category(name)
        assert validate_category(c).ok, name


def test_free_dag_categories_are_valid_and_skeletal():
    for s in range(25):
        c = free_dag_category(random.Random(s), 4, 4)
        assert validate_category(c).ok
        # free on an acyclic graph: endomorphisms are identities only
        for a in c.objects:
            assert c.hom(a, a) == (c.id_of(a),)


def test_free_dag_reproducible():
    a = free_dag_category(random.Random(9), 4, 4)
    b = free_dag_category(random.Random(9), 4, 4)
    assert a.content_key() == b.content_key()


def test_free_dag_path_composition():
    # hunt a seed giving a two-edge chain and check lengths add up
    for s in range(60):
        c = free_dag_category(random.Random(s), 3, 3)
        for g in c.morphisms:
            for f in c.morphisms:
                if c.is_identity(g) or c.is_identity(f):
                    continue
                if c.src(g) == c.tgt(f):
                    gf = c.compose(g, f)
                    assert c.src(gf) == c.src(f) and c.tgt(gf) == c.tgt(g)
                    assert not c.is_identity(gf)
                    return
    pytest.skip("no composable chain generated in the scanned seeds")


def test_generated_presheaves_validate():
    cfg = GenConfig()
    for s in range(30):
        rng = random.Random(s)
        c = gen_category(rng, cfg)
        p = gen_presheaf(rng, c, cfg.max_values)
        assert validate_presheaf(p).ok, (s, c.name)


def test_quotient_glues_orbits():
    arrow = builtin_category("arrow")
    total, _ = coproduct_presheaves([representable(arrow, 1), representable(arrow, 1)])
    q = presheaf_quotient(total, [(1, 0, 1)])
    # gluing the two top cells must glue their restrictions too
    assert tuple(len(s) for s in q.at) == (1, 1)
    assert validate_presheaf(q).ok


def test_quotient_is_presheaf_on_group():
    z2 = builtin_category("z2")
    total, _ = coproduct_presheaves([representable(z2, 0), representable(z2, 0)])
    q = presheaf_quotient(total, [(0, 0, 2)])
    assert validate_presheaf(q).ok
    # identifying the two unit cells folds the two copies together
    assert tuple(len(s) for s in q.at) == (2,)


def test_generated_multimaps_validate():
    cfg = GenConfig()
    for s in range(8):
        rng = random.Random(s)
        c = builtin_category(rng.choice(["arrow", "square"]))
        d = builtin_category(rng.choice(["arrow", "z2"]))
        m = gen_multimap(rng, (c,), d, cfg.max_values)
        assert validate_multimap(m).ok, s


def test_generated_binary_multimap_validates():
    rng = random.Random(3)
    arrow = builtin_category("arrow")
    m = gen_multimap(rng, (arrow, arrow), arrow, 24)
    assert validate_multimap(m).ok


def test_multimap_budget_guard():
    rng = random.Random(0)
    square = builtin_category("square")
    with pytest.raises(BudgetExceededError):
        gen_multimap(rng, (square, square), square, max_values=1, n_generators=4)


def test_generated_functors_validate():
    cfg = GenConfig()
    for s in range(20):
        rng = random.Random(s)
        src = gen_category(rng, cfg)
        dst = gen_category(rng, cfg)
        f = gen_functor(rng, (src,), dst)
        assert validate_functor(f).ok, s
    rng = random.Random(99)
    arrow = builtin_category("arrow")
    f2 = gen_functor(rng, (arrow, arrow), arrow)
    assert validate_functor(f2).ok


def test_functor_nat_enumeration_counts():
    arrow = builtin_category("arrow")
    ident = FunctorTable.identity(arrow)
    const0 = FunctorTable.unary(arrow, arrow, [0, 0], [0, 0, 0], name="c0")
    const1 = FunctorTable.unary(arrow, arrow, [1, 1], [1, 1, 1], name="c1")
    assert len(enumerate_functor_nats(ident, ident)) == 1
    assert len(enumerate_functor_nats(const0, const1)) == 1
    assert len(enumerate_functor_nats(ident, const1)) == 1
    assert len(enumerate_functor_nats(const1, ident)) == 0
    psi = gen_nat_trans(random.Random(0), const0, const1)
    assert psi is not None and psi.at((0,)) == 2


def test_generation_reproducible():
    cfg = GenConfig()
    seed = derive_seed(42, "gen-check", 5)
    outs = []
    for _ in range(2):
        rng = random.Random(seed)
        c = gen_category(rng, cfg)
        p = gen_presheaf(rng, c, cfg.max_values)
        m = gen_multimap(rng, (c,), c, cfg.max_values)
        keys = (c.content_key(), p.content_key())
        tables = tuple(
            m.evaluate((x,)).content_key() for x in c.objects
        )
        outs.append((keys, tables))
    assert outs[0] == outs[1]


def test_default_bounds_reach_nontrivial_merges():
    # default-size instances must exercise the interesting branch of the
    # coend computation: at least one union-find merge that joins classes
    from relmonad.kan import strengthen
    from relmonad.presheaf import merge_counter

    merge_counter.reset()
    for seed in range(6):
        rng = random.Random(seed)
        g = GenConfig(3, 3)
        try:
            a, cod = gen_category(rng, g), gen_category(rng, g)
            m = gen_multimap(rng, (a,), cod)
            p = gen_presheaf(rng, a)
        except BudgetExceededError:
            continue
        strengthen(m, 0).evaluate((p,))
    assert merge_counter.value > 0
