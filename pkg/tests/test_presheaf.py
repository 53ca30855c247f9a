import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relmonad.errors import BudgetExceededError
from relmonad.fincat import FinCategory, validate_category, validate_functor
from relmonad.presheaf import (
    FinSet,
    FinSetDiagram,
    Presheaf,
    PresheafMorphism,
    category_of_elements,
    classifying_morphism,
    colimit_finset,
    coproduct_presheaves,
    enumerate_nat_trans,
    merge_counter,
    pointwise_colimit,
    representable,
    sample_presheaves,
    validate_presheaf,
    validate_presheaf_morphism,
    yoneda_action,
)


def test_representable_sizes_on_arrow(arrow):
    y0 = representable(arrow, 0)
    y1 = representable(arrow, 1)
    assert tuple(len(s) for s in y0.at) == (1, 0)
    assert tuple(len(s) for s in y1.at) == (1, 1)
    assert y1.at[0].labels == ("m2",)
    assert y1.act[2] == (0,)  # precompose id1 with a
    assert validate_presheaf(y0).ok and validate_presheaf(y1).ok


def test_representables_validate_everywhere(arrow, z2, lz3, square):
    for c in (arrow, z2, lz3, square):
        for a in c.objects:
            assert validate_presheaf(representable(c, a)).ok


def test_presheaf_validation_catches_tampering(lz3):
    p = representable(lz3, 0)
    assert p.act[1] == (1, 1, 2)  # precomposition with the left-zero element p
    bad_act = list(p.act)
    bad_act[1] = (2, 1, 1)
    bad = Presheaf(lz3, p.at, bad_act)
    report = validate_presheaf(bad)
    assert not report.ok
    assert report.first.law == "broken-contravariance"


def test_yoneda_action_and_classifying(arrow):
    act = yoneda_action(arrow, 2)
    assert validate_presheaf_morphism(act).ok
    y1 = representable(arrow, 1)
    chi = classifying_morphism(y1, 0, 0)  # classify the element a of y1(0)
    assert chi.components == act.components


def test_classifying_morphism_is_natural(square):
    p = representable(square, 3)
    for x in square.objects:
        for e in range(len(p.at[x])):
            assert validate_presheaf_morphism(classifying_morphism(p, x, e)).ok


def test_morphism_compose_and_inverse(arrow):
    y1 = representable(arrow, 1)
    ident = PresheafMorphism.identity(y1)
    assert ident.is_bijection()
    assert ident.then(ident).components == ident.components
    assert ident.inverse().components == ident.components
    act = yoneda_action(arrow, 2)
    assert not act.is_bijection()  # empty fiber over object 1 of y0
    with pytest.raises(ValueError):
        act.inverse()


def test_coproduct_sizes_and_labels(arrow):
    y0, y1 = representable(arrow, 0), representable(arrow, 1)
    s, (i0, i1) = coproduct_presheaves([y0, y1])
    assert tuple(len(x) for x in s.at) == (2, 1)
    assert s.at[0].labels == ("0:m0", "1:m2")
    assert validate_presheaf(s).ok
    assert validate_presheaf_morphism(i0).ok and validate_presheaf_morphism(i1).ok


def test_pushout_of_arrow_codomain(arrow):
    # glue two copies of y1 along y0 over the arrow a
    span = FinCategory(
        "span", 3, [0, 1, 2, 0, 0], [0, 1, 2, 1, 2], [0, 1, 2],
        {(0, 0): 0, (1, 1): 1, (2, 2): 2, (3, 0): 3, (4, 0): 4, (1, 3): 3, (2, 4): 4},
    )
    assert validate_category(span).ok
    y0, y1 = representable(arrow, 0), representable(arrow, 1)
    leg = yoneda_action(arrow, 2)
    colim, coprs = pointwise_colimit(
        span,
        [y0, y1, y1],
        {0: PresheafMorphism.identity(y0), 1: PresheafMorphism.identity(y1),
         2: PresheafMorphism.identity(y1), 3: leg, 4: leg},
    )
    assert tuple(len(x) for x in colim.at) == (1, 2)
    assert colim.act[2] == (0, 0)  # both glued points restrict to the same element
    assert validate_presheaf(colim).ok
    for c in coprs:
        assert validate_presheaf_morphism(c).ok


def test_colimit_reps_are_least(arrow):
    shape = FinCategory("pair", 2, [0, 1], [0, 1], [0, 1], {(0, 0): 0, (1, 1): 1})
    d = FinSetDiagram(shape, (FinSet("ab"), FinSet("cd")), {0: (0, 1), 1: (0, 1)})
    assert d.validate().ok
    r = colimit_finset(d)
    assert r.reps == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert r.merges == 0
    assert r.set.labels == ("q0", "q1", "q2", "q3")


def test_colimit_budget(arrow):
    shape = FinCategory("one", 1, [0], [0], [0], {(0, 0): 0})
    d = FinSetDiagram(shape, (FinSet(f"x{i}" for i in range(10)),), {0: tuple(range(10))})
    with pytest.raises(BudgetExceededError):
        colimit_finset(d, budget=5)


span_maps = st.tuples(
    st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
    st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
)


@settings(max_examples=60, deadline=None)
@given(span_maps)
def test_colimit_partitions_random_spans(vals):
    # random span of 3-element sets: classes partition all 9 elements and
    # coprojections hit every class
    shape = FinCategory(
        "span", 3, [0, 1, 2, 0, 0], [0, 1, 2, 1, 2], [0, 1, 2],
        {(0, 0): 0, (1, 1): 1, (2, 2): 2, (3, 0): 3, (4, 0): 4, (1, 3): 3, (2, 4): 4},
    )
    sets = tuple(FinSet(f"e{i}{j}" for j in range(3)) for i in range(3))
    d = FinSetDiagram(
        shape, sets,
        {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: vals[:3], 4: vals[3:]},
    )
    assert d.validate().ok
    before = merge_counter.value
    r = colimit_finset(d)
    assert merge_counter.value - before == r.merges
    seen = set()
    for copr in r.coprojections:
        seen.update(copr)
    assert seen == set(range(len(r.set)))
    for k, (i, t) in enumerate(r.reps):
        assert r.coprojections[i][t] == k


def test_category_of_elements(arrow):
    el = category_of_elements(representable(arrow, 1))
    assert el.n_objects == 2
    assert el.n_morphisms == 3
    assert validate_category(el).ok
    assert validate_functor(el.projection).ok
    assert category_of_elements(representable(arrow, 1)) is not el  # distinct presheaf instances


def test_category_of_elements_cached(arrow):
    p = representable(arrow, 1)
    assert category_of_elements(p) is category_of_elements(p)


def test_elements_of_square_corner(square):
    p = representable(square, 3)
    el = category_of_elements(p)
    # one element per object of the poset below 3
    assert el.n_objects == sum(len(square.hom(x, 3)) for x in square.objects)
    assert validate_category(el).ok


def test_enumerate_nat_trans_matches_yoneda(arrow, square):
    for c in (arrow, square):
        ys = {a: representable(c, a) for a in c.objects}
        for a in c.objects:
            for b in c.objects:
                found = enumerate_nat_trans(ys[a], ys[b])
                assert len(found) == len(c.hom(a, b))
                for t in found:
                    assert validate_presheaf_morphism(t).ok


def test_enumerate_nat_trans_budget(square):
    p = representable(square, 3)
    s, _ = coproduct_presheaves([p, p, p])
    with pytest.raises(BudgetExceededError):
        enumerate_nat_trans(s, s, budget=3)


def test_sample_family(arrow, z2):
    fam = sample_presheaves(arrow)
    assert len(fam) == 5
    for p in fam:
        assert validate_presheaf(p).ok
    # singleton object category still yields representable + coproduct + quotient
    fam2 = sample_presheaves(z2)
    assert len(fam2) == 3
    for p in fam2:
        assert validate_presheaf(p).ok
