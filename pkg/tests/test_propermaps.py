import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atlas.exactnum import root_of_unity
from atlas.polyring import MultiPoly, parse_poly
from atlas.propermaps import (
    DegreeUnstable,
    NotDominant,
    PolyMap,
    UnsupportedMap,
    classify,
    closed_form_milnor,
    critical_locus,
    degree_report,
    family_thmA,
    family_thmB,
    family_thmB1,
    family_thmD,
    fibre_count,
    milnor_multiset,
    normal_form_map,
    parse_map_spec,
    properness_test,
    random_affine_automorphism,
    topological_degree,
    verify_branch_containment,
)

x, y = MultiPoly.gens(2)


def test_family_shapes():
    f = family_thmB(3, 2)
    assert f.components == (x, y**3 - 3 * x**2 * y)
    assert f.jacobian == 3 * y**2 - 3 * x**2
    assert family_thmA(3).components == (x * y + x + y, x**2 * y)
    g = family_thmD(3, (2, 2))
    assert g.n == 3 and g.family == "thmD"


@pytest.mark.parametrize("d", range(3, 7))
def test_degree_thmA(d):
    assert topological_degree(family_thmA(d)) == d


@pytest.mark.parametrize("d,a", [(3, 2), (4, 3), (5, 4), (6, 2)])
def test_degree_thmB(d, a):
    assert topological_degree(family_thmB(d, a)) == d


def test_degree_other_families():
    assert topological_degree(family_thmB1(4, 1)) == 5
    assert topological_degree(family_thmD(3, (2, 2))) == 3
    assert topological_degree(normal_form_map("f_5")) == 5
    assert topological_degree(normal_form_map("f_2,1,2")) == 8


@pytest.mark.parametrize("name,order", [("ft4", 24), ("ft12", 48), ("ft8", 96)])
def test_degree_small_normal_forms_both_modes(name, order):
    f = normal_form_map(name)
    assert topological_degree(f, "exact") == order
    rep = degree_report(f, "modp", seed=1)
    assert rep.degree == order
    assert all(len(ps) == 3 for ps in rep.primes)


def test_degree_three_dimensional_product():
    assert topological_degree(normal_form_map("ft4", 3)) == 24


def test_degree_errors():
    with pytest.raises(NotDominant):
        topological_degree(PolyMap((x + y, x + y)))
    with pytest.raises(ValueError):
        topological_degree(family_thmA(3), mode="fast")
    a, b, c = MultiPoly.gens(3)
    with pytest.raises(UnsupportedMap):
        topological_degree(PolyMap((a**2 + b * c, b**2 + a * c, c**2 + a * b)))
    assert DegreeUnstable.__mro__[1] is RuntimeError


def test_fibre_count_at_specific_target():
    f = family_thmB(3, 2)
    assert fibre_count(f, [1, 5]) == 3


def test_critical_locus_and_milnor_multiset():
    f = family_thmB(4, 3)
    assert critical_locus(f) == f.jacobian
    assert milnor_multiset(f) == ([(4 - 2) * (3 - 1)], None)
    assert closed_form_milnor(f) == 4
    ms, note = milnor_multiset(family_thmB1(4, 2))
    assert ms == [9] and note is None


def test_properness_certificates():
    assert properness_test(family_thmB(3, 2)).status == "Proper"
    assert properness_test(normal_form_map("ft4")).certificate == "leading-forms"
    assert properness_test(family_thmA(3)).status == "Unknown"


def test_branch_containment_of_maps():
    f = normal_form_map("f_3")
    assert verify_branch_containment(f, y)
    assert not verify_branch_containment(f, x - 1)


def test_classifier_certificates():
    r = classify(family_thmB(3, 2), family_thmB(3, 3))
    assert r.verdict == "NotEquivalent"
    assert r.witness == {"invariant": "milnor", "left": [1], "right": [2]}
    r = classify(family_thmB1(4, 1), family_thmB1(4, 2))
    assert r.verdict == "NotEquivalent"
    assert r.witness["invariant"] == "kang_tag"
    assert (r.witness["left"], r.witness["right"]) == ("1", "16")
    assert classify(family_thmB1(4, 1), family_thmB1(4, root_of_unity(4))).verdict == "Inconclusive"
    assert classify(normal_form_map("f_2,1,2"), normal_form_map("f_4,4,2")).verdict == "Inconclusive"


def test_classifier_degree_and_closed_form_witnesses():
    r = classify(family_thmB(3, 2), family_thmB(4, 2))
    assert r.witness["invariant"] == "topological_degree"
    r = classify(family_thmD(3, (2, 2)), family_thmD(3, (2, 3)))
    assert r.verdict == "NotEquivalent" and r.witness["invariant"] == "milnor_closed_form"
    with pytest.raises(ValueError):
        classify(family_thmA(3), family_thmD(3, (2, 2)))


def test_parse_map_spec_and_json_roundtrip(tmp_path):
    for text in ["thmA:3", "thmB:3,2", "thmB1:4,zeta(4)", "thmD:3,2,2", "ft4", "f_4,4,2", "ft4@3"]:
        f = parse_map_spec(text)
        g = PolyMap.from_json(json.loads(json.dumps(f.to_json())))
        assert g.components == f.components
        assert g.tag == f.tag
    with pytest.raises(ValueError):
        parse_map_spec("thmZ:3")


def test_map_from_plain_json():
    f = PolyMap.from_json({"components": ["x", "y^3 - 3*x^2*y"]})
    assert f.n == 2 and f.tag is None
    assert parse_poly("y^3 - 3*x^2*y", 2) == f.components[1]


# properties

SMALL_MAPS = ["thmA:3", "thmB:3,2", "thmB:3,3", "thmB:4,2", "thmB1:4,1", "thmB1:4,2", "f_3", "f_2,1,2"]


@settings(max_examples=12)
@given(st.sampled_from(SMALL_MAPS))
def test_classifier_reflexive(spec):
    f = parse_map_spec(spec)
    assert classify(f, f).verdict == "Inconclusive"


@settings(max_examples=12)
@given(st.sampled_from(SMALL_MAPS), st.sampled_from(SMALL_MAPS))
def test_classifier_symmetric(a, b):
    f, g = parse_map_spec(a), parse_map_spec(b)
    r1, r2 = classify(f, g), classify(g, f)
    assert r1.verdict == r2.verdict
    if r1.witness:
        assert r1.witness["invariant"] == r2.witness["invariant"]
        assert (r1.witness["left"], r1.witness["right"]) == (r2.witness["right"], r2.witness["left"])


@settings(max_examples=10)
@given(st.sampled_from(["thmA:3", "thmB:3,2", "thmB:4,3", "f_3", "f_2,2"]), st.integers(0, 10**6))
def test_affine_post_composition_invariance(spec, seed):
    rng = random.Random(seed)
    f = parse_map_spec(spec)
    h = random_affine_automorphism(2, rng).compose_after(f)
    assert topological_degree(h) == topological_degree(f)
    assert classify(f, h).verdict == "Inconclusive"
    k = f.compose_after(random_affine_automorphism(2, rng))
    assert classify(f, k).verdict == "Inconclusive"
