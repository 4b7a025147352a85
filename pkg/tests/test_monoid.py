from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magiclab.enumeration import enumerate_magic
from magiclab.graph import catalog_graph, is_magic, unit
from magiclab.monoid import (G3_TYPES, Decomposition, DecompositionError, MonoidPiece, NotInSpan,
                             all_relations_hold, builtin_decomposition, decomp_represent,
                             g2_betas, g3_classify, g3_coordinates, g3_gammas,
                             g3_inverse_transform, g3_membership, g3_pipeline, g3_transform,
                             g3_vector, gamma_relations_check, load_decomposition,
                             piece_represent, relation_holds, verify_decomposition)


def test_shift_sums():
    g3 = builtin_decomposition("G3")
    assert [p.magic_sum(p.shift) for p in g3.pieces] == [0, 1, 1, 3, 2]
    g2 = builtin_decomposition("G2")
    assert g2.pieces[1].magic_sum(g2.pieces[1].shift) == 2


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "G4"])
def test_generators_magic(name):
    d = builtin_decomposition(name)
    g = catalog_graph(name)
    for p in d.pieces:
        for v in (p.shift, *p.generators):
            assert is_magic(g, v) is not None


def test_piece_represent_examples():
    gam = g3_gammas()
    tb = builtin_decomposition("G3").pieces[1]
    assert piece_represent(tb, gam[8]) == (0,) * 5
    g1 = builtin_decomposition("G1").pieces[0]
    a1, _, a3 = g1.generators
    alpha = tuple(2 * x + 3 * y for x, y in zip(a1, a3))
    assert piece_represent(g1, alpha) == (2, 0, 3)
    b1 = builtin_decomposition("G2").pieces[0]
    assert piece_represent(b1, g2_betas()[5]) is None


def test_decomp_represent_examples():
    gam = g3_gammas()
    d3 = builtin_decomposition("G3")
    assert decomp_represent(d3, gam[5]) == (0, (0, 0, 0, 0, 1))
    assert decomp_represent(d3, gam[6]) == (2, (0,) * 5)
    assert decomp_represent(builtin_decomposition("G2"), g2_betas()[5]) == (1, (0,) * 4)


def test_dependent_generators_rejected():
    g = catalog_graph("G1")
    a = unit(6, 1, 3)
    with pytest.raises(DecompositionError):
        MonoidPiece(g, (0,) * 6, [a, a])


@pytest.mark.parametrize("name,S,counts", [
    ("G1", 7, [1, 3, 6, 10, 15, 21, 28, 36]),
    ("G2", 4, [1, 4, 11, 23, 42]),
    ("G3", 4, [1, 5, 18, 46, 101]),
    ("G4", 4, [1, 6, 21, 55, 120]),
])
def test_verify_builtin(name, S, counts):
    rep = verify_decomposition(catalog_graph(name), builtin_decomposition(name), S)
    assert rep.ok
    assert rep.per_sum == counts
    assert rep.converse_checked == sum(counts)
    assert rep.summary() == f"{sum(counts)} labellings, 0 failures"


def test_verify_detects_missing_piece():
    d = builtin_decomposition("G2")
    broken = Decomposition(d.graph, d.pieces[:1])
    rep = verify_decomposition(d.graph, broken, 2)
    assert not rep.ok
    assert [f.alpha for f in rep.failures] == [g2_betas()[5]]


def test_verify_detects_overlap():
    d = builtin_decomposition("G1")
    dup = Decomposition(d.graph, d.pieces * 2)
    rep = verify_decomposition(d.graph, dup, 2)
    assert len(rep.failures) == 10
    assert rep.converse_failures


def test_decomposition_file(tmp_path):
    d = builtin_decomposition("G3")
    p = tmp_path / "g3.json"
    p.write_text(d.to_json())
    back = load_decomposition(p)
    assert [(x.shift, x.generators) for x in back.pieces] == \
        [(x.shift, x.generators) for x in d.pieces]
    assert back.graph_name == "G3"


def test_g3_coordinates():
    gam = g3_gammas()
    assert tuple(g3_coordinates(gam[1])) == (1, 0, 0, 0, 0)
    assert tuple(g3_coordinates(gam[8])) == (1, 0, 0, 1, -1)
    with pytest.raises(NotInSpan):
        g3_coordinates(unit(12, 1))
    for i in range(1, 6):
        k = [0] * 5
        k[i - 1] = 1
        assert g3_vector(k) == gam[i]


def test_g3_membership_and_classes():
    assert g3_membership((1, 0, 0, 1, -1))
    assert not g3_membership((0, 0, 0, 0, -1))
    assert g3_membership((1, 1, 1, 1, 0))
    assert g3_classify((1, 0, 0, 1, -1)) == "b"
    assert g3_classify((0, 1, 1, 0, 2)) == "a"
    assert g3_classify((2, 1, 1, 1, -2)) == "c1"
    assert g3_transform((1, 0, 0, 1, -1), "b") == ("Tb", (0,) * 5)
    assert g3_transform((3, 1, 4, 1, 5), "a") == ("Ta", (3, 1, 4, 1, 5))
    tag, l = g3_transform((2, 1, 1, 1, -2), "c1")
    assert tag == "Tc1" and min(l) >= 0
    piece = builtin_decomposition("G3").pieces[2]
    assert piece.element(l) == g3_vector((2, 1, 1, 1, -2))
    with pytest.raises(ValueError):
        g3_transform((1, 0, 0, 1, -1), "a")


def test_g3_pipeline_all_sums_upto_6():
    d = builtin_decomposition("G3")
    g = catalog_graph("G3")
    seen = set()
    for s in range(7):
        for alpha in enumerate_magic(g, s):
            idx, l = g3_pipeline(alpha)
            assert (idx, l) == decomp_represent(d, alpha)
            assert tuple(g3_inverse_transform("T" + G3_TYPES[idx], l)) == \
                tuple(g3_coordinates(alpha))
            seen.add(idx)
    assert seen == set(range(5))
    assert g3_pipeline(g3_gammas()[8]) == (1, (0,) * 5)


def test_gamma_relations():
    flags = gamma_relations_check()
    assert len(flags) == 7 and all(flags.values())
    assert all_relations_hold()
    assert relation_holds(5, {1: 1, 4: 1, 8: -1})
    assert relation_holds(1, {2: 1, 3: 1, 4: 1, 6: 1, 7: -2})
    # without -gamma_4 the c2 identity is false
    assert not relation_holds(1, {2: 1, 3: 1, 6: -1, 8: 2})
    gam = dict(g3_gammas())
    gam[8] = tuple(x + (i == 0) for i, x in enumerate(gam[8]))
    assert not gamma_relations_check(gam)["b.1"]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["G1", "G2", "G3", "G4"]), st.data())
def test_piece_element_round_trip(name, data):
    d = builtin_decomposition(name)
    i = data.draw(st.integers(0, len(d.pieces) - 1))
    p = d.pieces[i]
    l = tuple(data.draw(st.lists(st.integers(0, 5), min_size=p.d, max_size=p.d)))
    alpha = p.element(l)
    assert is_magic(d.graph, alpha) is not None
    assert piece_represent(p, alpha) == l
    assert decomp_represent(d, alpha) == (i, l)
    assert p.solve(alpha) == [Fraction(x) for x in l]
