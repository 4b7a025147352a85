import pytest

from magiclab.enumeration import count_distinct, enumerate_magic
from magiclab.graph import Graph, catalog_graph, is_magic
from magiclab.symmetry import (PermGroup, SymmetryError, act, automorphisms, compose, d6_group_g4,
                               inverse, load_group, orbit_count, orbits, trivial_group)
from oracles import brute_automorphism_count


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "G4", "G5a", "G5b"])
def test_automorphism_orders(name):
    g = catalog_graph(name)
    assert len(automorphisms(g)) == brute_automorphism_count(g.m, g.edges)


def test_known_orders(graphs):
    assert len(automorphisms(graphs["G1"])) == 24
    assert len(automorphisms(graphs["G4"])) == 72
    assert len(automorphisms(graphs["G5b"])) >= 1


def test_d6(graphs):
    d6 = d6_group_g4()
    assert len(d6) == 12
    assert d6.is_subgroup_of(automorphisms(graphs["G4"]))
    with pytest.raises(SymmetryError):
        d6_group_g4(graphs["G1"])


@pytest.mark.parametrize("name", ["G1", "G2", "G3", "G4"])
def test_action_preserves_magic(name):
    g = catalog_graph(name)
    labs = enumerate_magic(g, 2)
    for p in automorphisms(g).elements:
        for lab in labs:
            assert is_magic(g, act(p, lab)) == 2


def test_group_axioms():
    grp = d6_group_g4()
    e = tuple(range(1, 10))
    for p in grp.elements:
        assert compose(p, inverse(p)) == e
        for q in grp.elements:
            assert act(compose(p, q), (1, 2, 3, 4, 5, 6, 7, 8, 9)) == \
                act(p, act(q, (1, 2, 3, 4, 5, 6, 7, 8, 9)))
    with pytest.raises(SymmetryError):
        PermGroup(3, [(1, 2, 3), (2, 3, 1)])
    with pytest.raises(SymmetryError):
        PermGroup(3, [(2, 1, 3)])


def test_s12_orbits_under_d6(graphs):
    labs = enumerate_magic(graphs["G4"], 12, distinct=True)
    count, reps = orbit_count(labs, d6_group_g4())
    assert count == 6
    assert reps == sorted(reps) and all(r in labs for r in reps)
    assert orbit_count(labs, trivial_group(9))[0] == 72


def test_orbit_sizes_and_divisibility(graphs):
    g4 = graphs["G4"]
    d6 = d6_group_g4()
    full = automorphisms(g4)
    for s in range(12, 17):
        labs = enumerate_magic(g4, s, distinct=True)
        assert len(labs) % 72 == 0
        for grp in (d6, full):
            orb = orbits(labs, grp)
            assert sum(len(m) for m in orb.values()) == len(labs)
            assert all(len(grp) % len(m) == 0 for m in orb.values())
        assert orbit_count(labs, d6)[0] % 6 == 0


def test_e_divisible_by_72(graphs):
    for s in range(0, 21):
        assert count_distinct(graphs["G4"], s) % 72 == 0


def test_group_file(tmp_path):
    grp = d6_group_g4()
    p = tmp_path / "d6.json"
    p.write_text(grp.to_json())
    assert load_group(p).elements == grp.elements
    p.write_text("[]")
    with pytest.raises(SymmetryError):
        load_group(p)


def test_parallel_edges_and_limits():
    # parallel edges map in order, so both vertex maps give the identity on edges
    g = Graph("multi", 2, ((1, 2), (1, 2)))
    assert automorphisms(g).elements == ((1, 2),)
    big = Graph("path", 11, tuple((i, i + 1) for i in range(1, 11)))
    with pytest.raises(SymmetryError):
        automorphisms(big)
