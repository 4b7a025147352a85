import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magiclab.enumeration import (count_distinct, count_magic, count_series, enumerate_distinct,
                                  enumerate_magic, multivariate_truncation, search_order)
from magiclab.graph import Graph, catalog_graph, is_magic, unit
from magiclab.kernel import BACKENDS, get_backend
from magiclab.series import MultiSeries
from oracles import binomial_series, brute_labellings

KNOWN_COUNTS = {
    "G1": [1, 3, 6, 10, 15, 21, 28, 36],
    "G2": [1, 4, 11, 23, 42, 69, 106],
    "G3": [1, 5, 18, 46, 101, 193],
    "G4": [1, 6, 21, 55, 120, 231, 406],
}


@pytest.mark.parametrize("name", sorted(KNOWN_COUNTS))
def test_known_counts(name, backend):
    vals = KNOWN_COUNTS[name]
    assert list(count_series(catalog_graph(name), len(vals) - 1, backend=backend)) == vals


@pytest.mark.parametrize("name,S", [("G1", 4), ("G2", 3), ("G4", 3), ("G5a", 3), ("G5b", 4)])
def test_against_brute_force(name, S, backend):
    g = catalog_graph(name)
    for s in range(S + 1):
        assert enumerate_magic(g, s, backend=backend) == sorted(brute_labellings(g.m, g.edges, s))


def test_g1_binomial(graphs):
    assert list(count_series(graphs["G1"], 12)) == binomial_series(3, 12)


def test_small_cases(graphs):
    g1 = graphs["G1"]
    assert set(enumerate_magic(g1, 1)) == {unit(6, 2, 4), unit(6, 1, 3), unit(6, 5, 6)}
    assert enumerate_magic(g1, 0) == [(0,) * 6]
    for s in range(1, 6):
        assert enumerate_magic(graphs["G5a"], s) == []


def test_distinct(graphs, backend):
    g4 = graphs["G4"]
    assert count_distinct(g4, 12, backend=backend) == 72
    assert count_distinct(g4, 11, backend=backend) == 0
    assert count_distinct(g4, 13, backend=backend) == 144
    for name in ("G1", "G2", "G3"):
        assert all(count_distinct(graphs[name], s, backend=backend) == 0 for s in range(8))


def test_distinct_is_filter(graphs):
    g4 = graphs["G4"]
    for s in (12, 13):
        full = enumerate_magic(g4, s)
        assert enumerate_distinct(g4, s) == [x for x in full if len(set(x)) == len(x)]


def test_backends_agree(graphs):
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    for name in ("G2", "G3", "G4"):
        g = graphs[name]
        for s in range(6):
            assert enumerate_magic(g, s, backend="python") == enumerate_magic(g, s, backend="cython")
    for s in range(12, 17):
        assert count_distinct(graphs["G4"], s, backend="python") == \
            count_distinct(graphs["G4"], s, backend="cython")


def test_threads_do_not_change_output(graphs):
    g = graphs["G3"]
    for s in range(5):
        assert enumerate_magic(g, s, threads=1) == enumerate_magic(g, s, threads=4)
        assert count_magic(g, s, threads=1) == count_magic(g, s, threads=3)


def test_first_value_split(backend):
    impl = get_backend(backend)
    g = catalog_graph("G2")
    order = search_order(g)
    eu = [u - 1 for u, _ in g.edges]
    ev = [v - 1 for _, v in g.edges]
    total = sum(impl.count(g.m, eu, ev, list(order), 4, False, f) for f in range(5))
    assert total == count_magic(g, 4)


def test_loops_and_isolated(backend):
    loop = Graph("loops", 2, ((1, 1), (1, 2), (2, 2)))
    for s in range(5):
        labs = enumerate_magic(loop, s, backend=backend)
        assert labs == sorted(brute_labellings(2, loop.edges, s))
        assert len(labs) == s + 1
    iso = Graph("iso", 3, ((1, 2),))
    assert count_magic(iso, 0, backend=backend) == 1
    assert count_magic(iso, 2, backend=backend) == 0


def test_multivariate_small(graphs):
    g5b = graphs["G5b"]
    f = multivariate_truncation(g5b, 2)
    assert f == MultiSeries.geometric((1, 0, 0, 1), 1, 2)
    g1 = multivariate_truncation(graphs["G1"], 1)
    assert set(g1.terms) == {(0, (0,) * 6), (1, unit(6, 2, 4)), (1, unit(6, 1, 3)),
                             (1, unit(6, 5, 6))}
    assert len(multivariate_truncation(graphs["G4"], 0)) == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["G1", "G2", "G3", "G4", "G5b"]), st.integers(0, 4))
def test_invariants(name, S):
    g = catalog_graph(name)
    f = multivariate_truncation(g, S)
    counts = count_series(g, S)
    assert len(f) == sum(counts)
    assert counts[0] == 1
    for s in range(S + 1):
        labs = enumerate_magic(g, s)
        assert labs == sorted(set(labs))
        assert all(is_magic(g, x) == s for x in labs)
        assert count_distinct(g, s) <= counts[s]


def test_regular_shift_bijection(graphs):
    # labellings of sum s correspond to positive labellings of sum s + 3
    g = graphs["G2"]
    for s in range(4):
        pos = [x for x in enumerate_magic(g, s + 3) if min(x) > 0]
        assert len(pos) == count_magic(g, s)


def _probe(code, **env):
    import os
    import subprocess
    import sys
    full = dict(os.environ, **env)
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env=full).stdout.strip()


def test_fallback_when_extension_missing():
    code = ("import sys; sys.modules['magiclab._ckernel'] = None\n"
            "from magiclab import kernel, count_magic, catalog_graph\n"
            "print(kernel.BACKEND, count_magic(catalog_graph('G4'), 6))")
    assert _probe(code) == "python 406"


def test_backend_env_override():
    code = "from magiclab.kernel import BACKEND; print(BACKEND)"
    assert _probe(code, MAGICLAB_BACKEND="python") == "python"
    if "cython" in BACKENDS:
        assert _probe(code) == "cython"
    with pytest.raises(ValueError):
        get_backend("fortran")
