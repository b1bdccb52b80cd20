"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from singq.data import (corpus_names, load_algebra, load_diagram,
                        load_weights)


@pytest.fixture(scope="session")
def z6():
    return load_algebra("z6_singquandle.alg").structure


@pytest.fixture(scope="session")
def z6_cocycle():
    return load_weights("z6_cocycle.wgt")


@pytest.fixture(scope="session")
def z8k():
    return load_algebra("z8_k.alg").structure


@pytest.fixture(scope="session")
def z8_z6_shadow():
    return load_algebra("z8_z6_shadow.alg").structure


@pytest.fixture(scope="session")
def z8_z4_shadow_a():
    return load_algebra("z8_z4_shadow_a.alg").structure


@pytest.fixture(scope="session")
def z8_z4_shadow_b():
    return load_algebra("z8_z4_shadow_b.alg").structure


@pytest.fixture(scope="session")
def psy6():
    return load_algebra("psy6.alg").structure


@pytest.fixture(scope="session")
def psy6_boltzmann():
    return load_weights("psy6_boltzmann.wgt")


@pytest.fixture(scope="session")
def psy6_boltzmann_strong():
    return load_weights("psy6_boltzmann_strong.wgt")


@pytest.fixture(scope="session")
def one_element():
    return load_algebra("one.alg").structure


@pytest.fixture(scope="session")
def corpus():
    return {name: load_diagram(name) for name in corpus_names()}


MOVE_PAIRS = [("5k6.dgm", "5k6_poke.dgm"),
              ("4_1k.dgm", "4_1k_poke.dgm"),
              ("1l1.dgm", "1l1_poke.dgm")]


# -- brute-force coloring oracle ----------------------------------------------
#
# Enumerates the full n^{#semiarcs} assignment space as a progressively
# filtered cartesian product: arcs are added one at a time and every
# crossing constraint is applied as soon as its four ports are assigned.
# The surviving rows are exactly the constraint-satisfying assignments, so
# the result equals naive generate-and-test while staying tractable.

def _oracle(diagram, n, predicates):
    index = diagram._arc_index
    order = []
    for c in diagram.crossings:
        for port in c.ports:
            i = index[c.arcs[port]]
            if i not in order:
                order.append(i)
    pos = {arc: k for k, arc in enumerate(order)}

    pending = []
    for c in diagram.crossings:
        cols = {port: pos[index[c.arcs[port]]] for port in c.ports}
        ready_at = max(cols.values())
        pending.append((ready_at, c, cols))

    rows = np.zeros((1, 0), dtype=np.int64)
    for k in range(len(order)):
        m = rows.shape[0]
        rows = np.repeat(rows, n, axis=0)
        new_col = np.tile(np.arange(n), m).reshape(-1, 1)
        rows = np.hstack([rows, new_col])
        for ready_at, c, cols in pending:
            if ready_at != k:
                continue
            mask = predicates(c, {p: rows[:, i] for p, i in cols.items()})
            rows = rows[mask]
    # back to diagram arc order
    solutions = set()
    for row in rows:
        colors = [0] * len(order)
        for arc, k in pos.items():
            colors[arc] = int(row[k])
        solutions.add(tuple(colors))
    return sorted(solutions)


def brute_force_singquandle(diagram, s):
    star = np.array(s.star.rows)
    sinv = np.array(s.star_inv.rows)
    r1 = np.array(s.r1.rows)
    r2 = np.array(s.r2.rows)

    def predicates(c, v):
        if c.kind == "P":
            return (v["oo"] == v["oi"]) & (v["uo"] == star[v["ui"], v["oi"]])
        if c.kind == "N":
            return (v["oo"] == v["oi"]) & (v["uo"] == sinv[v["ui"], v["oi"]])
        return ((v["o1"] == r1[v["i1"], v["i2"]])
                & (v["o2"] == r2[v["i1"], v["i2"]]))

    return _oracle(diagram, s.n, predicates)


def brute_force_psyquandle(diagram, p):
    ut = np.array(p.ut.rows)
    ot = np.array(p.ot.rows)
    ub = np.array(p.ub.rows)
    ob = np.array(p.ob.rows)

    def predicates(c, v):
        if c.kind == "P":
            return ((v["oo"] == ot[v["oi"], v["ui"]])
                    & (v["uo"] == ut[v["ui"], v["oi"]]))
        if c.kind == "N":
            return ((v["oi"] == ot[v["oo"], v["uo"]])
                    & (v["ui"] == ut[v["uo"], v["oo"]]))
        return ((v["o1"] == ob[v["i2"], v["i1"]])
                & (v["o2"] == ub[v["i1"], v["i2"]]))

    return _oracle(diagram, p.n, predicates)
