import numpy as np
import pytest
from hypothesis import given, strategies as st

from linksym.groups import GroupDomainError, generate, symmetric
from linksym.link_model import (
    HOPF,
    LinkingMatrix,
    act_on_linking_matrix,
    random_linking_matrix,
    stabilizer,
    sym_upper_bound,
)
from linksym.whitten import (
    LinkRecord,
    WhittenElement,
    act_on_link,
    from_perm,
    gamma_group,
    gamma_mul,
    to_perm,
)

import oracles

CHAIN = LinkingMatrix.from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def elements(n):
    return st.builds(WhittenElement, st.sampled_from([1, -1]),
                     st.tuples(*[st.sampled_from([1, -1])] * n), st.permutations(range(n)).map(tuple))


def matrices(n):
    return st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda xs: LinkingMatrix.from_rows(
            [[0 if i == j else xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]))


def test_validation():
    with pytest.raises(GroupDomainError):
        LinkingMatrix.from_rows([[0, 1], [2, 0]])
    with pytest.raises(GroupDomainError):
        LinkingMatrix.from_rows([[1, 0], [0, 0]])
    with pytest.raises(GroupDomainError):
        LinkingMatrix.from_json({"n": 3, "lk": [[0, 1], [1, 0]]})


def test_action_examples():
    e = WhittenElement.identity(2)
    assert act_on_linking_matrix(e, HOPF) == HOPF
    mirror = WhittenElement(-1, (1, 1), (0, 1))
    assert act_on_linking_matrix(mirror, HOPF).entries == ((0, -1), (-1, 0))


def test_stabilizer_examples():
    assert stabilizer(LinkingMatrix.zero(2)).order == 16
    hopf = stabilizer(HOPF)
    assert hopf.order == 8
    G = gamma_group(2)
    for i in hopf.members:
        s = from_perm(G.element(i), 2)
        assert s.eta * s.eps[0] * s.eps[1] == 1
    assert {from_perm(G.element(i), 2).rho for i in hopf.members} == {(0, 1), (1, 0)}
    chain = stabilizer(CHAIN)
    G3 = gamma_group(3)
    assert {from_perm(G3.element(i), 3).rho for i in chain.members} <= {(0, 1, 2), (2, 1, 0)}


def test_sym_upper_bound_examples():
    assert sym_upper_bound(LinkingMatrix.zero(3)).elements == symmetric(3).elements
    assert sym_upper_bound(HOPF).elements == [(0, 1), (1, 0)]
    assert sym_upper_bound(CHAIN).elements == [(0, 1, 2), (2, 1, 0)]


def test_stabilizer_range():
    with pytest.raises(GroupDomainError):
        stabilizer(LinkingMatrix.zero(6))


@given(st.data())
def test_action_law_against_record_oracle(data):
    n = data.draw(st.integers(1, 5))
    s, t = data.draw(elements(n)), data.draw(elements(n))
    lk = data.draw(matrices(n))
    st_lk = act_on_linking_matrix(gamma_mul(s, t), lk)
    assert st_lk == act_on_linking_matrix(s, act_on_linking_matrix(t, lk))
    record = act_on_link(gamma_mul(s, t), LinkRecord.standard(n))
    assert [list(r) for r in st_lk.entries] == oracles.linking_from_record(lk.entries, record)


@given(st.data())
def test_stabilizer_is_subgroup_and_equivariant(data):
    n = data.draw(st.integers(2, 3))
    lk = data.draw(matrices(n))
    s = data.draw(elements(n))
    G = gamma_group(n)
    rec = stabilizer(lk)
    assert np.array_equal(generate(G, list(rec.members)), np.array(rec.members))
    moved = stabilizer(act_on_linking_matrix(s, lk))
    si = G.index(to_perm(s))
    conj = sorted(int(G.conj(int(h), si)) for h in rec.members)
    assert conj == list(moved.members)


@given(st.data())
def test_total_reversal_with_mirror(data):
    n = data.draw(st.integers(1, 4))
    lk = data.draw(matrices(n))
    m = WhittenElement(-1, (-1,) * n, tuple(range(n)))
    # eta * eps_i * eps_j = -1 on every off-diagonal entry
    fixes = act_on_linking_matrix(m, lk) == lk
    assert fixes == all(x == 0 for row in lk.entries for x in row)
    G = gamma_group(n)
    assert (G.index(to_perm(m)) in stabilizer(lk).members) == fixes


def test_random_matrix_is_valid():
    rng = np.random.default_rng(0)
    for n in range(1, 6):
        lk = random_linking_matrix(rng, n)
        assert lk.n == n and LinkingMatrix.from_json(lk.to_json()) == lk


def test_linking_action_law_five_hundred():
    rng = np.random.default_rng(2)
    for _ in range(500):
        n = int(rng.integers(1, 6))
        def draw():
            return WhittenElement(int(rng.choice([1, -1])), tuple(int(x) for x in rng.choice([1, -1], n)),
                                  tuple(int(x) for x in rng.permutation(n)))
        s, t = draw(), draw()
        lk = random_linking_matrix(rng, n)
        assert act_on_linking_matrix(gamma_mul(s, t), lk) == act_on_linking_matrix(s, act_on_linking_matrix(t, lk))
