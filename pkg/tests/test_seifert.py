import pytest
from hypothesis import assume, given, strategies as st

from linksym.seifert import (
    AttachData,
    BoundaryMap,
    InvariantViolation,
    build_plain_swap,
    build_swap,
    build_twist,
    check_transposition,
    compose,
    det,
    fiber_intersection,
    matmul,
    sweep,
    valid_attach_data,
)

ints = st.integers(-20, 20)


def test_swap_w0_is_plain_swap():
    g = build_swap(0)
    assert g.pairing == (1, 0)
    assert g.matrices == (((1, 0), (0, 1)), ((1, 0), (0, 1)))
    assert g == build_plain_swap()


def test_swap_w1_images():
    g = build_swap(1)
    assert g.image(0, (0, 1)) == (1, (1, 1))  # g1 -> g2 + f2
    assert g.image(0, (1, 0)) == (1, (1, 0))  # f1 -> f2
    assert g.image(1, (0, 1)) == (0, (-1, 1))  # g2 -> g1 - f1


@given(ints)
def test_swap_is_an_involution(w):
    assert compose(build_swap(w), build_swap(w)).is_identity()


@given(ints)
def test_swap_then_opposite_swap_is_a_double_twist(w):
    # swap(-w) followed by swap(w) returns each torus to itself with a 2w twist
    assert compose(build_swap(w), build_swap(-w)) == build_twist(2 * w)


@given(ints)
def test_matrices_are_unimodular(w):
    for m in build_swap(w).matrices + build_twist(w).matrices:
        assert abs(det(m)) == 1


@given(ints, ints, ints)
def test_twist_fixes_fibers_and_shears_sections(w, a, b):
    t = build_twist(w)
    assert t.pairing == (0, 1)
    for torus, sign in ((0, -1), (1, 1)):
        assert t.image(torus, (1, 0)) == (torus, (1, 0))
        _, (x, y) = t.image(torus, (a, b))
        assert y == b and x - a == sign * w * b


def test_boundary_map_validation():
    with pytest.raises(InvariantViolation):
        BoundaryMap((((2, 0), (0, 1)), ((1, 0), (0, 1))), (0, 1))
    with pytest.raises(InvariantViolation):
        BoundaryMap((((1, 0), (0, 1)), ((1, 0), (0, 1))), (0, 0))


def test_check_transposition_examples():
    assert check_transposition(AttachData(1, 1, 0, 1), 0)
    assert check_transposition(AttachData(1, 1, 0, 1), 3)
    with pytest.raises(InvariantViolation):
        check_transposition(AttachData(1, 0, 0, 1), 1)
    with pytest.raises(InvariantViolation):
        check_transposition(AttachData(2, 1, 1, 2), 0)  # determinant 3


def _unimodular(shears, flip):
    m = ((1, 0), (0, 1)) if not flip else ((0, 1), (1, 0))
    for upper, k in shears:
        e = ((1, k), (0, 1)) if upper else ((1, 0), (k, 1))
        m = matmul(m, e)
    return m


attach_data = st.builds(_unimodular, st.lists(st.tuples(st.booleans(), st.integers(-3, 3)), max_size=6),
                        st.booleans()).map(lambda m: AttachData(m[0][0], m[0][1], m[1][0], m[1][1]))


@given(attach_data, ints)
def test_check_transposition_holds_for_valid_data(a, w):
    assume(a.beta != 0)
    assert check_transposition(a, w)


def test_fiber_intersection():
    assert fiber_intersection(AttachData(2, 3, 1, 2)) == 3
    assert fiber_intersection(AttachData(1, 0, 0, 1)) == 0
    assert AttachData(1, 0, 0, 1).violations()


@given(ints, ints, ints, ints)
def test_fiber_intersection_is_a_determinant(alpha, beta, delta, gamma):
    a = AttachData(alpha, beta, delta, gamma)
    # the determinant of the coordinate rows of lambda and f
    assert fiber_intersection(a) == abs(det(((alpha, beta), (1, 0))))


def test_valid_attach_data_counts():
    data = list(valid_attach_data(1))
    assert all(abs(a.alpha * a.gamma - a.beta * a.delta) == 1 and a.beta for a in data)
    # brute count over {-1,0,1}^4
    assert len(data) == 28


def test_sweep_small():
    r = sweep(2, 2)
    assert r["flag"] and not r["failures"]
    assert [row["w"] for row in r["grid"]] == [-2, -1, 0, 1, 2]
    assert len({row["checked"] for row in r["grid"]}) == 1
