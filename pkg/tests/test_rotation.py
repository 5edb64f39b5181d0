import pytest

from linksym.groups import (
    GroupDomainError,
    alternating,
    central_quotient,
    cyclic,
    isomorphic,
    simple_nonabelian_quotients,
    special_linear_2,
    subgroup_group,
    symmetric,
)
from linksym.rotation import (
    GroupSpec,
    binary_catalog,
    binary_group,
    dicyclic,
    projection_lemma_check,
    rotation_image,
    so3_catalog,
    so3_group,
    so4_covering,
    so4_model,
    verify_a5_only,
)
from linksym.subgroups import all_subgroups


def test_so3_catalog_orders():
    cat = so3_catalog(6)
    assert all(s.realization.order == s.expected_order for s in cat)
    names = [s.name for s in cat]
    assert names[:6] == [f"Cyclic({n})" for n in range(1, 7)]
    assert names[-3:] == ["Tetrahedral", "Octahedral", "Icosahedral"]


def test_so3_examples():
    ico = so3_group("Icosahedral").realization
    assert ico.order == 60 and [q.name for q in simple_nonabelian_quotients(ico)] == ["A5"]
    d3 = so3_group("Dihedral", 3).realization
    assert d3.order == 6 and not d3.is_abelian()
    assert isomorphic(so3_group("Tetrahedral").realization, alternating(4))


def test_catalog_rejects_zero():
    with pytest.raises(GroupDomainError):
        so3_catalog(0)
    with pytest.raises(GroupDomainError):
        binary_catalog(0)


@pytest.mark.parametrize("spec", binary_catalog(12), ids=lambda s: s.name)
def test_binary_cover_quotients(spec):
    G = spec.realization
    assert G.order == spec.expected_order
    z = spec.center
    assert G.element_orders[z] == 2
    assert all(G.mul(z, g) == G.mul(g, z) for g in G.generator_indices)
    assert isomorphic(central_quotient(G, z), rotation_image(spec).realization)


def test_binary_examples():
    I = binary_group("BinaryIcosahedral")
    assert I.realization.order == 120
    assert isomorphic(central_quotient(I.realization, I.center), alternating(5))
    C = binary_group("BinaryCyclic", 3)
    assert isomorphic(C.realization, cyclic(6)) and central_quotient(C.realization, C.center).order == 3
    T = binary_group("BinaryTetrahedral").realization
    assert T.order == 24 and not isomorphic(T, symmetric(4))
    assert T.order_histogram() != symmetric(4).order_histogram()


def test_binary_groups_have_a_single_involution():
    for spec in binary_catalog(8):
        if spec.kind == "BinaryCyclic":
            continue
        assert int((spec.realization.element_orders == 2).sum()) == 1, spec.name


def test_binary_octahedral_contains_binary_tetrahedral():
    O = binary_group("BinaryOctahedral").realization
    index_two = [r for r in all_subgroups(O) if r.order == 24]
    SL23, _ = special_linear_2(3)
    assert any(isomorphic(subgroup_group(O, r.indices()), SL23) for r in index_two)
    assert not isomorphic(O, special_linear_2(3)[0]) and O.order == 48


def test_dicyclic_small():
    Q8, z = dicyclic(2)
    assert Q8.order == 8 and int((Q8.element_orders == 4).sum()) == 6


def test_so4_models():
    T = binary_group("BinaryTetrahedral")
    I = binary_group("BinaryIcosahedral")
    MT = so4_model(T, T)
    assert MT.order == 288 and simple_nonabelian_quotients(MT) == []
    MI = so4_model(I, I)
    assert MI.order == 7200
    assert [q.name for q in simple_nonabelian_quotients(MI)] == ["A5"]
    mixed = so4_model(T, I)
    assert mixed.order == 1440 and [q.name for q in simple_nonabelian_quotients(mixed)] == ["A5"]


def test_so4_requires_binary():
    with pytest.raises(GroupDomainError):
        so4_model(so3_group("Tetrahedral"), binary_group("BinaryTetrahedral"))


@pytest.mark.parametrize("a,b", [("BinaryTetrahedral", "BinaryTetrahedral"), ("BinaryOctahedral", "BinaryCyclic"),
                                 ("BinaryIcosahedral", "BinaryDihedral")])
def test_so4_covering(a, b):
    H1 = binary_group(a, 3 if "Cyclic" in a or "Dihedral" in a else None)
    H2 = binary_group(b, 3 if "Cyclic" in b or "Dihedral" in b else None)
    image, kernel = so4_covering(H1, H2)
    assert kernel == 2
    assert image == H1.realization.order * H2.realization.order // 4


def test_verify_a5_only():
    r = verify_a5_only(30)
    assert r["flag"] and r["quotients"] == ["A5"]
    hits = [e for e in r["entries"] if e["quotients"]]
    assert [(e["group"], e["order"]) for e in hits] == [("Icosahedral", 60)]


def test_verify_a5_only_families():
    assert verify_a5_only(20, kinds={"Dihedral"})["quotients"] == []
    assert verify_a5_only(20, kinds={"Cyclic"})["quotients"] == []
    no_ico = verify_a5_only(30, kinds={"Cyclic", "Dihedral", "Tetrahedral", "Octahedral"})
    assert no_ico["quotients"] == [] and no_ico["flag"]


def test_verify_a5_only_bounds():
    with pytest.raises(GroupDomainError):
        verify_a5_only(61)


POOL_1 = ["C2", "C6", "S3", "A4", "S4", "A5"]
POOL_2 = ["C2", "C6", "S3", "A4", "A5"]
MAKE = {"C2": lambda: cyclic(2), "C6": lambda: cyclic(6), "S3": lambda: symmetric(3),
        "A4": lambda: alternating(4), "S4": lambda: symmetric(4), "A5": lambda: alternating(5)}


@pytest.mark.parametrize("a", POOL_1)
@pytest.mark.parametrize("b", POOL_2)
def test_projection_lemma(a, b):
    r = projection_lemma_check(MAKE[a](), MAKE[b](), names=(a, b))
    assert r["flag"], r
    assert r["pair"] == [a, b]
    if "A5" not in (a, b):
        assert r["cells"] == []


def test_projection_lemma_a5_c2_uses_first_factor():
    r = projection_lemma_check(alternating(5), cyclic(2))
    assert r["cells"]
    assert all(w == 1 for c in r["cells"] for w in c["witness_factor"])


def test_projection_lemma_diagonal():
    A = alternating(5)
    r = projection_lemma_check(A, A)
    full = len(all_subgroups(A)) - 1
    diag = [c for c in r["cells"] if c["cell"] == [full, 0, full, 0]]
    assert len(diag) == 120
    assert all(c["order"] == 60 and c["quotients"] == ["A5"] for c in diag)


def test_group_spec_names():
    s = GroupSpec("Dihedral", 4, so3_group("Dihedral", 4).realization)
    assert s.name == "Dihedral(4)" and not s.is_binary and s.expected_order == 8
