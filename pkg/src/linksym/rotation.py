"""Finite rotation groups, their binary covers, and the simple-quotient lemmas.

Everything here is abstract group theory on permutation models:

* the finite subgroups of SO(3) (cyclic, dihedral, A4, S4, A5),
* their preimages in SU(2), built over small prime fields or from the
  dicyclic presentation, each with its central involution ``-1``,
* SO(4) subgroups modeled as ``(H1 x H2) / <(-1, -1)>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import (
    EnumerationTooLarge,
    FiniteGroup,
    GroupDomainError,
    SimpleLabel,
    alternating,
    central_quotient,
    closure,
    cyclic,
    dihedral,
    direct_product,
    from_multiplication,
    generate,
    is_normal,
    is_solvable,
    mask_of,
    maximal_normal_with_simple_nonabelian_quotient,
    quotient_with_map,
    simple_nonabelian_quotients,
    special_linear_2,
    subgroup_group,
    symmetric,
    with_generating_set,
)
from .subgroups import PRODUCT_CAP, _lattice, conjugacy_classes_of_subgroups, goursat_cells

A5_LABEL = simple_nonabelian_quotients(alternating(5))[0]

SO3_ORDERS = {"Cyclic": lambda n: n, "Dihedral": lambda n: 2 * n, "Tetrahedral": lambda n: 12,
              "Octahedral": lambda n: 24, "Icosahedral": lambda n: 60}
BINARY_OF = {"BinaryCyclic": "Cyclic", "BinaryDihedral": "Dihedral", "BinaryTetrahedral": "Tetrahedral",
             "BinaryOctahedral": "Octahedral", "BinaryIcosahedral": "Icosahedral"}


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int | None
    realization: FiniteGroup = field(compare=False, repr=False)
    center: int | None = None  # index of the central involution (binary kinds)

    @property
    def name(self) -> str:
        return f"{self.kind}({self.n})" if self.n is not None else self.kind

    @property
    def is_binary(self) -> bool:
        return self.kind in BINARY_OF

    @property
    def expected_order(self) -> int:
        if self.is_binary:
            return 2 * SO3_ORDERS[BINARY_OF[self.kind]](self.n)
        return SO3_ORDERS[self.kind](self.n)


# ---------------------------------------------------------------------------
# SO(3)


def so3_group(kind: str, n: int | None = None) -> GroupSpec:
    make = {
        "Cyclic": lambda: cyclic(n),
        "Dihedral": lambda: dihedral(n),
        "Tetrahedral": lambda: alternating(4),
        "Octahedral": lambda: symmetric(4),
        "Icosahedral": lambda: alternating(5),
    }[kind]
    return GroupSpec(kind, n if kind in ("Cyclic", "Dihedral") else None, make())


def so3_catalog(max_n: int) -> list[GroupSpec]:
    if max_n < 1:
        raise GroupDomainError("max_n must be at least 1")
    out = [so3_group("Cyclic", n) for n in range(1, max_n + 1)]
    out += [so3_group("Dihedral", n) for n in range(2, max_n + 1)]
    out += [so3_group(k) for k in ("Tetrahedral", "Octahedral", "Icosahedral")]
    return out


# ---------------------------------------------------------------------------
# binary covers


def dicyclic(n: int) -> tuple[FiniteGroup, int]:
    """<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>, order 4n; returns (group, index of a^n)."""
    m = 2 * n
    elements = [(k, j) for j in (0, 1) for k in range(m)]

    def mul(p, q):
        k, j = p
        l, i = q
        k2 = (k + (l if j == 0 else -l)) % m
        if j + i == 2:
            return ((k2 + n) % m, 0)
        return (k2, j + i)

    G = from_multiplication(elements, mul)
    # left regular rows: element e sits at position elements.index(e); find a^n by its row
    row = tuple(elements.index(mul((n, 0), b)) for b in elements)
    return G, G.index(row)


@lru_cache(maxsize=None)
def _sl2(p: int) -> tuple[FiniteGroup, int]:
    return special_linear_2(p)


@lru_cache(maxsize=None)
def binary_octahedral() -> tuple[FiniteGroup, int]:
    """The binary octahedral group as the preimage of an S4 inside SL(2, 7).

    SL(2, 7) has a single involution, so any subgroup of order 48 that
    contains an element of order 8 is a double cover of S4 with a unique
    involution, i.e. the binary octahedral group.  It contains SL(2, 3) with
    index 2.
    """
    SL, minus = _sl2(7)
    orders = SL.element_orders
    for a in np.nonzero(orders == 8)[0]:
        for b in np.nonzero(orders == 3)[0]:
            members = generate(SL, [int(a), int(b)])
            if len(members) == 48:
                H = with_generating_set(FiniteGroup(SL.degree, [], np.ascontiguousarray(SL.array[members])))
                return H, H.index(SL.element(minus))
    raise AssertionError("no binary octahedral subgroup found in SL(2, 7)")


def binary_group(kind: str, n: int | None = None) -> GroupSpec:
    if kind == "BinaryCyclic":
        G = cyclic(2 * n)
        z = G.index(tuple((i + n) % (2 * n) for i in range(2 * n)))
    elif kind == "BinaryDihedral":
        G, z = dicyclic(n)
    elif kind == "BinaryTetrahedral":
        G, z = _sl2(3)
    elif kind == "BinaryOctahedral":
        G, z = binary_octahedral()
    elif kind == "BinaryIcosahedral":
        G, z = _sl2(5)
    else:
        raise GroupDomainError(f"unknown binary kind {kind}")
    return GroupSpec(kind, n if kind in ("BinaryCyclic", "BinaryDihedral") else None, G, z)


def binary_catalog(max_n: int) -> list[GroupSpec]:
    if max_n < 1:
        raise GroupDomainError("max_n must be at least 1")
    out = [binary_group("BinaryCyclic", n) for n in range(1, max_n + 1)]
    out += [binary_group("BinaryDihedral", n) for n in range(2, max_n + 1)]
    out += [binary_group(k) for k in ("BinaryTetrahedral", "BinaryOctahedral", "BinaryIcosahedral")]
    return out


def rotation_image(spec: GroupSpec) -> GroupSpec:
    """The SO(3) group covered by a binary spec."""
    kind = BINARY_OF[spec.kind]
    return so3_group(kind, spec.n)


# ---------------------------------------------------------------------------
# SO(4)


def _require_binary(*specs: GroupSpec) -> None:
    for s in specs:
        if s.center is None:
            raise GroupDomainError(f"{s.name} has no identified central involution")


def so4_model(H1: GroupSpec, H2: GroupSpec) -> FiniteGroup:
    """``(H1 x H2) / <(z1, z2)>``."""
    _require_binary(H1, H2)
    G1, G2 = H1.realization, H2.realization
    P = direct_product(G1, G2, cap=G1.order * G2.order)
    return central_quotient(P, H1.center * G2.order + H2.center)


def so4_covering(H1: GroupSpec, H2: GroupSpec) -> tuple[int, int]:
    """Check the 2-fold map from the SO(4) model onto the product of rotation groups.

    Returns ``(image order, kernel order)`` after verifying the map is a
    well-defined homomorphism.
    """
    _require_binary(H1, H2)
    G1, G2 = H1.realization, H2.realization
    n2 = G2.order
    P = direct_product(G1, G2, cap=G1.order * n2)
    z1, z2 = H1.center * n2, H2.center
    model, to_model = quotient_with_map(P, [0, z1 + z2])
    target, to_target = quotient_with_map(P, generate(P, [z1, z2]))
    induced = np.full(model.order, -1, dtype=np.int64)
    for p in range(P.order):
        q = to_model[p]
        if induced[q] == -1:
            induced[q] = to_target[p]
        elif induced[q] != to_target[p]:
            raise AssertionError("covering map is not well defined")
    for a in model.generator_indices:
        for b in range(model.order):
            if induced[model.mul(b, a)] != target.mul(int(induced[b]), int(induced[a])):
                raise AssertionError("covering map is not a homomorphism")
    return len(np.unique(induced)), int((induced == 0).sum())


# ---------------------------------------------------------------------------
# the lemma chain


def verify_a5_only(max_n: int, kinds: set[str] | None = None) -> dict:
    """Nonabelian simple quotients of every subgroup of every catalog group.

    The flag is true iff A5 is the only one that occurs.
    """
    if max_n > 60:
        raise GroupDomainError("max_n must be at most 60")
    entries = []
    seen: set[SimpleLabel] = set()
    for spec in so3_catalog(max_n):
        if kinds is not None and spec.kind not in kinds:
            continue
        G = spec.realization
        for cid, cls in enumerate(conjugacy_classes_of_subgroups(G)):
            rep = cls[0]
            labels = simple_nonabelian_quotients(G, rep.indices())
            seen.update(labels)
            entries.append({"group": spec.name, "subgroup_class": cid, "order": rep.order,
                            "quotients": [lab.name for lab in labels]})
    return {
        "max_n": max_n,
        "entries": entries,
        "quotients": sorted(lab.name for lab in seen),
        "flag": seen <= {A5_LABEL},
    }


def _product_rows(G1: FiniteGroup, G2: FiniteGroup, members: np.ndarray) -> np.ndarray:
    i, j = np.divmod(members, G2.order)
    left = G1.array[i].astype(np.int32)
    right = G2.array[j].astype(np.int32) + G1.degree
    return np.ascontiguousarray(np.hstack([left, right]).astype(G1.array.dtype if G1.degree + G2.degree < 2**15 else np.int32))


class _FactorQuotients:
    """Memoized simple quotients of subgroups of one factor."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.subs, _ = _lattice(G)
        self.solvable = [is_solvable(G, s.members) for s in self.subs]
        self._cache: dict[int, list[SimpleLabel]] = {}

    def quotients(self, k: int) -> list[SimpleLabel]:
        if k not in self._cache:
            self._cache[k] = simple_nonabelian_quotients(self.G, self.subs[k].members)
        return self._cache[k]


def projection_lemma_check(G1: FiniteGroup, G2: FiniteGroup, cap: int = PRODUCT_CAP,
                           names: tuple[str, str] | None = None) -> dict:
    """Every simple quotient of a subgroup of G1 x G2 comes from a factor subgroup.

    For each subgroup H (via Goursat data) and each maximal normal N with
    H/N nonabelian simple: with F = H n (G1 x 1), either F N = H and F
    (a subgroup of G1) maps onto H/N, or F lies in N and the projection of
    H to G2 maps onto H/N.  The witness is then checked independently.
    """
    if G1.order * G2.order > cap:
        raise EnumerationTooLarge(f"product order {G1.order * G2.order} exceeds cap {cap}")
    f1, f2 = _FactorQuotients(G1), _FactorQuotients(G2)
    n2 = G2.order
    cells = []
    checked = 0
    flag = True
    for cell in goursat_cells(G1, G2, cap):
        checked += 1
        if f1.solvable[cell.a] and f2.solvable[cell.b]:
            continue
        members = np.asarray(cell.members, dtype=np.int64)
        if len(members) < 60:
            continue
        H = with_generating_set(FiniteGroup(G1.degree + G2.degree, [], _product_rows(G1, G2, members)))
        local_f = np.nonzero(members % n2 == 0)[0]
        f_normal = is_normal(H, local_f)
        found = maximal_normal_with_simple_nonabelian_quotient(H)
        if not found:
            continue
        quotients, witnesses = [], []
        fmask = mask_of(H, local_f)
        for normal, label in found:
            meet = int(fmask[normal.members].sum())
            if len(local_f) * len(normal.members) // meet == H.order:
                factor, ok = 1, label in f1.quotients(cell.a0)
            else:
                factor, ok = 2, label in f2.quotients(cell.b)
            flag &= ok and f_normal
            quotients.append(label.name)
            witnesses.append(factor)
        cells.append({"cell": [cell.a, cell.a0, cell.b, cell.b0], "order": H.order,
                      "quotients": quotients, "witness_factor": witnesses, "f_normal": f_normal})
    return {
        "pair": list(names) if names else [G1.order, G2.order],
        "subgroups_checked": checked,
        "cells": cells,
        "flag": bool(flag),
    }
