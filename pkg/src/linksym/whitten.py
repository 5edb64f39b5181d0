"""The Whitten group: ambient mirror, component reversals and permutations.

An element ``s = (eta, eps, rho)`` acts on an ordered link by

    s L = (eta S, eps_1 L_rho(1), ..., eps_n L_rho(n)).

For this to be a left action the product has to be

    (eta, eps, rho) * (eta', eps', sigma) = (eta eta', (eps_i eps'_rho(i))_i, sigma o rho),

which is what :func:`gamma_mul` implements.  ``rho`` is stored 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groups import (
    FiniteGroup,
    GroupDomainError,
    check_perm,
    closure,
    compose,
    cyclic,
    dihedral,
    direct_product,
    generate,
    group_from_rows,
    invert,
    isomorphic,
    klein_four,
    perm_from_cycles,
    subgroup_group,
)
from .subgroups import SubgroupRecord, subgroup_from_generators

MAX_COMPONENTS = 5


def _sign(x) -> int:
    if x not in (1, -1):
        raise GroupDomainError(f"sign must be +1 or -1, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class WhittenElement:
    eta: int
    eps: tuple[int, ...]
    rho: tuple[int, ...]

    def __post_init__(self):
        _sign(self.eta)
        for e in self.eps:
            _sign(e)
        check_perm(self.rho, len(self.eps))

    @property
    def n(self) -> int:
        return len(self.eps)

    @classmethod
    def identity(cls, n: int) -> "WhittenElement":
        return cls(1, (1,) * n, tuple(range(n)))

    def to_json(self) -> dict:
        return {"eta": self.eta, "eps": list(self.eps), "rho": [r + 1 for r in self.rho]}

    @classmethod
    def from_json(cls, data: dict) -> "WhittenElement":
        return cls(int(data["eta"]), tuple(int(e) for e in data["eps"]),
                   tuple(int(r) - 1 for r in data["rho"]))


@dataclass(frozen=True)
class LinkRecord:
    """Bookkeeping for an ordered link: which component sits in each slot, and how."""

    ambient: int
    orients: tuple[int, ...]
    comp_ids: tuple[int, ...]

    def __post_init__(self):
        _sign(self.ambient)
        for o in self.orients:
            _sign(o)
        check_perm(self.comp_ids, len(self.orients))

    @classmethod
    def standard(cls, n: int) -> "LinkRecord":
        return cls(1, (1,) * n, tuple(range(n)))


def _same_n(*items) -> int:
    ns = {x.n if isinstance(x, WhittenElement) else len(x.orients) for x in items}
    if len(ns) != 1:
        raise GroupDomainError("mismatched number of components")
    return ns.pop()


def gamma_mul(s: WhittenElement, t: WhittenElement) -> WhittenElement:
    _same_n(s, t)
    eps = tuple(s.eps[i] * t.eps[s.rho[i]] for i in range(s.n))
    return WhittenElement(s.eta * t.eta, eps, compose(t.rho, s.rho))


def gamma_inv(s: WhittenElement) -> WhittenElement:
    r = invert(s.rho)
    return WhittenElement(s.eta, tuple(s.eps[r[i]] for i in range(s.n)), r)


def act_on_link(s: WhittenElement, L: LinkRecord) -> LinkRecord:
    _same_n(s, L)
    return LinkRecord(
        s.eta * L.ambient,
        tuple(s.eps[i] * L.orients[s.rho[i]] for i in range(s.n)),
        tuple(L.comp_ids[s.rho[i]] for i in range(s.n)),
    )


# ---------------------------------------------------------------------------
# permutation model on 2 + 2n points
#
# points 0, 1: ambient orientation +, -
# points 2 + 2j, 3 + 2j: a marker in slot j with orientation +, -
# A marker in slot j moves to slot rho^-1(j) and picks up eps_{rho^-1(j)}.


def to_perm(s: WhittenElement) -> tuple[int, ...]:
    n = s.n
    img = [0] * (2 + 2 * n)
    img[0], img[1] = (0, 1) if s.eta == 1 else (1, 0)
    rinv = invert(s.rho)
    for j in range(n):
        i = rinv[j]
        flip = s.eps[i] == -1
        img[2 + 2 * j] = 2 + 2 * i + flip
        img[3 + 2 * j] = 2 + 2 * i + (not flip)
    return tuple(img)


def from_perm(p, n: int) -> WhittenElement:
    p = [int(x) for x in p]
    eta = 1 if p[0] == 0 else -1
    rinv = [0] * n
    eps = [1] * n
    for j in range(n):
        i, flip = divmod(p[2 + 2 * j] - 2, 2)
        rinv[j] = i
        eps[i] = -1 if flip else 1
    return WhittenElement(eta, tuple(eps), invert(tuple(rinv)))


def standard_generators(n: int) -> list[WhittenElement]:
    e = WhittenElement.identity(n)
    gens = [WhittenElement(-1, e.eps, e.rho), WhittenElement(1, (-1,) + (1,) * (n - 1), e.rho)]
    if n >= 2:
        gens.append(WhittenElement(1, e.eps, perm_from_cycles(n, [0, 1])))
    if n >= 3:
        gens.append(WhittenElement(1, e.eps, perm_from_cycles(n, list(range(n)))))
    return gens


def all_elements(n: int):
    for eta in (1, -1):
        for eps in itertools.product((1, -1), repeat=n):
            for rho in itertools.permutations(range(n)):
                yield WhittenElement(eta, eps, rho)


_GAMMA: dict[int, FiniteGroup] = {}


def gamma_group(n: int) -> FiniteGroup:
    """Faithful permutation model of the Whitten group, order 2^(n+1) n!."""
    if not 1 <= n <= MAX_COMPONENTS:
        raise GroupDomainError(f"n must lie in 1..{MAX_COMPONENTS}")
    if n not in _GAMMA:
        gens = standard_generators(n)
        G = closure(2 + 2 * n, [to_perm(g) for g in gens])
        for a in gens:
            for b in gens:
                if to_perm(gamma_mul(a, b)) != compose(to_perm(a), to_perm(b)):
                    raise AssertionError("permutation model is not a homomorphism")
        _GAMMA[n] = G
    return _GAMMA[n]


def element_index(s: WhittenElement) -> int:
    return gamma_group(s.n).index(to_perm(s))


def elements_of(G: FiniteGroup, record: SubgroupRecord, n: int) -> list[WhittenElement]:
    return [from_perm(G.element(i), n) for i in record.members]


def subgroup_generated(elements: list[WhittenElement]) -> SubgroupRecord:
    n = _same_n(*elements)
    G = gamma_group(n)
    return subgroup_from_generators(G, [G.index(to_perm(s)) for s in elements])


def bar_gamma(n: int) -> SubgroupRecord:
    """Index-2 subgroup of elements with ``eta = +1``."""
    G = gamma_group(n)
    members = np.nonzero(G.array[:, 0] == 0)[0]
    return SubgroupRecord(G.descriptor_hash, tuple(members.tolist()), len(members))


def sym_image(H: SubgroupRecord, n: int) -> FiniteGroup:
    """Permutations of the components realized by ``H`` intersected with the bar subgroup.

    Each element contributes the slot map ``rho^-1`` (a homomorphism onto
    S_n under the product law above); its image as a set is the set of all
    ``rho``.
    """
    G = gamma_group(n)
    if H.parent != G.descriptor_hash:
        raise GroupDomainError("record does not belong to this Whitten group")
    members = H.indices()
    if not np.array_equal(generate(G, members), np.unique(members)):
        raise GroupDomainError("record is not a subgroup")
    rows = set()
    for i in members:
        s = from_perm(G.element(int(i)), n)
        if s.eta == 1:
            rows.add(invert(s.rho))
    rows = sorted(rows)
    return group_from_rows(n, rows, np.array(rows))


# ---------------------------------------------------------------------------
# the two-component catalog


TAU = (1, 0)
E2 = (0, 1)

MISSING_GAMMA2_GENERATORS: list[list[WhittenElement]] = [
    [WhittenElement(1, (-1, 1), TAU)],
    [WhittenElement(1, (-1, 1), E2), WhittenElement(-1, (1, 1), E2)],
    [WhittenElement(1, (1, -1), E2), WhittenElement(-1, (-1, 1), E2)],
    [WhittenElement(-1, (-1, 1), E2), WhittenElement(1, (-1, 1), TAU)],
    [WhittenElement(1, (1, -1), E2), WhittenElement(1, (-1, 1), E2), WhittenElement(-1, (1, 1), E2)],
]

MISSING_GAMMA2_TYPES = ["Z4", "Z2xZ2", "Z2xZ2", "D4", "Z2xZ2xZ2"]


def abstract_type(kind: str) -> FiniteGroup:
    return {
        "Z4": lambda: cyclic(4),
        "Z2xZ2": klein_four,
        "D4": lambda: dihedral(4),
        "Z2xZ2xZ2": lambda: direct_product(klein_four(), cyclic(2)),
    }[kind]()


def gamma2_missing_subgroups() -> list[SubgroupRecord]:
    """Subgroups of the two-component Whitten group not yet realized by links.

    Each is checked against its isomorphism type at construction; ``D4`` is
    the symmetry group of a square (order 8).
    """
    G = gamma_group(2)
    out = []
    for gens, kind in zip(MISSING_GAMMA2_GENERATORS, MISSING_GAMMA2_TYPES):
        rec = subgroup_generated(gens)
        if not isomorphic(subgroup_group(G, rec.indices()), abstract_type(kind)):
            raise AssertionError(f"generated subgroup is not {kind}")
        out.append(rec)
    return out
