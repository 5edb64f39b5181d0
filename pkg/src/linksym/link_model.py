"""Linking matrices and the induced Whitten action.

The stabilizer of a linking matrix contains the intrinsic symmetry group
of every link with those linking numbers, so it is a computable upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, GroupDomainError
from .subgroups import SubgroupRecord
from .whitten import MAX_COMPONENTS, WhittenElement, from_perm, gamma_group, sym_image


@dataclass(frozen=True)
class LinkingMatrix:
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise GroupDomainError("linking matrix must be n x n")
        for i in range(self.n):
            if self.entries[i][i] != 0:
                raise GroupDomainError("linking matrix must have zero diagonal")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise GroupDomainError("linking matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows) -> "LinkingMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(rows), rows)

    @classmethod
    def zero(cls, n: int) -> "LinkingMatrix":
        return cls.from_rows([[0] * n for _ in range(n)])

    def to_json(self) -> dict:
        return {"n": self.n, "lk": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "LinkingMatrix":
        m = cls.from_rows(data["lk"])
        if m.n != data["n"]:
            raise GroupDomainError("declared n does not match matrix size")
        return m


HOPF = LinkingMatrix.from_rows([[0, 1], [1, 0]])


def act_on_linking_matrix(s: WhittenElement, lk: LinkingMatrix) -> LinkingMatrix:
    """``(s lk)_ij = eta eps_i eps_j lk_{rho(i) rho(j)}``."""
    if s.n != lk.n:
        raise GroupDomainError("mismatched number of components")
    e, r = s.eps, s.rho
    return LinkingMatrix.from_rows(
        [[s.eta * e[i] * e[j] * lk.entries[r[i]][r[j]] for j in range(lk.n)] for i in range(lk.n)]
    )


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_COMPONENTS:
        raise GroupDomainError(f"n must lie in 1..{MAX_COMPONENTS}")


def stabilizer(lk: LinkingMatrix) -> SubgroupRecord:
    """All Whitten elements fixing the matrix, by brute force."""
    _check_n(lk.n)
    G = gamma_group(lk.n)
    members = [i for i in range(G.order)
               if act_on_linking_matrix(from_perm(G.element(i), lk.n), lk) == lk]
    return SubgroupRecord(G.descriptor_hash, tuple(members), len(members))


def sym_upper_bound(lk: LinkingMatrix) -> FiniteGroup:
    return sym_image(stabilizer(lk), lk.n)


def random_linking_matrix(rng: np.random.Generator, n: int, bound: int = 3) -> LinkingMatrix:
    a = rng.integers(-bound, bound + 1, size=(n, n))
    a = np.triu(a, 1)
    return LinkingMatrix.from_rows((a + a.T).tolist())
