"""Basis changes on a pair of boundary tori of a Seifert fibered piece.

Each torus ``T_i`` carries the basis ``(f_i, g_i)``: ``f_i`` is a regular
fiber and ``g_i`` a chosen section curve.  A curve ``a f_i + b g_i`` is
stored as the column ``(a, b)``.  A :class:`BoundaryMap` sends the curves on
torus ``i`` to torus ``pairing[i]`` through the integer matrix
``matrices[i]``.

Torus indices are 0-based here: index 0 is ``T_1`` and index 1 is ``T_2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Matrix = tuple[tuple[int, int], tuple[int, int]]
Vector = tuple[int, int]

IDENTITY: Matrix = ((1, 0), (0, 1))


class InvariantViolation(ValueError):
    """Attaching data that does not describe a knot exterior glued along a torus."""


def det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def apply(m: Matrix, v: Vector) -> Vector:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


@dataclass(frozen=True)
class AttachData:
    """``lambda = alpha f + beta g`` and ``mu = delta f + gamma g``."""

    alpha: int
    beta: int
    delta: int
    gamma: int

    @property
    def longitude(self) -> Vector:
        return (self.alpha, self.beta)

    @property
    def meridian(self) -> Vector:
        return (self.delta, self.gamma)

    def violations(self) -> list[str]:
        out = []
        if abs(self.alpha * self.gamma - self.beta * self.delta) != 1:
            out.append("alpha*gamma - beta*delta must be +1 or -1")
        if self.beta == 0:
            out.append("beta must be nonzero (the longitude has to cross the fiber)")
        return out

    def validate(self) -> "AttachData":
        bad = self.violations()
        if bad:
            raise InvariantViolation("; ".join(bad))
        return self

    def on_second_torus(self, w: int) -> tuple[Vector, Vector]:
        """``(lambda_2, mu_2)`` when ``g_1`` is carried to ``g_2 + w f_2``."""
        return ((self.alpha + self.beta * w, self.beta), (self.delta + self.gamma * w, self.gamma))

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "delta": self.delta, "gamma": self.gamma}


@dataclass(frozen=True)
class BoundaryMap:
    matrices: tuple[Matrix, Matrix]
    pairing: tuple[int, int]

    def __post_init__(self):
        if sorted(self.pairing) != [0, 1]:
            raise InvariantViolation("pairing must be a permutation of the two tori")
        for m in self.matrices:
            if abs(det(m)) != 1:
                raise InvariantViolation(f"matrix {m} is not invertible over the integers")

    def image(self, torus: int, v: Vector) -> tuple[int, Vector]:
        return self.pairing[torus], apply(self.matrices[torus], v)

    def is_identity(self) -> bool:
        return self.pairing == (0, 1) and all(m == IDENTITY for m in self.matrices)

    def to_json(self) -> dict:
        return {"matrices": [[list(r) for r in m] for m in self.matrices], "pairing": list(self.pairing)}


def compose(a: BoundaryMap, b: BoundaryMap) -> BoundaryMap:
    """``a`` after ``b``."""
    mats = tuple(matmul(a.matrices[b.pairing[i]], b.matrices[i]) for i in range(2))
    return BoundaryMap(mats, tuple(a.pairing[b.pairing[i]] for i in range(2)))


def build_twist(w: int) -> BoundaryMap:
    """The ``w``-fold twist along a vertical annulus from ``f_1`` to ``f_2``.

    Fixes both fibers, sends ``g_1`` to ``g_1 - w f_1`` and ``g_2`` to ``g_2 + w f_2``.
    """
    return BoundaryMap((((1, -w), (0, 1)), ((1, w), (0, 1))), (0, 1))


def build_plain_swap() -> BoundaryMap:
    """Exchange the tori, sending ``f_i`` to ``f_j`` and ``g_i`` to ``g_j``."""
    return BoundaryMap((IDENTITY, IDENTITY), (1, 0))


def build_swap(w: int) -> BoundaryMap:
    """The twist applied after the plain swap.

    ``g_1`` goes to ``g_2 + w f_2`` and ``g_2`` goes to ``g_1 - w f_1``.  The
    result is an involution for every ``w``.
    """
    return compose(build_twist(w), build_plain_swap())


def check_transposition(a: AttachData, w: int) -> bool:
    """Does ``build_swap(w)`` exchange the attaching curves of the two tori?"""
    a.validate()
    g = build_swap(w)
    first = (a.longitude, a.meridian)
    second = a.on_second_torus(w)
    img_first = tuple(g.image(0, v) for v in first)
    img_second = tuple(g.image(1, v) for v in second)
    return (all(t == 1 for t, _ in img_first) and tuple(v for _, v in img_first) == second
            and all(t == 0 for t, _ in img_second) and tuple(v for _, v in img_second) == first)


def fiber_intersection(a: AttachData) -> int:
    """Intersection number of the longitude with the fiber, up to sign."""
    return abs(a.beta)


def valid_attach_data(bound: int):
    """Every :class:`AttachData` with entries in ``[-bound, bound]`` that passes validation."""
    rng = range(-bound, bound + 1)
    for alpha, beta, delta, gamma in itertools.product(rng, repeat=4):
        a = AttachData(alpha, beta, delta, gamma)
        if not a.violations():
            yield a


def sweep(bound: int = 5, w_bound: int = 5) -> dict:
    """Run :func:`check_transposition` over a full box of inputs.

    The grid row for each ``w`` records how many inputs were checked and
    how many passed; failing inputs are listed in full.
    """
    data = list(valid_attach_data(bound))
    grid, failures = [], []
    for w in range(-w_bound, w_bound + 1):
        passed = 0
        for a in data:
            if check_transposition(a, w):
                passed += 1
            else:
                failures.append({**a.to_json(), "w": w})
        grid.append({"w": w, "checked": len(data), "passed": passed})
    return {"bound": bound, "w_bound": w_bound, "grid": grid, "failures": failures, "flag": not failures}
