"""Subgroup lattices: cyclic extension, conjugacy classes, Goursat cells."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .groups import (
    ENUMERATION_CAP,
    EnumerationTooLarge,
    FiniteGroup,
    descriptor_hash,
    extend,
    generate,
    generating_set,
    is_solvable,
    isomorphisms,
    mask_of,
    normal_subgroup_lattice,
    orbits,
    table_group,
)

PRODUCT_CAP = 1_000_000


@dataclass(frozen=True)
class SubgroupRecord:
    parent: str
    members: tuple[int, ...]
    order: int
    class_id: int | None = None

    def to_json(self) -> dict:
        return {"parent": self.parent, "members": list(self.members),
                "order": self.order, "class_id": self.class_id}

    @classmethod
    def from_json(cls, data: dict) -> "SubgroupRecord":
        return cls(data["parent"], tuple(data["members"]), data["order"], data.get("class_id"))

    def indices(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)


class _Sub:
    __slots__ = ("members", "gens", "key")

    def __init__(self, G: FiniteGroup, members: np.ndarray, gens: list[int]):
        self.members = members
        self.gens = gens
        self.key = np.packbits(mask_of(G, members)).tobytes()


def _normalizer_mask(G: FiniteGroup, sub: _Sub) -> np.ndarray:
    mask = mask_of(G, sub.members)
    ok = np.ones(G.order, dtype=bool)
    idx = np.arange(G.order)
    inv = G.inverses
    for u in sub.gens:
        ok &= mask[G.mul(G.mul(idx, u), inv)]
    return ok


def _cyclic_extension(G: FiniteGroup, found: dict[bytes, _Sub]) -> None:
    """Close ``found`` under prime-index normal extensions ``<U, g>``."""
    pending = sorted(found.values(), key=lambda s: len(s.members))
    done: set[bytes] = set()
    while pending:
        pending.sort(key=lambda s: len(s.members))
        U = pending.pop(0)
        if U.key in done:
            continue
        done.add(U.key)
        umask = mask_of(G, U.members)
        norm = _normalizer_mask(G, U)
        covered = umask.copy()
        for g in np.nonzero(norm & ~umask)[0]:
            if covered[g]:
                continue
            # order of g modulo U
            k, p = 1, int(g)
            cosets = [U.members]
            while not umask[p]:
                cosets.append(G.mul(p, U.members))
                p = G.mul(p, int(g))
                k += 1
            if not _is_prime(k):
                continue
            members = np.unique(np.concatenate(cosets))
            covered[members] = True
            H = _Sub(G, members, U.gens + [int(g)])
            if H.key not in found:
                found[H.key] = H
                pending.append(H)


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, int(k**0.5) + 1))


def _double_coset(G: FiniteGroup, U: np.ndarray, g: int) -> np.ndarray:
    return G.mul(G.mul(U[:, None], g), U[None, :]).ravel()


def _complete(G: FiniteGroup, found: dict[bytes, _Sub]) -> None:
    """Generic pass for non-solvable groups: extend every U by every double coset."""
    processed: set[bytes] = set()
    while True:
        todo = [s for s in found.values() if s.key not in processed]
        if not todo:
            return
        for U in sorted(todo, key=lambda s: len(s.members)):
            processed.add(U.key)
            covered = mask_of(G, U.members)
            for g in range(G.order):
                if covered[g]:
                    continue
                covered[_double_coset(G, U.members, g)] = True
                members = generate(G, U.gens + [g], start=U.members)
                H = _Sub(G, members, U.gens + [g])
                if H.key not in found:
                    found[H.key] = H
        _cyclic_extension(G, found)


def _enumerate(G: FiniteGroup, cap: int) -> list[_Sub]:
    if G.order > cap:
        raise EnumerationTooLarge(f"group order {G.order} exceeds cap {cap}")
    found: dict[bytes, _Sub] = {}
    trivial = _Sub(G, np.array([0]), [])
    found[trivial.key] = trivial
    _cyclic_extension(G, found)
    if not is_solvable(G):
        _complete(G, found)
    return sorted(found.values(), key=lambda s: (len(s.members), s.members.tolist()))


def _class_labels(G: FiniteGroup, subs: list[_Sub]) -> np.ndarray:
    pos = {s.key: i for i, s in enumerate(subs)}
    maps = []
    for s in G.generator_indices:
        target = []
        for sub in subs:
            conj = np.unique(G.conj(sub.members, s))
            target.append(pos[np.packbits(mask_of(G, conj)).tobytes()])
        maps.append(np.array(target))
    return orbits(len(subs), maps)


def _lattice(G: FiniteGroup, cap: int = ENUMERATION_CAP) -> tuple[list[_Sub], np.ndarray]:
    cached = getattr(G, "_lattice", None)
    if cached is None:
        subs = _enumerate(G, cap)
        cached = (subs, _class_labels(G, subs))
        G._lattice = cached
    return cached


def all_subgroups(G: FiniteGroup, cap: int = ENUMERATION_CAP) -> list[SubgroupRecord]:
    """Every subgroup once, sorted by (order, member indices)."""
    subs, labels = _lattice(G, cap)
    parent = G.descriptor_hash
    return [SubgroupRecord(parent, tuple(s.members.tolist()), len(s.members), int(c))
            for s, c in zip(subs, labels)]


def conjugacy_classes_of_subgroups(G: FiniteGroup, cap: int = ENUMERATION_CAP) -> list[list[SubgroupRecord]]:
    """Partition of :func:`all_subgroups` into conjugacy classes.

    Classes are listed in order of their least member; since records are
    sorted, the first record of each class is its representative.
    """
    records = all_subgroups(G, cap)
    classes: list[list[SubgroupRecord]] = [[] for _ in range(max(r.class_id for r in records) + 1)]
    for r in records:
        classes[r.class_id].append(r)
    return classes


def normal_subgroups(G: FiniteGroup) -> list[SubgroupRecord]:
    """Normal subgroups of ``G``, sorted by (order, member indices)."""
    parent = G.descriptor_hash
    return [SubgroupRecord(parent, tuple(n.members.tolist()), len(n.members))
            for n in normal_subgroup_lattice(G)]


def subgroup_from_generators(G: FiniteGroup, gens: list[int]) -> SubgroupRecord:
    members = generate(G, gens)
    return SubgroupRecord(G.descriptor_hash, tuple(members.tolist()), len(members))


def subgroup_generators(G: FiniteGroup, record: SubgroupRecord) -> list[int]:
    return generating_set(G, record.indices())


# ---------------------------------------------------------------------------
# Goursat


@dataclass(frozen=True)
class GoursatCell:
    """Goursat data of one subgroup of G1 x G2.

    ``a``/``b`` are the projections, ``a0``/``b0`` the kernels
    (``a0 x 1 = H n (G1 x 1)``), and ``theta[i]`` is the coset of ``b0`` that
    corresponds to coset ``i`` of ``a0``.
    """

    a: int
    a0: int
    b: int
    b0: int
    theta: tuple[int, ...]
    members: tuple[int, ...]


class _Section:
    """A pair A0 <| A of subgroups with the quotient's Cayley table."""

    def __init__(self, G: FiniteGroup, a: int, a0: int, A: np.ndarray, A0: np.ndarray):
        self.a, self.a0 = a, a0
        amask = mask_of(G, A)
        rep = np.full(G.order, G.order, dtype=np.int64)
        for n in A0:
            rep = np.minimum(rep, G.right(int(n)))
        reps = np.unique(rep[A])
        self.cosets = [A[rep[A] == r] for r in reps]
        coset_of = np.full(G.order, -1, dtype=np.int64)
        coset_of[A] = np.searchsorted(reps, rep[A])
        table = coset_of[G.mul(reps[:, None], reps[None, :])]
        assert amask[G.mul(reps[:, None], reps[None, :])].all()
        self.size = len(reps)
        self.table = table
        self._tg = None

    @property
    def tg(self):
        if self._tg is None:
            self._tg = table_group(self.table)
        return self._tg


def _sections(G: FiniteGroup, cap: int) -> list[_Section]:
    subs, _ = _lattice(G, cap)
    masks = [mask_of(G, s.members) for s in subs]
    out = []
    for ai, A in enumerate(subs):
        for bi, B in enumerate(subs):
            if len(B.members) > len(A.members) or len(A.members) % len(B.members):
                continue
            if not masks[ai][B.members].all():
                continue
            normal = all(masks[bi][G.conj(np.asarray(B.gens, dtype=np.int64), a)].all()
                         for a in A.gens) if B.gens else True
            if normal:
                out.append(_Section(G, ai, bi, A.members, B.members))
    return out


def goursat_cells(G1: FiniteGroup, G2: FiniteGroup, cap: int = PRODUCT_CAP) -> Iterator[GoursatCell]:
    """Every subgroup of G1 x G2 exactly once, via its Goursat data.

    Member indices refer to :func:`direct_product` ordering, ``i*|G2| + j``.
    """
    if G1.order * G2.order > cap:
        raise EnumerationTooLarge(f"product order {G1.order * G2.order} exceeds cap {cap}")
    left = _sections(G1, ENUMERATION_CAP)
    right = _sections(G2, ENUMERATION_CAP)
    n2 = G2.order
    for s in left:
        for t in right:
            if s.size != t.size:
                continue
            for phi in isomorphisms(s.tg, t.tg):
                parts = []
                for i, coset in enumerate(s.cosets):
                    bcos = t.cosets[phi[i]]
                    parts.append((coset[:, None] * n2 + bcos[None, :]).ravel())
                members = np.sort(np.concatenate(parts))
                yield GoursatCell(s.a, s.a0, t.a, t.a0, tuple(phi), tuple(members.tolist()))


def product_descriptor_hash(G1: FiniteGroup, G2: FiniteGroup) -> str:
    d = G1.degree + G2.degree
    gens = [tuple(g) + tuple(range(G1.degree, d)) for g in G1.generators]
    gens += [tuple(range(G1.degree)) + tuple(x + G1.degree for x in h) for h in G2.generators]
    return descriptor_hash(d, gens)


def goursat_subgroups(G1: FiniteGroup, G2: FiniteGroup, cap: int = PRODUCT_CAP) -> Iterator[SubgroupRecord]:
    parent = product_descriptor_hash(G1, G2)
    for cell in goursat_cells(G1, G2, cap):
        yield SubgroupRecord(parent, cell.members, len(cell.members))
