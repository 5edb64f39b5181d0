"""Finite groups realized as permutation groups.

Elements are stored as rows of a numpy array sorted lexicographically by
one-line notation, so the identity is always element 0.  All arithmetic is
done on element *indices*: a short base of points is computed once, and the
image of the base identifies an element, which makes vectorized products
cheap even for groups of a few thousand elements.

Products follow the functional convention ``g * h = g o h`` (apply ``h``
first).
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

Perm = tuple[int, ...]

ENUMERATION_CAP = 10_000


class EnumerationTooLarge(ValueError):
    """Raised when a group or product exceeds its configured size cap."""


class GroupDomainError(ValueError):
    """Raised for structurally invalid requests (non-normal subgroup, ...)."""


# ---------------------------------------------------------------------------
# plain permutations


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p o q``."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_from_cycles(degree: int, *cycles: Sequence[int]) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return check_perm(img, degree)


def check_perm(images: Iterable[int], degree: int | None = None) -> Perm:
    p = tuple(int(i) for i in images)
    if degree is not None and len(p) != degree:
        raise GroupDomainError(f"permutation {p} does not have degree {degree}")
    if sorted(p) != list(range(len(p))):
        raise GroupDomainError(f"{p} is not a permutation of 0..{len(p) - 1}")
    return p


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        order = order * length // np.gcd(order, length)
    return int(order)


def _dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


def orbits(n: int, maps: Sequence[np.ndarray]) -> np.ndarray:
    """Orbit labels of ``range(n)`` under the given index maps.

    Labels are renumbered so orbits appear in order of their least member.
    """
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if not maps:
        return np.arange(n)
    src = np.concatenate([np.arange(n)] * len(maps))
    dst = np.concatenate([np.asarray(m, dtype=np.int64) for m in maps])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse.ravel()]


class _BaseIndex:
    """Maps base images back to element indices."""

    def __init__(self, arr: np.ndarray, base: list[int]):
        self.base = np.asarray(base, dtype=np.int64)
        self.degree = arr.shape[1]
        self._packed = self.degree ** max(len(base), 1) < 2**62
        images = arr[:, self.base].astype(np.int64)
        if self._packed:
            keys = self._encode(images)
            self._order = np.argsort(keys)
            self._keys = keys[self._order]
        else:
            self._dict = {row.tobytes(): i for i, row in enumerate(images)}

    def _encode(self, images: np.ndarray) -> np.ndarray:
        keys = np.zeros(images.shape[0], dtype=np.int64)
        for col in range(images.shape[1]):
            keys = keys * self.degree + images[:, col]
        return keys

    def lookup(self, images: np.ndarray) -> np.ndarray:
        images = np.asarray(images, dtype=np.int64).reshape(-1, len(self.base))
        if self._packed:
            keys = self._encode(images)
            pos = np.searchsorted(self._keys, keys)
            pos = np.minimum(pos, len(self._keys) - 1)
            if not np.array_equal(self._keys[pos], keys):
                raise KeyError("permutation is not an element of the group")
            return self._order[pos]
        try:
            return np.array([self._dict[row.tobytes()] for row in images], dtype=np.int64)
        except KeyError:
            raise KeyError("permutation is not an element of the group") from None


def _find_base(arr: np.ndarray) -> list[int]:
    n, d = arr.shape
    ident = np.arange(d)
    base: list[int] = []
    stab = np.arange(n)
    while len(stab) > 1:
        sub = arr[stab]
        moved = np.nonzero((sub != ident).any(axis=0))[0]
        b = int(moved[0])
        base.append(b)
        stab = stab[sub[:, b] == b]
    return base or [0]


class FiniteGroup:
    """A permutation group with its elements materialized in canonical order.

    Build instances with :func:`closure` (or the named constructors below);
    the constructor itself trusts that ``array`` is a sorted, closed set.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], array: np.ndarray):
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(tuple(int(x) for x in g) for g in generators)
        self._arr = array
        self._arr.setflags(write=False)
        self._index = _BaseIndex(array, _find_base(array))
        self._inv: np.ndarray | None = None
        self._orders: np.ndarray | None = None
        self._right: dict[int, np.ndarray] = {}
        self._gen_idx: tuple[int, ...] | None = None

    # -- basic data ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._arr.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    @property
    def array(self) -> np.ndarray:
        return self._arr

    @property
    def elements(self) -> list[Perm]:
        return [tuple(int(x) for x in row) for row in self._arr]

    def element(self, i: int) -> Perm:
        return tuple(int(x) for x in self._arr[i])

    def index(self, perm: Sequence[int]) -> int:
        row = np.asarray(perm, dtype=np.int64)
        if row.shape != (self.degree,):
            raise KeyError("wrong degree")
        i = int(self._index.lookup(row[self._index.base][None, :])[0])
        if not np.array_equal(self._arr[i], row):
            raise KeyError("permutation is not an element of the group")
        return i

    def __contains__(self, perm: Sequence[int]) -> bool:
        try:
            self.index(perm)
        except KeyError:
            return False
        return True

    @property
    def generator_indices(self) -> tuple[int, ...]:
        if self._gen_idx is None:
            self._gen_idx = tuple(self.index(g) for g in self.generators)
        return self._gen_idx

    def descriptor(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @property
    def descriptor_hash(self) -> str:
        return descriptor_hash(self.degree, self.generators)

    # -- index arithmetic ---------------------------------------------------

    def mul(self, i, j):
        """Index of ``elements[i] * elements[j]`` (broadcasting over arrays)."""
        scalar = np.ndim(i) == 0 and np.ndim(j) == 0
        a, b = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        imgs = self._arr[a[:, None], self._arr[b][:, self._index.base]]
        out = self._index.lookup(imgs).reshape(shape)
        return int(out) if scalar else out

    def right(self, j: int) -> np.ndarray:
        """Array ``r`` with ``r[i] = index(elements[i] * elements[j])``."""
        r = self._right.get(j)
        if r is None:
            imgs = self._arr[:, self._arr[j][self._index.base]]
            r = self._index.lookup(imgs)
            r.setflags(write=False)
            if len(self._right) < 4096:
                self._right[j] = r
        return r

    def left(self, j: int) -> np.ndarray:
        """Array ``l`` with ``l[i] = index(elements[j] * elements[i])``."""
        imgs = self._arr[j][self._arr[:, self._index.base]]
        return self._index.lookup(imgs)

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            inv_imgs = np.argsort(self._arr, axis=1)[:, self._index.base]
            self._inv = self._index.lookup(inv_imgs)
            self._inv.setflags(write=False)
        return self._inv

    def inv(self, i):
        out = self.inverses[np.asarray(i, dtype=np.int64)]
        return int(out) if np.ndim(i) == 0 else out

    def conj(self, x, g):
        """Index of ``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            idx = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            power = idx.copy()
            k = 1
            while True:
                hit = (power == 0) & (orders == 0)
                orders[hit] = k
                pending = orders == 0
                if not pending.any():
                    break
                power[pending] = self.mul(power[pending], idx[pending])
                k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def order_histogram(self, members: np.ndarray | None = None) -> tuple[tuple[int, int], ...]:
        orders = self.element_orders if members is None else self.element_orders[members]
        return tuple(sorted(Counter(orders.tolist()).items()))

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


def descriptor_hash(degree: int, generators: Sequence[Perm]) -> str:
    payload = json.dumps({"degree": degree, "generators": [list(map(int, g)) for g in generators]},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _sorted_unique_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] == 0:
        return arr
    order = np.lexsort(arr.T[::-1])
    arr = arr[order]
    keep = np.ones(arr.shape[0], dtype=bool)
    keep[1:] = (arr[1:] != arr[:-1]).any(axis=1)
    return np.ascontiguousarray(arr[keep])


def closure(degree: int, generators: Sequence[Sequence[int]], cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """The group generated by ``generators`` acting on ``range(degree)``."""
    gens = [check_perm(g, degree) for g in generators]
    dt = _dtype(max(degree, 1))
    ident = np.arange(degree, dtype=dt)
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident[None, :]
    gen_arrays = [np.asarray(g, dtype=np.int64) for g in gens]
    while frontier.shape[0]:
        fresh = []
        for g in gen_arrays:
            prods = frontier[:, g]
            for row in prods:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
            if len(seen) > cap:
                raise EnumerationTooLarge(f"group order exceeds cap {cap}")
        rows.extend(fresh)
        frontier = np.array(fresh, dtype=dt).reshape(-1, degree)
    arr = _sorted_unique_rows(np.array(rows, dtype=dt).reshape(-1, degree))
    return FiniteGroup(degree, gens, arr)


def group_from_rows(degree: int, generators: Sequence[Perm], rows: np.ndarray) -> FiniteGroup:
    """Wrap an already-closed set of permutation rows (sorted internally)."""
    arr = _sorted_unique_rows(np.asarray(rows, dtype=_dtype(max(degree, 1))).reshape(-1, degree))
    return FiniteGroup(degree, generators, arr)


# ---------------------------------------------------------------------------
# subgroups by element indices


def generate(G: FiniteGroup, gens: Iterable[int], start: np.ndarray | None = None) -> np.ndarray:
    """Sorted member indices of the subgroup generated by ``gens``.

    ``start`` may hold members of a subgroup already known to lie inside the
    result; it only seeds the search.
    """
    gens = [int(g) for g in gens]
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if start is not None:
        mask[start] = True
    frontier = np.nonzero(mask)[0]
    while frontier.size:
        new = []
        for g in gens:
            prods = G.right(g)[frontier] if G.order <= 20_000 else G.mul(frontier, g)
            prods = np.unique(prods[~mask[prods]])
            if prods.size:
                mask[prods] = True
                new.append(prods)
        frontier = np.concatenate(new) if new else np.zeros(0, dtype=np.int64)
    return np.nonzero(mask)[0]


def extend(G: FiniteGroup, members: np.ndarray, gens: list[int], extra: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Add generators one at a time, skipping those already inside."""
    gens = list(gens)
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    for x in extra:
        x = int(x)
        if not mask[x]:
            gens.append(x)
            members = generate(G, gens, start=members)
            mask[members] = True
    return members, gens


def generating_set(G: FiniteGroup, members: np.ndarray) -> list[int]:
    """A small generating set for the subgroup with the given members."""
    members = np.asarray(members)
    order_key = np.argsort(-G.element_orders[members], kind="stable")
    _, gens = extend(G, np.array([0]), [], members[order_key])
    return gens


def mask_of(G: FiniteGroup, members: np.ndarray) -> np.ndarray:
    m = np.zeros(G.order, dtype=bool)
    m[members] = True
    return m


def is_subgroup(G: FiniteGroup, members: Sequence[int]) -> bool:
    members = np.unique(np.asarray(members, dtype=np.int64))
    if members.size == 0 or members[0] != 0:
        return False
    mask = mask_of(G, members)
    prods = G.mul(members[:, None], members[None, :])
    return bool(mask[prods].all())


def is_normal(G: FiniteGroup, members: np.ndarray, within: np.ndarray | None = None,
              within_gens: Sequence[int] | None = None) -> bool:
    """Whether ``members`` is normalized by the subgroup ``within`` (default G)."""
    mask = mask_of(G, members)
    if within_gens is None:
        within_gens = G.generator_indices if within is None else generating_set(G, within)
    ngens = generating_set(G, members)
    for s in within_gens:
        if ngens and not mask[G.conj(np.asarray(ngens), s)].all():
            return False
    return True


def normal_closure(G: FiniteGroup, seeds: Iterable[int], within_gens: Sequence[int],
                   start: np.ndarray | None = None, start_gens: list[int] | None = None
                   ) -> tuple[np.ndarray, list[int]]:
    """Smallest subgroup containing ``seeds`` normalized by ``within_gens``."""
    members = np.array([0]) if start is None else start
    gens = [] if start_gens is None else list(start_gens)
    members, gens = extend(G, members, gens, seeds)
    queue = list(gens)
    while queue:
        x = queue.pop()
        mask = mask_of(G, members)
        for s in within_gens:
            c = G.conj(x, s)
            if not mask[c]:
                members, gens = extend(G, members, gens, [c])
                mask = mask_of(G, members)
                queue.append(c)
    return members, gens


def element_classes(G: FiniteGroup, members: np.ndarray, gens: Sequence[int]) -> list[np.ndarray]:
    """Conjugacy classes of the subgroup generated by ``gens`` with ``members``."""
    members = np.asarray(members)
    maps = []
    for s in gens:
        images = G.conj(members, s)
        maps.append(np.searchsorted(members, images))
    labels = orbits(len(members), maps)
    return [members[labels == k] for k in range(labels.max() + 1)]


def derived_subgroup(G: FiniteGroup, members: np.ndarray, gens: Sequence[int]) -> tuple[np.ndarray, list[int]]:
    comms = []
    for a in gens:
        for b in gens:
            comms.append(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))))
    return normal_closure(G, comms, gens)


def is_solvable(G: FiniteGroup, members: np.ndarray | None = None) -> bool:
    members = np.arange(G.order) if members is None else np.asarray(members)
    gens = generating_set(G, members)
    while len(members) > 1:
        d, dgens = derived_subgroup(G, members, gens)
        if len(d) == len(members):
            return False
        members, gens = d, dgens
    return True


def has_index_two_subgroup(G: FiniteGroup) -> bool:
    """A subgroup of index 2 exists iff the squares do not generate G."""
    idx = np.arange(G.order)
    squares = np.unique(G.mul(idx, idx))
    sq, _ = normal_closure(G, squares, G.generator_indices)
    return len(sq) < G.order


class _Normal(NamedTuple):
    members: np.ndarray
    gens: list[int]


def normal_subgroup_lattice(G: FiniteGroup, members: np.ndarray | None = None) -> list[_Normal]:
    """All normal subgroups of a subgroup of G, sorted by (order, members)."""
    members = np.arange(G.order) if members is None else np.asarray(members)
    hgens = generating_set(G, members)
    found: dict[bytes, _Normal] = {}

    def key(m):
        return np.packbits(mask_of(G, m)).tobytes()

    trivial = _Normal(np.array([0]), [])
    found[key(trivial.members)] = trivial
    for cls in element_classes(G, members, hgens):
        if cls[0] == 0:
            continue
        m, g = extend(G, np.array([0]), [], cls)
        found.setdefault(key(m), _Normal(m, g))
    changed = True
    while changed:
        changed = False
        items = list(found.values())
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                if len(a.members) == len(members) or len(b.members) == len(members):
                    continue
                m, g = extend(G, a.members, a.gens, b.gens)
                k = key(m)
                if k not in found:
                    found[k] = _Normal(m, g)
                    changed = True
    return sorted(found.values(), key=lambda n: (len(n.members), n.members.tolist()))


# ---------------------------------------------------------------------------
# simple quotients


A5_HISTOGRAM = ((1, 1), (2, 15), (3, 20), (5, 24))


class SimpleLabel(NamedTuple):
    order: int
    histogram: tuple[tuple[int, int], ...]

    @property
    def name(self) -> str:
        if self.order == 60 and self.histogram == A5_HISTOGRAM:
            return "A5"
        return f"simple[{self.order}]"

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "histogram": [list(p) for p in self.histogram]}


def orders_modulo(G: FiniteGroup, members: np.ndarray, normal: np.ndarray) -> np.ndarray:
    """For each member x, the least k >= 1 with x^k in ``normal``."""
    nmask = mask_of(G, normal)
    members = np.asarray(members)
    out = np.zeros(len(members), dtype=np.int64)
    power = members.copy()
    k = 1
    while True:
        hit = nmask[power] & (out == 0)
        out[hit] = k
        pending = out == 0
        if not pending.any():
            return out
        power[pending] = G.mul(power[pending], members[pending])
        k += 1


def quotient_label(G: FiniteGroup, members: np.ndarray, normal: np.ndarray) -> SimpleLabel:
    ords = orders_modulo(G, members, normal)
    hist = Counter(ords.tolist())
    n = len(normal)
    return SimpleLabel(len(members) // n, tuple(sorted((k, v // n) for k, v in hist.items())))


def maximal_normal_with_simple_nonabelian_quotient(G: FiniteGroup, members: np.ndarray | None = None
                                                   ) -> list[tuple[_Normal, SimpleLabel]]:
    members = np.arange(G.order) if members is None else np.asarray(members)
    # no nonabelian simple group has fewer than 60 elements
    if len(members) < 60 or is_solvable(G, members):
        return []
    lattice = normal_subgroup_lattice(G, members)
    masks = [mask_of(G, n.members) for n in lattice]
    out = []
    for i, n in enumerate(lattice):
        size = len(n.members)
        if size == len(members) or len(members) // size < 60:
            continue
        maximal = not any(
            len(m.members) > size and len(m.members) < len(members) and masks[j][n.members].all()
            for j, m in enumerate(lattice)
        )
        if maximal:
            out.append((n, quotient_label(G, members, n.members)))
    return out


def simple_nonabelian_quotients(G: FiniteGroup, members: np.ndarray | None = None) -> list[SimpleLabel]:
    """Isomorphism-class labels of the nonabelian simple quotients."""
    if G.order > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"group order {G.order} exceeds cap {ENUMERATION_CAP}")
    labels = {lab for _, lab in maximal_normal_with_simple_nonabelian_quotient(G, members)}
    return sorted(labels)


# ---------------------------------------------------------------------------
# products and quotients


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """G x H acting on disjoint point sets; element ``(g_i, h_j)`` has index ``i*|H| + j``."""
    if G.order * H.order > cap:
        raise EnumerationTooLarge(f"product order {G.order * H.order} exceeds cap {cap}")
    d = G.degree + H.degree
    dt = _dtype(d)
    left = np.repeat(G.array.astype(dt), H.order, axis=0)
    right = np.tile(H.array.astype(dt) + G.degree, (G.order, 1))
    arr = np.ascontiguousarray(np.hstack([left, right]))
    gens = [tuple(g) + tuple(range(G.degree, d)) for g in G.generators]
    gens += [tuple(range(G.degree)) + tuple(x + G.degree for x in h) for h in H.generators]
    return FiniteGroup(d, gens, arr)


def subgroup_group(G: FiniteGroup, members: np.ndarray) -> FiniteGroup:
    """The subgroup with the given members, as a group in its own right."""
    members = np.asarray(members)
    gens = [G.element(i) for i in generating_set(G, members)]
    return FiniteGroup(G.degree, gens, np.ascontiguousarray(G.array[members]))


def _action_images(G: FiniteGroup, point_ids: np.ndarray, chosen: np.ndarray, pair: bool) -> np.ndarray:
    """Image labels of the chosen block representatives under every element."""
    arr = G.array.astype(np.int64)
    if pair:
        d = G.degree
        p, q = np.divmod(chosen, d)
        return point_ids[arr[:, p] * d + arr[:, q]]
    return point_ids[arr[:, chosen]]


def _quotient_by_blocks(G: FiniteGroup, N: np.ndarray, pair: bool):
    """Try the action of G on N-orbits of points (or ordered pairs)."""
    d = G.degree
    narr = G.array[N].astype(np.int64)
    if pair:
        cells = np.arange(d * d)
        p, q = np.divmod(cells, d)
        images = narr[:, p] * d + narr[:, q]
    else:
        images = narr
    block_min = images.min(axis=0)  # N-orbit label = least member
    reps = np.unique(block_min)
    # G permutes the N-orbits; restrict greedily to G-orbits until faithful mod N
    gen_maps = []
    for g in G.generator_indices:
        img = _action_images(G, block_min, reps, pair)[g]
        gen_maps.append(np.searchsorted(reps, img))
    labels = orbits(len(reps), gen_maps)
    sizes = np.bincount(labels)
    kernel = np.ones(G.order, dtype=bool)
    chosen_orbits = []
    for orb in np.argsort(sizes, kind="stable"):
        block = reps[labels == orb]
        fixed = (_action_images(G, block_min, block, pair) == block[None, :]).all(axis=1)
        if (kernel & ~fixed).any():
            kernel &= fixed
            chosen_orbits.append(block)
        if kernel.sum() == len(N):
            break
    if kernel.sum() != len(N):
        return None
    chosen = np.sort(np.concatenate(chosen_orbits))
    imgs = np.searchsorted(chosen, _action_images(G, block_min, chosen, pair))
    return imgs


def _quotient_by_cosets(G: FiniteGroup, N: np.ndarray) -> np.ndarray:
    idx = np.arange(G.order)
    rep = np.full(G.order, G.order, dtype=np.int64)
    for n in N:
        rep = np.minimum(rep, G.right(int(n)))
    reps = np.unique(rep)
    imgs = np.empty((G.order, len(reps)), dtype=np.int64)
    for g in idx:
        imgs[g] = np.searchsorted(reps, rep[G.mul(g, reps)])
    return imgs


def quotient_with_map(G: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` as a permutation group, together with the quotient map on indices."""
    N = np.unique(np.asarray(normal, dtype=np.int64))
    if not is_subgroup(G, N):
        raise GroupDomainError("not a subgroup")
    if not is_normal(G, N):
        raise GroupDomainError("subgroup is not normal")
    target = G.order // len(N)
    if target == 1:
        imgs = np.zeros((G.order, 1), dtype=np.int64)
    else:
        imgs = _quotient_by_blocks(G, N, pair=False)
        if imgs is None:
            imgs = _quotient_by_blocks(G, N, pair=True)
        if imgs is None:
            imgs = _quotient_by_cosets(G, N)
    degree = imgs.shape[1]
    rows, qmap = np.unique(imgs, axis=0, return_inverse=True)
    if rows.shape[0] != target:
        raise AssertionError("quotient action is not faithful modulo N")
    rows = np.ascontiguousarray(rows.astype(_dtype(degree)))
    gens = [tuple(int(x) for x in rows[qmap[g]]) for g in G.generator_indices]
    return FiniteGroup(degree, gens, rows), np.asarray(qmap).ravel()


def quotient(G: FiniteGroup, normal: Sequence[int]) -> FiniteGroup:
    return quotient_with_map(G, normal)[0]


def central_quotient(G: FiniteGroup, z: int) -> FiniteGroup:
    """``G / <z>`` for a central involution ``z`` (given by index)."""
    z = int(z)
    if z == 0 or G.mul(z, z) != 0:
        raise GroupDomainError("element is not an involution")
    if any(G.mul(z, g) != G.mul(g, z) for g in G.generator_indices):
        raise GroupDomainError("element is not central")
    return quotient(G, [0, z])


# ---------------------------------------------------------------------------
# isomorphism


def _hom_from_images(right_g: list[list[int]], right_h: list[list[int]], n: int) -> list[int] | None:
    """Extend generator images to a map on all of G, or None if inconsistent."""
    phi = [-1] * n
    phi[0] = 0
    queue = [0]
    for x in queue:
        px = phi[x]
        for rg, rh in zip(right_g, right_h):
            y, z = rg[x], rh[px]
            if phi[y] == -1:
                phi[y] = z
                queue.append(y)
            elif phi[y] != z:
                return None
    return phi


class _TableGroup:
    """Minimal interface shared by permutation groups and Cayley tables."""

    def __init__(self, order: int, right, orders: np.ndarray, classes: list[np.ndarray]):
        self.order = order
        self.right = right
        self.orders = orders
        self.classes = classes


def _as_table_group(G: FiniteGroup) -> _TableGroup:
    members = np.arange(G.order)
    return _TableGroup(G.order, lambda j: G.right(j), G.element_orders,
                       element_classes(G, members, G.generator_indices))


def table_group(table: np.ndarray) -> _TableGroup:
    """Wrap a Cayley table ``table[i, j] = i*j`` with identity 0."""
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    power = np.arange(n)
    k = 1
    while (orders == 0).any():
        orders[(power == 0) & (orders == 0)] = k
        power = table[power, np.arange(n)]
        k += 1
    inv = np.argmax(table == 0, axis=1)
    T = _TableGroup(n, lambda j: table[:, j], orders, [])
    maps = [table[table[g, :], inv[g]] for g in _generators_of(T)]
    labels = orbits(n, maps)
    T.classes = [np.nonzero(labels == c)[0] for c in range(int(labels.max()) + 1)]
    return T


def _generators_of(T: _TableGroup) -> list[int]:
    mask = np.zeros(T.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for x in np.argsort(-T.orders, kind="stable"):
        if mask[x]:
            continue
        gens.append(int(x))
        frontier = np.nonzero(mask)[0]
        while frontier.size:
            new = []
            for g in gens:
                p = np.unique(np.asarray(T.right(g))[frontier])
                p = p[~mask[p]]
                mask[p] = True
                new.append(p)
            frontier = np.concatenate(new)
        if mask.all():
            break
    return gens


def isomorphisms(A: _TableGroup, B: _TableGroup, first_up_to_conjugacy: bool = False):
    """Yield isomorphisms A -> B as index lists (all of them by default)."""
    if A.order != B.order:
        return
    if sorted(A.orders.tolist()) != sorted(B.orders.tolist()):
        return
    gens = _generators_of(A)
    if not gens:
        yield [0]
        return
    right_a = [np.asarray(A.right(g)).tolist() for g in gens]
    cache: dict[int, list[int]] = {}

    def rb(h):
        if h not in cache:
            cache[h] = np.asarray(B.right(h)).tolist()
        return cache[h]

    cands = []
    for i, g in enumerate(gens):
        pool = np.nonzero(B.orders == A.orders[g])[0]
        if i == 0 and first_up_to_conjugacy:
            reps = {int(c[0]) for c in B.classes}
            pool = np.array([p for p in pool if p in reps])
        cands.append(pool.tolist())

    def rec(i, chosen):
        if i == len(gens):
            phi = _hom_from_images(right_a, [rb(h) for h in chosen], A.order)
            if phi is not None and len(set(phi)) == A.order:
                yield phi
            return
        for h in cands[i]:
            if h in chosen:
                continue
            yield from rec(i + 1, chosen + [h])

    yield from rec(0, [])


def _abelianization_order(G: FiniteGroup) -> int:
    members = np.arange(G.order)
    d, _ = derived_subgroup(G, members, G.generator_indices)
    return G.order // len(d)


def isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Invariant pruning, then generator-image backtracking."""
    if G.order != H.order:
        return False
    if G.order_histogram() != H.order_histogram():
        return False
    if _abelianization_order(G) != _abelianization_order(H):
        return False
    A, B = _as_table_group(G), _as_table_group(H)
    if sorted(len(c) for c in A.classes) != sorted(len(c) for c in B.classes):
        return False
    return next(isomorphisms(A, B, first_up_to_conjugacy=True), None) is not None


# ---------------------------------------------------------------------------
# named groups


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return closure(1, [])
    return closure(n, [tuple((i + 1) % n for i in range(n))])


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return closure(max(n, 1), [])
    if n == 2:
        return closure(2, [(1, 0)])
    return closure(n, [perm_from_cycles(n, list(range(n))), perm_from_cycles(n, [0, 1])])


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return closure(max(n, 1), [])
    if n == 3:
        return closure(3, [perm_from_cycles(3, [0, 1, 2])])
    cyc = list(range(n)) if n % 2 else list(range(1, n))
    return closure(n, [perm_from_cycles(n, [0, 1, 2]), perm_from_cycles(n, cyc)])


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; for n = 2 the Klein four-group on 4 points."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        return klein_four()
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return closure(n, [rot, ref])


def klein_four() -> FiniteGroup:
    return closure(4, [perm_from_cycles(4, [0, 1], [2, 3]), perm_from_cycles(4, [0, 2], [1, 3])])


def from_multiplication(elements: Sequence, mul, cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """Left regular representation of an abstract group given by ``mul``."""
    elements = list(elements)
    if len(elements) > cap:
        raise EnumerationTooLarge(f"group order exceeds cap {cap}")
    pos = {e: i for i, e in enumerate(elements)}
    rows = np.array([[pos[mul(a, b)] for b in elements] for a in elements], dtype=_dtype(len(elements)))
    gens = [tuple(int(x) for x in r) for r in rows]
    return with_generating_set(group_from_rows(len(elements), gens, rows))


def with_generating_set(G: FiniteGroup) -> FiniteGroup:
    """Replace the generators of ``G`` by a small generating set of its elements."""
    G.generators = tuple(G.element(i) for i in generating_set(G, np.arange(G.order)))
    G._gen_idx = None
    return G


def special_linear_2(p: int) -> tuple[FiniteGroup, int]:
    """SL(2, p) acting on the nonzero column vectors of F_p^2, and the index of -I."""
    vectors = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vectors)}

    def act(m):
        a, b, c, d = m
        return tuple(pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vectors)

    G = closure(len(vectors), [act((1, 1, 0, 1)), act((0, p - 1, 1, 0))])
    return G, G.index(act((p - 1, 0, 0, p - 1)))
