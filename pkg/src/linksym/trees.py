"""Labeled JSJ trees and group actions on them.

A tree carries a map from link components to vertices.  Components are
0-based internally; the JSON form keys them "1".."n".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, GroupDomainError, Perm, compose, has_index_two_subgroup


@dataclass(frozen=True)
class LabeledTree:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, int], ...]  # (component, vertex), sorted by component

    def __post_init__(self):
        if self.vertices < 1:
            raise GroupDomainError("a tree needs at least one vertex")
        if len(self.edges) != self.vertices - 1:
            raise GroupDomainError("a tree on k vertices has k - 1 edges")
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices) or u == v:
                raise GroupDomainError(f"bad edge {(u, v)}")
        if len(set(self.edges)) != len(self.edges):
            raise GroupDomainError("repeated edge")
        seen = {0}
        stack = [0]
        adj = self.adjacency
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.vertices:
            raise GroupDomainError("tree is not connected")
        comps = [c for c, _ in self.labels]
        if len(set(comps)) != len(comps):
            raise GroupDomainError("a component can sit in only one vertex")
        for _, v in self.labels:
            if not 0 <= v < self.vertices:
                raise GroupDomainError(f"label on unknown vertex {v}")

    @classmethod
    def build(cls, vertices: int, edges: Iterable[Sequence[int]], labels: dict[int, int] | Sequence[int]) -> "LabeledTree":
        if not isinstance(labels, dict):
            labels = dict(enumerate(labels))
        es = tuple(sorted(tuple(sorted((int(u), int(v)))) for u, v in edges))
        return cls(vertices, es, tuple(sorted((int(c), int(v)) for c, v in labels.items())))

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @property
    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    @property
    def components(self) -> list[int]:
        return [c for c, _ in self.labels]

    def labels_at(self, v: int) -> list[int]:
        return [c for c, w in self.labels if w == v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def leaves(self) -> list[int]:
        return [v for v, a in enumerate(self.adjacency) if len(a) == 1]

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges],
                "labels": {str(c + 1): v for c, v in self.labels}}

    @classmethod
    def from_json(cls, data: dict) -> "LabeledTree":
        return cls.build(data["vertices"], data["edges"],
                         {int(c) - 1: int(v) for c, v in data["labels"].items()})


# -- constructors -----------------------------------------------------------


def path_tree(k: int, labels: dict[int, int] | None = None) -> LabeledTree:
    return LabeledTree.build(k, [(i, i + 1) for i in range(k - 1)], labels or {})


def star_tree(leaves: int) -> LabeledTree:
    """Center 0, leaf i + 1 labeled with component i."""
    return LabeledTree.build(leaves + 1, [(0, i + 1) for i in range(leaves)],
                             {i: i + 1 for i in range(leaves)})


def spider_tree(legs: int, length: int) -> LabeledTree:
    """Hub 0 with ``legs`` paths of ``length`` edges; leg i ends in component i."""
    edges, labels = [], {}
    v = 1
    for leg in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, v))
            prev = v
            v += 1
        labels[leg] = prev
    return LabeledTree.build(v, edges, labels)


def double_star_tree(per_side: int) -> LabeledTree:
    """Two spiders with legs of length 1 whose hubs are joined by an edge."""
    edges = [(0, 1)]
    labels = {}
    v = 2
    for side in (0, 1):
        for _ in range(per_side):
            edges.append((side, v))
            labels[len(labels)] = v
            v += 1
    return LabeledTree.build(v, edges, labels)


# -- subtrees ---------------------------------------------------------------


def spanned_vertices(T: LabeledTree, V: Iterable[int]) -> set[int]:
    """Vertex set of the minimal subtree containing ``V``."""
    V = set(V)
    if not V:
        raise GroupDomainError("vertex set must be non-empty")
    if not all(0 <= v < T.vertices for v in V):
        raise GroupDomainError("unknown vertex")
    adj = T.adjacency
    alive = set(range(T.vertices))
    deg = {v: len(adj[v]) for v in alive}
    queue = deque(v for v in alive if deg[v] <= 1 and v not in V)
    while queue:
        v = queue.popleft()
        if v not in alive or v in V or len(alive) == 1:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in V:
                    queue.append(w)
    return alive


def spanned_subtree(T: LabeledTree, V: Iterable[int]) -> LabeledTree:
    """Minimal subtree containing ``V``; kept vertices are renumbered in order."""
    keep = sorted(spanned_vertices(T, V))
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in T.edges if u in new and v in new]
    labels = {c: new[v] for c, v in T.labels if v in new}
    return LabeledTree.build(len(keep), edges, labels)


# -- automorphisms ----------------------------------------------------------


def center(T: LabeledTree) -> tuple[int, ...]:
    """Survivors of repeatedly deleting every current leaf (one vertex or one edge)."""
    adj = T.adjacency
    alive = set(range(T.vertices))
    deg = [len(a) for a in adj]
    layer = [v for v in alive if deg[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for w in adj[v]:
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return tuple(sorted(alive))


def _rooted_codes(adj, parent: list[int], order: list[int]) -> list[str]:
    codes = [""] * len(adj)
    for v in reversed(order):
        kids = sorted(codes[w] for w in adj[v] if parent[w] == v)
        codes[v] = "(" + "".join(kids) + ")"
    return codes


def _bfs(adj, roots: Sequence[int]) -> tuple[list[int], list[int]]:
    parent = [-1] * len(adj)
    order = list(roots)
    seen = set(roots)
    for v in order:
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
    return parent, order


def automorphisms_matching(T: LabeledTree, forced: dict[int, int]):
    """Yield automorphisms (as vertex tuples) agreeing with ``forced``."""
    adj = T.adjacency
    cen = center(T)
    if len(cen) == 1:
        root_choices = [(cen[0],)]
    else:
        a, b = cen
        root_choices = [(a, b), (b, a)]
    # with a central edge both ends are roots of their halves
    parent, order = _bfs(adj, list(cen))
    codes = _rooted_codes(adj, parent, order)
    n = T.vertices
    image = [-1] * n
    used = [False] * n

    def assign(v, w):
        image[v] = w
        used[w] = True

    def unassign(v):
        used[image[v]] = False
        image[v] = -1

    def rec(k):
        if k == n:
            yield tuple(image)
            return
        v = order[k]
        p = parent[v]
        for w in adj[image[p]]:
            if used[w] or codes[w] != codes[v]:
                continue
            if v in forced and forced[v] != w:
                continue
            assign(v, w)
            yield from rec(k + 1)
            unassign(v)

    start = len(root_choices[0])
    for roots in root_choices:
        if any(r in forced and forced[r] != img for r, img in zip(order[:start], roots)):
            continue
        if any(codes[r] != codes[img] for r, img in zip(order[:start], roots)):
            continue
        for r, img in zip(order[:start], roots):
            assign(r, img)
        yield from rec(start)
        for r in order[:start]:
            unassign(r)


def extend_leaf_permutation(T: LabeledTree, g: Perm) -> tuple[int, ...] | None:
    """The label-equivariant automorphism inducing ``g`` on components, if any.

    When every leaf carries a label the answer is unique; otherwise the first
    automorphism in search order is returned.
    """
    lab = T.label_map
    forced: dict[int, int] = {}
    for c, v in lab.items():
        if not 0 <= c < len(g) or g[c] not in lab:
            raise GroupDomainError("permutation does not act on the tree's components")
        w = lab[g[c]]
        if forced.get(v, w) != w:
            return None
        forced[v] = w
    if len(set(forced.values())) != len(forced):
        return None
    return next(automorphisms_matching(T, forced), None)


# -- actions ----------------------------------------------------------------


@dataclass(frozen=True)
class TreeAction:
    group: FiniteGroup
    tree: LabeledTree
    vertex_maps: tuple[tuple[int, ...], ...]  # indexed like group elements


def tree_action(T: LabeledTree, G: FiniteGroup) -> TreeAction:
    """Extend a group acting on components to the tree, or raise if it does not extend."""
    gens = G.generator_indices
    gen_maps = []
    for g in gens:
        m = extend_leaf_permutation(T, G.element(g))
        if m is None:
            raise GroupDomainError("group action does not extend to the tree")
        gen_maps.append(m)
    maps: list[tuple[int, ...] | None] = [None] * G.order
    maps[0] = tuple(range(T.vertices))
    queue = [0]
    for x in queue:
        for g, m in zip(gens, gen_maps):
            y = G.mul(x, g)
            img = compose(maps[x], m)
            if maps[y] is None:
                maps[y] = img
                queue.append(y)
            elif maps[y] != img:
                raise GroupDomainError("generator extensions do not define an action")
    return TreeAction(G, T, tuple(maps))


def is_automorphism(T: LabeledTree, m: Sequence[int]) -> bool:
    edges = set(T.edges)
    return sorted(m) == list(range(T.vertices)) and all(tuple(sorted((m[u], m[v]))) in edges for u, v in T.edges)


def validate_action(A: TreeAction) -> None:
    lab = A.tree.label_map
    for i, m in enumerate(A.vertex_maps):
        if not is_automorphism(A.tree, m):
            raise GroupDomainError(f"vertex map {i} is not an automorphism")
        g = A.group.element(i)
        if any(m[v] != lab[g[c]] for c, v in lab.items()):
            raise GroupDomainError(f"vertex map {i} is not label-equivariant")
    for i in A.group.generator_indices:
        for j in range(A.group.order):
            if compose(A.vertex_maps[j], A.vertex_maps[i]) != A.vertex_maps[A.group.mul(j, i)]:
                raise GroupDomainError("vertex maps do not form a homomorphism")


@dataclass(frozen=True)
class Locus:
    kind: str  # "vertex" or "edge"
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}


def invariant_locus(T: LabeledTree, A: TreeAction) -> Locus:
    cen = center(T)
    locus = Locus("vertex" if len(cen) == 1 else "edge", cen)
    for m in A.vertex_maps:
        if tuple(sorted(m[v] for v in cen)) != cen:
            raise AssertionError("pruned locus is not invariant")
    return locus


def requires_vertex(A: TreeAction) -> bool:
    """True when the acting group has no subgroup of index 2."""
    return not has_index_two_subgroup(A.group)


def edge_contradiction(T: LabeledTree, A: TreeAction) -> bool:
    """An inverted invariant edge under a group without an index-2 subgroup.

    The elements not inverting the edge would form an index-2 subgroup, so a
    ``True`` here means the input is inconsistent.
    """
    locus = invariant_locus(T, A)
    if locus.kind != "edge" or not requires_vertex(A):
        return False
    a, b = locus.vertices
    return any(m[a] == b for m in A.vertex_maps)


def check_branch_structure(T: LabeledTree, n: int) -> bool:
    """Single vertex, or n labeled leaves on equal branches from one hub."""
    lab = T.label_map
    if sorted(lab) != list(range(n)):
        return False
    if T.vertices == 1:
        return True
    leaves = T.leaves()
    if len(leaves) != n or any(len(T.labels_at(v)) != 1 for v in leaves):
        return False
    if any(v not in leaves for v in lab.values()):
        return False
    hubs = [v for v in range(T.vertices) if T.degree(v) > 2]
    if len(hubs) != 1:
        return False
    parent, order = _bfs(T.adjacency, [hubs[0]])
    depth = {hubs[0]: 0}
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    return len({depth[v] for v in leaves}) == 1
