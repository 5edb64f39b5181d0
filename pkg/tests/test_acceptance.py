"""Acceptance gate: the twelve headline checks, each with its time budget.

Every check prints one ``criterion N: PASS|FAIL`` line (collected into the
pytest terminal summary as well).  Run directly with ``python3
tests/test_acceptance.py`` to get only those lines.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from linksym.groups import (
    GroupDomainError,
    alternating,
    cyclic,
    isomorphic,
    simple_nonabelian_quotients,
    subgroup_group,
    symmetric,
)
from linksym.link_model import act_on_linking_matrix, random_linking_matrix
from linksym.rotation import binary_group, projection_lemma_check, so4_model, verify_a5_only
from linksym.seifert import check_transposition, valid_attach_data
from linksym.subgroups import all_subgroups, conjugacy_classes_of_subgroups
from linksym.trees import (
    check_branch_structure,
    double_star_tree,
    invariant_locus,
    requires_vertex,
    spider_tree,
    tree_action,
)
from linksym.whitten import (
    MISSING_GAMMA2_TYPES,
    LinkRecord,
    WhittenElement,
    abstract_type,
    act_on_link,
    gamma2_missing_subgroups,
    gamma_group,
    gamma_mul,
)

import oracles

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 20240101


def record(n: int, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    line = f"criterion {n}: {status} ({detail}; {elapsed:.2f}s of {budget:g}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert elapsed < budget, line


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_gamma1_has_five_subgroups():
    subs, dt = timed(lambda: all_subgroups(gamma_group(1)))
    record(1, len(subs) == 5, dt, 1, f"{len(subs)} subgroups")


def test_criterion_02_gamma2_order_and_classes():
    def run():
        G = gamma_group(2)
        return G.order, len(conjugacy_classes_of_subgroups(G))
    (order, classes), dt = timed(run)
    record(2, order == 16 and classes == 27, dt, 10, f"order {order}, {classes} classes")


def test_criterion_03_s4_has_eleven_classes():
    classes, dt = timed(lambda: len(conjugacy_classes_of_subgroups(symmetric(4))))
    record(3, classes == 11, dt, 5, f"{classes} classes")


def test_criterion_04_gamma_orders():
    orders, dt = timed(lambda: [gamma_group(n).order for n in range(1, 6)])
    expected = [2 ** (n + 1) * math.factorial(n) for n in range(1, 6)]
    record(4, orders == expected, dt, 10, f"orders {orders}")


def test_criterion_05_unrealized_gamma2_subgroups():
    def run():
        G = gamma_group(2)
        recs = gamma2_missing_subgroups()
        types = [isomorphic(subgroup_group(G, r.indices()), abstract_type(k))
                 for r, k in zip(recs, MISSING_GAMMA2_TYPES)]
        return [r.order for r in recs], types
    (orders, types), dt = timed(run)
    ok = orders == [4, 4, 4, 4, 8] and all(types)
    record(5, ok, dt, 5, f"orders {orders} against stated [4, 4, 4, 4, 8], types {MISSING_GAMMA2_TYPES} "
                         f"verified {types}")


def test_criterion_06_a5_is_the_only_simple_quotient():
    r, dt = timed(lambda: verify_a5_only(30))
    record(6, r["flag"] and r["quotients"] == ["A5"], dt, 60,
           f"quotients {r['quotients']} over {len(r['entries'])} subgroup classes")


def test_criterion_07_so4_models():
    def run():
        I, T = binary_group("BinaryIcosahedral"), binary_group("BinaryTetrahedral")
        return ([q.name for q in simple_nonabelian_quotients(so4_model(I, I))],
                [q.name for q in simple_nonabelian_quotients(so4_model(T, T))])
    (qi, qt), dt = timed(run)
    record(7, qi == ["A5"] and qt == [], dt, 60, f"2I x 2I: {qi}, 2T x 2T: {qt}")


LEMMA_POOL = {"C2": lambda: cyclic(2), "S3": lambda: symmetric(3), "A4": lambda: alternating(4),
              "S4": lambda: symmetric(4), "A5": lambda: alternating(5)}


def test_criterion_08_projection_lemma():
    def run():
        out = []
        for a in LEMMA_POOL:
            for b in LEMMA_POOL:
                out.append(projection_lemma_check(LEMMA_POOL[a](), LEMMA_POOL[b](), names=(a, b)))
        return out
    reports, dt = timed(run)
    bad = [r["pair"] for r in reports if not r["flag"]]
    total = sum(r["subgroups_checked"] for r in reports)
    record(8, not bad, dt, 300, f"{len(reports)} pairs, {total} subgroups, failing {bad}")


def test_criterion_09_tree_suite():
    def run():
        actions = vertices = violations = 0
        for n, G in ((4, alternating(4)), (5, alternating(5))):
            for T in oracles.leaf_labeled_trees(10, n):
                try:
                    A = tree_action(T, G)
                except GroupDomainError:
                    continue
                actions += 1
                assert requires_vertex(A)
                locus = invariant_locus(T, A)
                if locus.kind == "vertex":
                    vertices += 1
                else:
                    violations += 1
        return actions, vertices, violations
    (actions, vertices, violations), dt = timed(run)
    record(9, actions > 0 and violations == 0, dt, 300,
           f"{actions} extendable actions, {vertices} vertex loci, {violations} edge loci")


def test_criterion_10_branch_structure():
    def run():
        spiders = [check_branch_structure(spider_tree(n, k), n) for n in range(3, 7) for k in range(1, 5)]
        return all(spiders), check_branch_structure(double_star_tree(3), 6)
    (spiders_ok, double_star), dt = timed(run)
    record(10, spiders_ok and not double_star, dt, 1,
           f"spiders accepted {spiders_ok}, double star accepted {double_star}")


def test_criterion_11_seifert_sweep():
    def run():
        data = list(valid_attach_data(5))
        fails = [(a, w) for a in data for w in range(-5, 6) if not check_transposition(a, w)]
        return len(data), fails
    (count, fails), dt = timed(run)
    record(11, count > 0 and not fails, dt, 30, f"{count} attach data x 11 twists, {len(fails)} failures")


def test_criterion_12_action_laws():
    def run():
        rng = np.random.default_rng(SEED)

        def signs(n):
            return tuple(int(x) for x in rng.choice([1, -1], n))

        def element(n):
            return WhittenElement(int(rng.choice([1, -1])), signs(n), tuple(int(x) for x in rng.permutation(n)))

        link_fail = lk_fail = 0
        for _ in range(1000):
            n = int(rng.integers(1, 6))
            s, t = element(n), element(n)
            L = LinkRecord(int(rng.choice([1, -1])), signs(n), tuple(int(x) for x in rng.permutation(n)))
            link_fail += act_on_link(gamma_mul(s, t), L) != act_on_link(s, act_on_link(t, L))
        for _ in range(500):
            n = int(rng.integers(1, 6))
            s, t = element(n), element(n)
            lk = random_linking_matrix(rng, n)
            lk_fail += act_on_linking_matrix(gamma_mul(s, t), lk) != \
                act_on_linking_matrix(s, act_on_linking_matrix(t, lk))
        return link_fail, lk_fail
    (a, b), dt = timed(run)
    record(12, a == 0 and b == 0, dt, 10, f"{a} link failures in 1000, {b} matrix failures in 500")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
