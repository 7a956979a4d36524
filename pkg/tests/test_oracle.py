"""Exhaustive ex/spex oracles and the structure-restricted search."""

import math
import os
import random
from fractions import Fraction

import pytest

from spexlab import (
    ExtremalReport,
    ForbiddenFamily,
    RestrictedSpace,
    canonical_form,
    complete,
    complete_multipartite,
    contains_subgraph,
    cx1_pair,
    cx1_family,
    cx2_package,
    decode_graph6,
    empty_graph,
    enumerate_graphs,
    ex_oracle,
    is_free,
    path,
    restricted_ex,
    spectral_radius,
    spex_oracle,
    turan,
)
from oracles import all_graphs_upto_iso

SLOW = os.environ.get("SPEXLAB_RUN_SLOW") != "1"

KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044,
                8: 12346, 9: 274668}


def canon_set(graphs):
    return {canonical_form(g) for g in graphs}


class TestEnumeration:
    def test_counts_up_to_seven(self):
        for n in range(1, 8):
            assert sum(1 for _ in enumerate_graphs(n)) == KNOWN_COUNTS[n]

    @pytest.mark.skipif(SLOW, reason="set SPEXLAB_RUN_SLOW=1")
    def test_count_eight(self):
        assert sum(1 for _ in enumerate_graphs(8)) == KNOWN_COUNTS[8]

    @pytest.mark.skipif(SLOW, reason="set SPEXLAB_RUN_SLOW=1")
    def test_count_nine(self):
        assert sum(1 for _ in enumerate_graphs(9)) == KNOWN_COUNTS[9]

    def test_agrees_with_labeled_dedup(self):
        for n in range(1, 7):
            mine = canon_set(enumerate_graphs(n))
            brute = canon_set(all_graphs_upto_iso(n))
            assert mine == brute

    def test_no_duplicates(self):
        seen = canon_set(enumerate_graphs(6))
        assert len(seen) == 156

    def test_family_pruning_is_exact(self):
        fam = ForbiddenFamily([complete(3)])
        pruned = canon_set(enumerate_graphs(6, family=fam))
        full = {canonical_form(g) for g in all_graphs_upto_iso(6)
                if is_free(g, fam)}
        assert pruned == full

    def test_guardrail(self):
        with pytest.raises(ValueError, match="allow_large"):
            list(enumerate_graphs(10))

    def test_override_with_heavy_pruning(self):
        fam = ForbiddenFamily([complete(2)])
        out = list(enumerate_graphs(11, family=fam, allow_large=True))
        assert len(out) == 1
        assert out[0].edge_count == 0


class TestExOracle:
    def test_mantel_five(self):
        rep = ex_oracle(5, [complete(3)])
        assert rep.value == 6
        assert rep.extremal_set == (canonical_form(turan(5, 2)).decode("ascii"),)

    def test_single_edge_family(self):
        for n in (1, 4, 7):
            rep = ex_oracle(n, [complete(2)])
            assert rep.value == 0
            assert rep.graphs()[0].adj == empty_graph(n).adj

    def test_turan_eight(self):
        rep = ex_oracle(8, [complete(4)])
        assert rep.value == 21
        assert rep.extremal_set == (canonical_form(turan(8, 3)).decode("ascii"),)

    def test_report_graphs_free_and_maximal(self):
        fams = [[complete(3)], [path(4)], [complete(3), complete_multipartite([2, 2])]]
        for members in fams:
            fam = ForbiddenFamily(members)
            rep = ex_oracle(6, fam)
            for g in rep.graphs():
                assert g.edge_count == rep.value
                assert is_free(g, fam)
                for u in range(g.n):
                    for v in range(u + 1, g.n):
                        if not g.has_edge(u, v):
                            assert not is_free(g.with_edge(u, v), fam)

    def test_matches_labeled_brute(self):
        fams = {"triangle": [complete(3)], "p4": [path(4)],
                "both": [complete(3), path(4)]}
        for n in range(2, 7):
            pool = all_graphs_upto_iso(n)
            for members in fams.values():
                fam = ForbiddenFamily(members)
                free = [g for g in pool if is_free(g, fam)]
                best = max(g.edge_count for g in free)
                rep = ex_oracle(n, fam)
                assert rep.value == best
                assert set(rep.extremal_set) == {
                    canonical_form(g).decode("ascii")
                    for g in free if g.edge_count == best}

    def test_extremal_set_sorted(self):
        rep = ex_oracle(6, [complete(3)])
        assert list(rep.extremal_set) == sorted(set(rep.extremal_set))

    def test_report_dict(self):
        rep = ex_oracle(4, [complete(3)])
        d = rep.as_dict()
        assert d["kind"] == "ex"
        assert d["value"] == 4
        assert "elapsed" in d


class TestSpexOracle:
    def test_mantel_five(self):
        rep = spex_oracle(5, [complete(3)])
        assert rep.extremal_set == (canonical_form(turan(5, 2)).decode("ascii"),)
        assert abs(rep.value - math.sqrt(6)) <= 1e-9

    def test_single_edge_family(self):
        rep = spex_oracle(4, [complete(2)])
        assert rep.value == 0.0
        assert rep.graphs()[0].edge_count == 0

    def test_certificate_brackets_value(self):
        rep = spex_oracle(6, [complete(3)])
        lo, hi = (Fraction(s) for s in rep.certificate["perron_bracket"])
        assert lo <= Fraction(rep.value) <= hi or hi - lo < Fraction(1, 10**6)
        assert lo < hi

    def test_prefilter_invariance(self):
        want = None
        for tol in (1e-9, 1e-7, 1e-5):
            rep = spex_oracle(6, [complete(3)], prefilter_tol=tol)
            if want is None:
                want = rep.extremal_set
            assert rep.extremal_set == want

    def test_extremal_radius_is_max(self):
        fam = ForbiddenFamily([path(4)])
        rep = spex_oracle(5, fam)
        best = max(spectral_radius(g).value for g in all_graphs_upto_iso(5)
                   if is_free(g, fam))
        assert abs(rep.value - best) <= 1e-9


class TestRestricted:
    def test_cx2_shape(self):
        pkg = cx2_package(7, 3)
        rep = restricted_ex(14, pkg.family, RestrictedSpace(2, 3))
        want = {canonical_form(pkg.h).decode("ascii"),
                canonical_form(pkg.h_prime).decode("ascii")}
        assert set(rep.extremal_set) == want
        assert rep.value == pkg.h.edge_count
        assert rep.restricted

    def test_trivial_tree_order(self):
        for n in (8, 13):
            rep = restricted_ex(n, [complete(3)], RestrictedSpace(2, 1))
            assert rep.value == turan(n, 2).edge_count
            assert rep.extremal_set == (
                canonical_form(turan(n, 2)).decode("ascii"),)

    def test_cx1_peak_is_path_packing(self):
        fam = cx1_family(3, 6, 5)
        g, h = cx1_pair(3, 6, 55)
        rep = restricted_ex(55, fam, RestrictedSpace(3, 7))
        assert rep.value == h.edge_count == g.edge_count + 1
        assert canonical_form(h).decode("ascii") in rep.extremal_set

    def test_never_beats_true_ex(self):
        fam = ForbiddenFamily([complete(3)])
        for n in (6, 7):
            exact = ex_oracle(n, fam)
            for space in (RestrictedSpace(2, 2), RestrictedSpace(2, 3, "smallest"),
                          RestrictedSpace(2, 2, edit_budget=1)):
                rep = restricted_ex(n, fam, space)
                assert rep.value <= exact.value
                for g in rep.graphs():
                    assert is_free(g, fam)

    def test_space_validation(self):
        with pytest.raises(ValueError):
            RestrictedSpace(0, 3)
        with pytest.raises(ValueError):
            RestrictedSpace(2, 0)
        with pytest.raises(ValueError):
            RestrictedSpace(2, 3, part="middle")
        with pytest.raises(ValueError):
            RestrictedSpace(2, 3, edit_budget=4)

    def test_edit_budget_size_cap(self):
        with pytest.raises(ValueError):
            restricted_ex(30, [complete(3)], RestrictedSpace(2, 2, edit_budget=1))

    def test_report_carries_space(self):
        space = RestrictedSpace(2, 2, "largest")
        rep = restricted_ex(9, [complete(3)], space)
        assert rep.space is space
        assert rep.as_dict()["space"] == space.as_dict()


class TestReportShape:
    def test_graphs_decode(self):
        rep = ex_oracle(5, [complete(3)])
        for s, g in zip(rep.extremal_set, rep.graphs()):
            assert decode_graph6(s).adj == g.adj

    def test_family_label(self):
        rep = ex_oracle(4, ForbiddenFamily([complete(3)], name="triangle"))
        assert rep.family == "triangle"

    def test_jobs_do_not_change_output(self):
        a = ex_oracle(6, [complete(3)], jobs=1)
        b = ex_oracle(6, [complete(3)], jobs=2)
        assert a.value == b.value
        assert a.extremal_set == b.extremal_set
