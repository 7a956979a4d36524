"""Replayable desk-scale claim suite shared by the command line and tests.

Each claim runs end to end and returns a plain report dict:

    {"claim": id, "params": {...}, "ok": bool, "elapsed": seconds,
     "assertions": [{"name": ..., "ok": ..., "detail": ...}, ...]}

Claims never raise past their boundary; an unexpected exception becomes a
failed assertion so a batch run always yields a full report. The first
failing assertion's name is what the command line surfaces on exit 1.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import NamedTuple, Optional

from . import asymptotics
from .canon import canonical_form
from .constructions import cx1_family, cx1_pair, cx2_package, f1
from .graphs import Graph, complete, embed_in_part, induced_subgraph, path, \
    turan, u_packing
from .oracle import RestrictedSpace, ex_oracle, restricted_ex, spex_oracle
from .patterns import ForbiddenFamily, chromatic_number, contains_subgraph, \
    is_free
from .spectral import is_equitable, perron_less_than, perron_root_interval, \
    quotient_matrix, spectral_radius

__all__ = ["CLAIM_IDS", "CLAIM_SPECS", "ClaimSpec", "run_claim", "run_all",
           "first_failure"]

CLAIM_IDS = ("f1", "cx1", "cx2", "table", "tree-lemma", "edge-add",
             "transfer-shift", "spectral-turan", "mantel")


class ClaimSpec(NamedTuple):
    id: str
    params: dict
    expected: tuple


class _Checker:
    __slots__ = ("assertions",)

    def __init__(self):
        self.assertions = []

    def check(self, name: str, ok, detail="") -> bool:
        self.assertions.append(
            {"name": name, "ok": bool(ok), "detail": str(detail)})
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(a["ok"] for a in self.assertions)


def _canon(g: Graph) -> str:
    return canonical_form(g).decode("ascii")


# ---------------------------------------------------------------- f1 ----

def _claim_f1(c: _Checker, params: dict, jobs: int) -> None:
    base = f1()
    c.check("chi(F1) = 4", chromatic_number(base) == 4,
            detail=f"got {chromatic_number(base)}")
    peeled = induced_subgraph(base, range(1, base.n))
    c.check("chi(F1 - apex) = 3", chromatic_number(peeled) == 3,
            detail=f"got {chromatic_number(peeled)}")

    for n in (12, 15):
        t = turan(n, 3)
        cls = t.partition.classes
        host = t.with_edge(cls[0][0], cls[0][1]).with_edge(cls[1][0], cls[1][1])
        c.check(f"edge in two parts hosts F1 at n = {n}",
                contains_subgraph(host, base))

    five = Graph(5, [(0, 1), (1, 2), (3, 4)])
    for n in (13, 15):
        t = turan(n, 3)
        w = len(t.partition.classes[0])
        inner = Graph(w, [(0, 1), (1, 2), (3, 4)])
        c.check(f"P3 and P2 in one part host F1 at n = {n}",
                contains_subgraph(embed_in_part(t, 0, inner), base))
    try:
        embed_in_part(turan(12, 3), 0, five)
        c.check("P3 and P2 do not fit a part at n = 12", False,
                detail="embedding unexpectedly succeeded")
    except ValueError as e:
        c.check("P3 and P2 do not fit a part at n = 12", True, detail=e)

    for n in (12, 15):
        t = turan(n, 3)
        for idx in range(3):
            w = len(t.partition.classes[idx])
            host = embed_in_part(t, idx, u_packing(path(2), w))
            c.check(f"matching in part {idx} stays F1-free at n = {n}",
                    not contains_subgraph(host, base))


# --------------------------------------------------------------- cx1 ----

_CX1_NS = (55, 109, 217, 433)


def _claim_cx1(c: _Checker, params: dict, jobs: int) -> None:
    r, k, m = params["r"], params["k"], params["m"]
    fam = cx1_family(r, k, m)
    samples = []
    for n in _CX1_NS:
        g, h = cx1_pair(r, k, n)
        c.check(f"e(H) = e(G) + 1 at n = {n}",
                h.edge_count == g.edge_count + 1,
                detail=f"e(H) = {h.edge_count}, e(G) = {g.edge_count}")
        c.check(f"H avoids the family at n = {n}", is_free(h, fam))
        c.check(f"G avoids the family at n = {n}", is_free(g, fam))
        lg = spectral_radius(g, tol=1e-11).value
        lh = spectral_radius(h, tol=1e-11).value
        c.check(f"lambda(H) < lambda(G) at n = {n}", lh < lg,
                detail=f"gap {lh - lg:.3e}")
        samples.append((n, lh - lg))
    target = 2 - (k - 5 + 6 / k) / (r - 1) - 4 * (k - 1) / (k * r)
    fit = asymptotics.fit_first_order(samples, predicted=target)
    c.check("extrapolated n*(lambda(H) - lambda(G)) within 15% of target",
            abs(fit.first_order - target) <= 0.15 * abs(target),
            detail=f"got {fit.first_order:.6f}, target {target:.6f}")


# --------------------------------------------------------------- cx2 ----

def _cx2_expected(p: int) -> dict:
    b = [[0, 2, p + 1],
         [1, 0, p + 1],
         [Fraction(p - 1, 3), Fraction(2 * (p - 1), 3), 0]]
    cm = [[0, 2, 0, p],
          [1, 0, 0, p],
          [0, 0, 0, p],
          [Fraction(p - 1, 3), Fraction(2 * (p - 1), 3), 1, 0]]
    cp = [[0, 2, 0, p],
          [1, 0, 0, p],
          [0, 0, 1, p],
          [Fraction(p - 4, 3), Fraction(2 * (p - 4), 3), 4, 0]]
    return {"G": b, "H": cm, "H_prime": cp}


def _claim_cx2(c: _Checker, params: dict, jobs: int) -> None:
    p, m = params["p"], params["m"]
    pkg = cx2_package(p, m)
    graphs = {"G": pkg.g, "H": pkg.h, "H_prime": pkg.h_prime}
    expected = _cx2_expected(p)
    quotients = {}
    for label, g in graphs.items():
        part = pkg.partitions[label]
        c.check(f"partition of {label} is equitable", is_equitable(g, part))
        q = quotient_matrix(g, part)
        quotients[label] = q
        want = tuple(tuple(Fraction(x) for x in row) for row in expected[label])
        c.check(f"quotient matrix of {label} matches at p = {p}",
                q.entries == want, detail=f"got {q.entries}")

    bound = p + Fraction(2, 3) - Fraction(1, 5 * p)
    c.check("lambda(H) certified below p + 2/3 - 1/(5p)",
            perron_less_than(quotients["H"], bound))
    c.check("lambda(H') certified below p + 2/3 - 1/(5p)",
            perron_less_than(quotients["H_prime"], bound))
    lo_g, _ = perron_root_interval(quotients["G"], Fraction(1, 10 ** 12))
    c.check("lambda(G) certified above p + 2/3 - 1/(5p)",
            not perron_less_than(quotients["G"], bound) and lo_g > bound,
            detail=f"bracket floor {float(lo_g):.12f} vs {float(bound):.12f}")

    for label, g in graphs.items():
        lo, hi = perron_root_interval(quotients[label], Fraction(1, 10 ** 12))
        measured = spectral_radius(g, tol=1e-10).value
        root = float((lo + hi) / 2)
        c.check(f"power iteration on {label} matches quotient root",
                abs(measured - root) <= 1e-8,
                detail=f"|{measured:.12f} - {root:.12f}|")

    if p == 7:
        rep = restricted_ex(2 * p, pkg.family, RestrictedSpace(2, 3))
        want = {_canon(pkg.h), _canon(pkg.h_prime)}
        c.check("restricted search returns exactly {H, H'}",
                set(rep.extremal_set) == want,
                detail=f"value {rep.value}, set {rep.extremal_set}")


# ------------------------------------------------------------- table ----

_TABLE = {3: Fraction(5, 18), 4: Fraction(7, 32), 5: Fraction(9, 50),
          6: Fraction(11, 72), 7: Fraction(13, 98), 8: Fraction(15, 128),
          9: Fraction(17, 162), 10: Fraction(19, 200)}


def _claim_table(c: _Checker, params: dict, jobs: int) -> None:
    for r, want in _TABLE.items():
        got = asymptotics.c_of_r(r)
        c.check(f"c({r}) = {want.numerator}/{want.denominator}", got == want,
                detail=f"got {got}")
    for r in _TABLE:
        lo, hi = asymptotics.e_interval(r)
        c.check(f"ceiling of E({r}) certified away from an integer",
                hi - lo <= Fraction(1, 10 ** 12)
                and math.ceil(lo) == math.ceil(hi),
                detail=f"window [{float(lo)}, {float(hi)}]")


# ------------------------------------------------- fit-based claims ----

def _check_fit(c: _Checker, label: str, fit, target: float,
               rel: float) -> None:
    c.check(f"{label} within {int(rel * 100)}% of {target:g}",
            abs(fit.first_order - target) <= rel * abs(target),
            detail=f"got {fit.first_order:.6f} (error est {fit.error:.2e})")


def _claim_tree_lemma(c: _Checker, params: dict, jobs: int) -> None:
    fit = asymptotics.star_vs_path(3, 4, jobs=jobs)
    _check_fit(c, "star_vs_path(3, 4) constant", fit, 0.25, 0.05)
    fit = asymptotics.star_vs_path(3, 5, jobs=jobs)
    _check_fit(c, "star_vs_path(3, 5) constant", fit, 0.6, 0.05)


def _claim_edge_add(c: _Checker, params: dict, jobs: int) -> None:
    r, b, a = params["r"], params["b"], params["a"]
    fit = asymptotics.edge_add(r, b, a, jobs=jobs)
    _check_fit(c, f"edge_add({r}, {b}, {a}) constant", fit, 2.0 * (b - a), 0.05)


def _claim_transfer_shift(c: _Checker, params: dict, jobs: int) -> None:
    r, k = params["r"], params["k"]
    fit = asymptotics.transfer_shift(r, k, jobs=jobs)
    _check_fit(c, f"transfer_shift({r}, {k}) constant", fit,
               -4 * (k - 1) / (k * r), 0.05)


# ----------------------------------------------------- oracle claims ----

def _claim_spectral_turan(c: _Checker, params: dict, jobs: int) -> None:
    for r, lo in ((2, 4), (3, 6)):
        fam = ForbiddenFamily([complete(r + 1)], name=f"K{r + 1}")
        for n in range(lo, 9):
            rep = spex_oracle(n, fam, jobs=jobs)
            c.check(f"SPEX({n}, K{r + 1}) is the {r}-part Turan graph",
                    rep.extremal_set == (_canon(turan(n, r)),),
                    detail=f"got {rep.extremal_set}")


def _claim_mantel(c: _Checker, params: dict, jobs: int) -> None:
    fam = ForbiddenFamily([complete(3)], name="K3")
    for n in range(4, 9):
        rep = ex_oracle(n, fam, jobs=jobs)
        c.check(f"ex({n}, K3) = {n * n // 4}", rep.value == n * n // 4,
                detail=f"got {rep.value}")
        c.check(f"EX({n}, K3) is the balanced bipartite Turan graph",
                rep.extremal_set == (_canon(turan(n, 2)),),
                detail=f"got {rep.extremal_set}")


# ----------------------------------------------------------- driver ----

_RUNNERS = {
    "f1": _claim_f1,
    "cx1": _claim_cx1,
    "cx2": _claim_cx2,
    "table": _claim_table,
    "tree-lemma": _claim_tree_lemma,
    "edge-add": _claim_edge_add,
    "transfer-shift": _claim_transfer_shift,
    "spectral-turan": _claim_spectral_turan,
    "mantel": _claim_mantel,
}

_DEFAULTS = {
    "f1": {},
    "cx1": {"r": 3, "k": 6, "m": 5},
    "cx2": {"p": 7, "m": 3},
    "table": {},
    "tree-lemma": {},
    "edge-add": {"r": 3, "b": 2, "a": 0},
    "transfer-shift": {"r": 3, "k": 6},
    "spectral-turan": {},
    "mantel": {},
}

CLAIM_SPECS = {
    "f1": ClaimSpec("f1", _DEFAULTS["f1"],
                    ("chromatic numbers", "two-part edge containment",
                     "path-pair containment", "matching freeness")),
    "cx1": ClaimSpec("cx1", _DEFAULTS["cx1"],
                     ("edge count offset", "family freeness",
                      "spectral gap sign", "extrapolated constant")),
    "cx2": ClaimSpec("cx2", _DEFAULTS["cx2"],
                     ("equitable partitions", "quotient matrices",
                      "certified eigenvalue bounds", "restricted optimum")),
    "table": ClaimSpec("table", _DEFAULTS["table"],
                       ("eight rational densities", "certified ceilings")),
    "tree-lemma": ClaimSpec("tree-lemma", _DEFAULTS["tree-lemma"],
                            ("star versus path constants",)),
    "edge-add": ClaimSpec("edge-add", _DEFAULTS["edge-add"],
                          ("bounded edit constant",)),
    "transfer-shift": ClaimSpec("transfer-shift", _DEFAULTS["transfer-shift"],
                                ("part rebalancing constant",)),
    "spectral-turan": ClaimSpec("spectral-turan", _DEFAULTS["spectral-turan"],
                                ("spectral extremal sets",)),
    "mantel": ClaimSpec("mantel", _DEFAULTS["mantel"],
                        ("edge counts", "extremal sets")),
}


def run_claim(claim_id: str, params: Optional[dict] = None,
              jobs: int = 1) -> dict:
    """Run one claim and return its report dict; see the module docstring."""
    cid = claim_id.replace("_", "-")
    if cid not in _RUNNERS:
        raise ValueError(f"unknown claim {claim_id!r}; "
                         f"choose from {', '.join(CLAIM_IDS)}")
    merged = dict(_DEFAULTS[cid])
    merged.update(params or {})
    checker = _Checker()
    start = time.perf_counter()
    try:
        _RUNNERS[cid](checker, merged, jobs)
    except Exception as e:  # claim bodies must not kill a batch run
        checker.check(f"{cid} ran to completion", False, detail=repr(e))
    return {"claim": cid, "params": merged, "ok": checker.ok,
            "elapsed": round(time.perf_counter() - start, 3),
            "assertions": checker.assertions}


def run_all(jobs: int = 1) -> list:
    """Run every claim in declaration order."""
    return [run_claim(cid, jobs=jobs) for cid in CLAIM_IDS]


def first_failure(reports) -> Optional[str]:
    """Name of the first failing assertion across reports, if any."""
    if isinstance(reports, dict):
        reports = [reports]
    for rep in reports:
        for a in rep["assertions"]:
            if not a["ok"]:
                return f"{rep['claim']}: {a['name']}"
    return None
