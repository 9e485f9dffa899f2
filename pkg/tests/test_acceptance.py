"""Acceptance criteria 1-7, each at its stated scale and tolerance.

Every test records a single ``PASS``/``FAIL`` line (shown in the terminal
summary and printed inline) before asserting.
"""

import io
import math
import statistics
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE
from lopsided import formats
from lopsided.apps import (build_ksat, build_rainbow_hamcycle, build_rainbow_matching_kn,
                           build_rainbow_matching_kns, build_transversal, random_color_matrix,
                           random_edge_coloring, random_ksat, verify_solution)
from lopsided.axiomtest import independent_pairs, search_c3, verify_atoms, verify_lifting
from lopsided.cli import main
from lopsided.engine import couple_check, run, run_parallel
from lopsided.lfmis import (Digraph, lfmis_parallel, lfmis_round_stats, lfmis_sequential,
                            random_digraph)
from lopsided.rng import Streams
from lopsided.spaces import (HamCycleSpace, MatchingSpace, PermutationSpace, ProductSpace,
                             VariableSpace)


def record(num, ok, text):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {text}"
    ACCEPTANCE[num] = line
    print(line)
    assert ok, line


def _bad(reports):
    return [r for r in reports if not r.passed]


# 1 -----------------------------------------------------------------------------

def test_criterion_1_axiom_suite():
    t0 = time.time()
    skewed = VariableSpace([[Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)],
                            [Fraction(1, 4), Fraction(3, 4)], [Fraction(1)]])
    h6 = HamCycleSpace(6)
    suites = {
        "S_3": verify_atoms(PermutationSpace(3)),
        "S_4": verify_atoms(PermutationSpace(4)),
        "S_5": verify_atoms(PermutationSpace(5)),
        "K_4": verify_atoms(MatchingSpace(4)),
        "K_6": verify_atoms(MatchingSpace(6)),
        "K_6^(3)": verify_atoms(MatchingSpace(6, 3)),
        "H_4": verify_atoms(HamCycleSpace(4)),
        "H_5": verify_atoms(HamCycleSpace(5)),
        # Paths with up to three vertices; longer paths leave no room for a partner.
        "H_6": verify_atoms(h6, list(h6.atoms(3))),
        "vars 3x3": verify_atoms(VariableSpace.uniform(3, 3)),
        "vars skewed": verify_atoms(skewed),
        "S_3xS_3": verify_atoms(ProductSpace([PermutationSpace(3), PermutationSpace(3)])),
    }
    c3 = search_c3(MatchingSpace(6, 3))
    total = sum(len(r) for r in suites.values())
    bad = {k: len(_bad(v)) for k, v in suites.items() if _bad(v)}
    ok = not bad
    record(1, ok, f"{total} exact checks over {len(suites)} spaces, failures {bad or 0}; "
                  f"K_6^(3) C3 search {c3['failures']}/{c3['pairs_tried']} failing pairs "
                  f"(informational); {time.time() - t0:.1f}s")


# 2 -----------------------------------------------------------------------------

def test_criterion_2_lifting_suite():
    t0 = time.time()
    out = {}
    s4 = PermutationSpace(4)
    out["S_4"] = verify_lifting(s4, independent_pairs(s4, s4.atoms()))
    k6 = MatchingSpace(6)
    out["K_6"] = verify_lifting(k6, independent_pairs(k6, k6.atoms()))
    h5 = HamCycleSpace(5)
    out["H_5"] = verify_lifting(h5, independent_pairs(h5, h5.atoms(3)),
                                partners=list(h5.atoms(3)))
    lifted_c3 = sum(1 for v in out.values() for r in v if r.axiom == "C3")
    bad = {k: len(_bad(v)) for k, v in out.items() if _bad(v)}
    total = sum(len(v) for v in out.values())
    record(2, not bad, f"{total} lifted checks ({lifted_c3} C3), failures {bad or 0}; "
                       f"{time.time() - t0:.1f}s")


# 3 -----------------------------------------------------------------------------

def test_criterion_3_coupling():
    cases = {
        "transversal n=20 D=2": lambda s: build_transversal(random_color_matrix(20, 2, s), 2, 0.01),
        "7-SAT occ<=14": lambda s: build_ksat(random_ksat(100, 200, 7, 14, s), 0.01),
        "rainbow matching n=20 D=2": lambda s: build_rainbow_matching_kn(
            random_edge_coloring(20, 2, seed=s), 0.01),
    }
    agree = {}
    busy = 0
    for name, make in cases.items():
        hits = 0
        for s in range(50):
            pr = make(s)
            assert pr.certificate.satisfied, name
            hits += couple_check(pr, Streams(s))
            busy += sum(r.v_size > 1 for r in run_parallel(pr, s).rounds)
        agree[name] = hits
    # Beyond the criterion: dense uncertified 4-SAT, where rounds carry many conflicts.
    stress = sum(couple_check(build_ksat(random_ksat(60, 110, 4, seed=s), 0.0), Streams(s), 60)
                 for s in range(50))
    ok = all(v == 50 for v in agree.values()) and stress == 50
    record(3, ok, f"exact agreement {agree} (rounds with |V|>1: {busy}); "
                  f"dense 4-SAT stress {stress}/50")


# 4 -----------------------------------------------------------------------------

def test_criterion_4_lfmis():
    gen = np.random.default_rng(2024)
    graphs = 0
    mismatches = 0
    for n in (1, 2, 10, 50, 200, 500):
        for p in (0.01, 0.1, 0.5):
            for _ in range(12):
                g = random_digraph(n, p, gen)
                order = gen.permutation(n).tolist()
                mismatches += lfmis_parallel(g, order)[0] != lfmis_sequential(g, order)
                graphs += 1
    for n in (2, 17, 100, 500):
        fwd = Digraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        back = Digraph.from_edges(n, [(i + 1, i) for i in range(n - 1)])
        for g in (fwd, back, Digraph.from_undirected(n, [(i, i + 1) for i in range(n - 1)])):
            mismatches += lfmis_parallel(g)[0] != lfmis_sequential(g)
            graphs += 1
    medians = {}
    for n in (2 ** 10, 2 ** 12, 2 ** 14):
        medians[n] = lfmis_round_stats(n, 8 / n, 50, Streams(n))["median"]
    dense = lfmis_round_stats(2 ** 10, 0.5, 50, Streams(1))["median"]
    rounds_ok = all(m <= 8 * math.log2(n) ** 2 for n, m in medians.items())
    ok = graphs >= 200 and mismatches == 0 and rounds_ok and dense <= 800
    record(4, ok, f"{graphs} digraphs, {mismatches} mismatches; median rounds {medians} "
                  f"(mean out-degree 8), dense n=1024 median {dense}; ceiling 8 log2(n)^2")


# 5 -----------------------------------------------------------------------------

APPS = {
    "a transversal n=100 D=10": (
        lambda s: build_transversal(random_color_matrix(100, 10, s), 2, 0.01), "parallel"),
    "b matching K_100 D=10": (
        lambda s: build_rainbow_matching_kn(random_edge_coloring(100, 10, seed=s), 0.01),
        "parallel"),
    "c hamcycle K_100 D=2": (
        lambda s: build_rainbow_hamcycle(random_edge_coloring(100, 2, seed=s), 0.01), "parallel"),
    "d 7-SAT occ<=14": (lambda s: build_ksat(random_ksat(200, 400, 7, 14, s), 0.01), "parallel"),
    "e K_12^(3) D=2": (
        lambda s: build_rainbow_matching_kns(random_edge_coloring(12, 2, 3, seed=s), 3, 0.01),
        "seq"),
}


def test_criterion_5_applications():
    t0 = time.time()
    rates = {}
    unverified = 0
    uncertified = 0
    for name, (make, mode) in APPS.items():
        wins = 0
        for s in range(20):
            pr = make(s)
            uncertified += not pr.certificate.satisfied
            r = run(pr, mode, Streams(s), epsilon=0.01)
            if r.success:
                if verify_solution(pr, r.state):
                    wins += 1
                else:
                    unverified += 1
        rates[name] = wins / 20
    elapsed = time.time() - t0
    ok = all(v >= 0.95 for v in rates.values()) and not unverified and not uncertified \
        and elapsed < 600
    record(5, ok, f"success rates {rates}; uncertified {uncertified}, unverified {unverified}; "
                  f"{elapsed:.1f}s")


# 6 -----------------------------------------------------------------------------

def test_criterion_6_round_scaling():
    eps = 0.2
    sizes = (1000, 4000, 16000)
    medians = {}
    for m in sizes:
        rounds = []
        for s in range(20):
            cnf = random_ksat(math.ceil(m * 7 / 6), m, 7, 6, seed=m * 100 + s)
            pr = build_ksat(cnf, eps)
            assert pr.certificate.satisfied
            r = run_parallel(pr, Streams(s), epsilon=eps)
            assert r.success and verify_solution(pr, r.state)
            rounds.append(len(r.rounds))
        medians[m] = statistics.median(rounds)
    xs = np.log([float(m) for m in sizes])
    slope = float(np.polyfit(xs, [medians[m] for m in sizes], 1)[0])
    incs = [medians[b] - medians[a] for a, b in zip(sizes, sizes[1:])]
    monotone = all(d >= 0 for d in incs)
    # Per 4x in m the median may rise by a bounded step; linear growth would be 4x.
    sublinear = all(d <= 4 for d in incs) and medians[16000] < 4 * max(medians[1000], 1)
    record(6, monotone and sublinear,
           f"median rounds {medians}, increments {incs}, slope per ln(m) {slope:.2f}")


# 7 -----------------------------------------------------------------------------

def test_criterion_7_cli_determinism(tmp_path):
    inputs = {
        "transversal": formats.write_color_matrix(random_color_matrix(30, 3, 5)),
        "sat": formats.write_dimacs(random_ksat(100, 200, 7, 14, 5)),
        "rainbow-matching": formats.write_edge_coloring(random_edge_coloring(30, 3, seed=5)),
    }
    same = {}
    for cmd, text in inputs.items():
        path = tmp_path / f"{cmd}.in"
        path.write_text(text)
        blobs = set()
        for workers in (1, 4, 1, 4):
            stats, sol = tmp_path / "stats.jsonl", tmp_path / "sol.json"
            code = main([cmd, "--input", str(path), "--seed", "7", "--mode", "parallel",
                         "--workers", str(workers), "--stats", str(stats), "--output", str(sol)],
                        io.StringIO(), io.StringIO())
            assert code == 0
            blobs.add(stats.read_bytes() + b"\0" + sol.read_bytes())
        same[cmd] = len(blobs) == 1
    record(7, all(same.values()), f"byte-identical stats and solutions across workers {{1,4}}: "
                                  f"{same}")
