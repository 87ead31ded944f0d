"""The six acceptance criteria, each at its stated (exact) tolerance.

Every test records one pass/fail line that is printed in the terminal summary.
"""

import itertools
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from nakcot import lemmas
from nakcot.core.labels import EXAMPLE_U, EXAMPLE_U_PRIME, EXAMPLE_W, EXAMPLE_W1_MINUS_W, EXAMPLE_X_MINUS_W
from nakcot.cotorsion import (
    check_cotorsion_pair,
    enumerate_cotorsion_pairs,
    hereditary_check,
    main1_phi,
    verify_main1,
    verify_main5,
    w_tower,
)
from nakcot.subcat import calculus
from nakcot.subcat.base import Subcat, left_perp, right_perp
from nakcot.subcat.calculus import SummandClosureError, is_extension_closed, sigma
from nakcot.tautilt import build_quotient_ctx, two_rigid, two_term, verify_main2

from conftest import cat_of, named, record

HERE = Path(__file__).parent


def example_checks() -> dict[str, bool]:
    """Everything criterion 1 asks for, computed from scratch."""
    cat = cat_of(9, 4)
    U = named(cat, EXAMPLE_U)
    checks = {}
    pair = check_cotorsion_pair(None, U, right_perp(U))
    checks["pair"] = bool(pair.ok)
    checks["hereditary"] = hereditary_check(pair).verdict
    for i in (1, 2):
        s = sigma(pair.V, i)
        checks[f"Sigma{i}V_extension_closed"] = is_extension_closed(s).closed
        checks[f"Sigma{i}V_pair"] = bool(check_cotorsion_pair(None, left_perp(s), s).ok)
    W = pair.heart
    checks["W_is_the_nine"] = W == named(cat, EXAMPLE_W) and len(W) == 9
    t = w_tower(pair, 1)
    checks["W1_minus_W"] = t[1] - W == named(cat, EXAMPLE_W1_MINUS_W)
    Up = named(cat, EXAMPLE_U_PRIME)
    xy = main1_phi(pair, 1, check_cotorsion_pair(None, Up, right_perp(Up)))
    checks["X_minus_W"] = xy.U - W == named(cat, EXAMPLE_X_MINUS_W)
    return checks


def test_criterion_1_example_reproduction():
    # a fresh interpreter so that no table computed by other tests is reused
    code = "import json, test_acceptance as t; print(json.dumps(t.example_checks()))"
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", code], cwd=HERE, capture_output=True, text=True, timeout=600)
    seconds = time.perf_counter() - t0
    assert proc.returncode == 0, proc.stderr
    checks = json.loads(proc.stdout.strip().splitlines()[-1])
    checks["under_2_minutes"] = seconds < 120
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    record(1, ok, f"{len(checks)} checks, cold run {seconds:.1f}s" + (f"; failed {bad}" if bad else ""))
    assert ok, bad


def _main1_instances(n, m):
    cat = cat_of(n, m)
    for pr in enumerate_cotorsion_pairs(Subcat.full(cat)):
        if hereditary_check(pr).verdict:
            for i in range(1, max(cat.global_dimension, 1) + 1):
                yield pr, i


@pytest.mark.slow
def test_criterion_2_main1_exhaustive():
    verified, rejected, failed = 0, 0, []
    for n, m in ((2, 2), (3, 2), (4, 3)):
        for pr, i in _main1_instances(n, m):
            rep = verify_main1(pr, i)
            if rep.status == "rejected":
                # the shifted pairs are not cotorsion pairs: i is not a valid index here
                assert any(c.name.startswith("sigma") and not c.passed for c in rep.preconditions)
                rejected += 1
                continue
            equal = rep.counts["intermediate_pairs"] == rep.counts["pairs_in_W_i"]
            roundtrip = len(rep.forward) == rep.counts["intermediate_pairs"] and len(rep.backward) == rep.counts["pairs_in_W_i"]
            if rep.status == "pass" and rep.bijection and equal and roundtrip and rep.certainty.value == "exhaustive":
                verified += 1
            else:
                failed.append(((n, m), pr.to_dict(), i, rep.status))
    ok = not failed and verified > 0
    record(2, ok, f"{verified} instances bijective, {rejected} with invalid i (shifted pair precondition), {len(failed)} failures")
    assert ok, failed[:3]


def _admissible_W(n, m):
    cat = cat_of(n, m)
    I = Subcat.injectives(cat)
    rest = (Subcat.full(cat) - I).indices
    for r in range(1, len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            W = I | Subcat(cat, sum(1 << k for k in combo))
            if two_rigid(W):
                yield W


def _main2_holds(rep) -> bool:
    if rep.conclusion is not True or not rep.bijection:
        return False
    if rep.counts["cotorsion_pairs_in_G"] != rep.counts["support_tau_tilting"]:
        return False
    return all(f["lemma_p4"] and f["cor_impor"] for f in rep.forward)


@pytest.mark.slow
def test_criterion_3_main2(example_W):
    # the Example's W misses three injectives, so the theorem's hypothesis
    # I < W fails there; the conclusions are evaluated with enforcement off
    ex = verify_main2(example_W, enforce_hypothesis=False)
    ex_ok = _main2_holds(ex)
    small = list(_admissible_W(3, 2))
    small_ok = all(_main2_holds(verify_main2(W)) for W in small)
    ok = ex_ok and small_ok
    record(
        3,
        ok,
        f"Example: {ex.counts.get('cotorsion_pairs_in_G')} pairs = {ex.counts.get('support_tau_tilting')} classes "
        f"(I < W fails, evaluated anyway); (3,2): {len(small)} admissible W",
    )
    assert ok


@pytest.mark.slow
def test_criterion_4_main5(example_pair):
    # I < W fails for the Example, so the conclusions are evaluated with enforcement off
    results = {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        rep = verify_main5(example_pair, i, j, enforce_hypothesis=False)
        subs = {c.name: c.passed for c in rep.subchecks}
        wanted = ["cotorsion_pair_in_W_j", "relative_hereditary", f"enough2_W{i}", f"enough2_W{j}", "cor_higher"]
        # relative_hereditary is only evaluated once the pair itself verifies
        results[(i, j)] = [n if n in subs else f"{n} (not evaluated)" for n in wanted if not subs.get(n, False)]
    ok = not any(results.values())
    failing = {f"{i},{j}": v for (i, j), v in results.items() if v}
    record(4, ok, "all three instances verified" if ok else f"failing sub-checks {failing}")
    assert ok, failing


@pytest.mark.slow
def test_criterion_5_property_suites(cat94, example_W):
    prev = calculus.DEBUG
    calculus.DEBUG = True
    checks = []
    try:
        full = Subcat.full(cat94)
        pairs = enumerate_cotorsion_pairs(full)
        G = two_term(example_W)
        ctx = build_quotient_ctx(G, example_W, sigma(example_W))
        pairs_G = enumerate_cotorsion_pairs(G)
        small_pairs = []
        for n in range(1, 9):
            for m in range(2, max(n, 2) + 1):
                if sum(min(m, n - v + 1) for v in range(1, n + 1)) <= 8:
                    c = cat_of(n, m)
                    checks.append(lemmas.y2_suite(Subcat.full(c)))
                    small_pairs += enumerate_cotorsion_pairs(Subcat.full(c))
        checks.append(lemmas.y1_suite(pairs))
        checks.append(lemmas.y1_suite(pairs_G))
        checks.append(lemmas.y1_suite(small_pairs))
        wak = lemmas.wakamatsu_suite(cat94, 100, 0)
        wak.passed = wak.passed and wak.detail["subcategories"] >= 100
        checks.append(wak)
        checks.append(lemmas.imp_suite(pairs))
        checks.append(lemmas.imp_suite(small_pairs))
        checks += lemmas.quotient_suites(ctx)
        summand = True
    except SummandClosureError:
        summand = False
    finally:
        calculus.DEBUG = prev
    bad = sorted({c.name for c in checks if not c.passed} | ({"summand_closure"} if not summand else set()))
    ok = not bad and summand
    names = sorted({c.name for c in checks} | {"summand_closure"})
    record(5, ok, f"{len(names)} suites over {len(pairs)} pairs of mod A and {len(pairs_G)} in G" + (f"; failed {bad}" if bad else ""))
    assert ok, bad


@pytest.mark.slow
def test_criterion_6_oracle_equivalence():
    checks = [lemmas.characteristic_suite(n, m, [2, 3]) for n, m in ((4, 2), (5, 3), (9, 4))]
    for n in range(1, 5):
        for m in (2, 3):
            checks.append(lemmas.cone_oracle_suite(cat_of(n, m)))
    comparisons = sum(c.detail.get("comparisons", 0) for c in checks if isinstance(c.detail, dict))
    ok = all(c.passed for c in checks)
    record(6, ok, f"3 characteristic comparisons, 8 cone oracle runs ({comparisons} object comparisons)")
    assert ok, [c.detail for c in checks if not c.passed]
