"""Top-level acceptance gate: one test (and one pass/fail line) per criterion.

Run with `pytest -v tests/test_acceptance.py` to see the per-criterion lines.
"""
import random
import time
from fractions import Fraction
from itertools import combinations

from rootsplit.catalog import (
    build,
    build_sum,
    label,
    normalize,
    parse_label_sum,
    simple_labels_up_to,
    weyl_group,
)
from rootsplit.pipeline import classify_all, classify_pair
from rootsplit.rootcore import classify_pair as classify_root_pair
from rootsplit.rootcore import validate_root_system
from rootsplit.splitting import (
    check_constraints,
    find_splittings,
    splittings_oracle,
    verify_certificate,
    wolf_certificate,
)
from rootsplit.subalgebra import (
    closed_subsystem,
    enumerate_closed_subsystems,
    isotropy_weights,
    weights_from_set,
    wolf_subsystem,
)


def test_criterion_1_axiom_suite_all_catalog_systems_under_30s():
    start = time.monotonic()
    for lab in simple_labels_up_to(8):
        system = build(lab)
        assert validate_root_system(system.roots).ok, str(lab)
        for a, b in combinations(system.roots, 2):
            if a == tuple(-x for x in b):
                continue
            classify_root_pair(a, b)  # raises on any trichotomy violation
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"axiom suite took {elapsed:.1f}s"


def test_criterion_2_g2_torus_exclusion():
    start = time.monotonic()
    report = classify_pair("G2", "torus")
    assert report.certificates == ()
    assert report.verdict == "no_splitting"
    assert time.monotonic() - start < 1.0


def test_criterion_3_so7_u3_certificate():
    report = classify_pair("B3", "A2#0")
    assert report.verdict == "so7_u3"
    assert report.quaternionic_n == 3
    assert len(report.certificates) >= 1
    assert [c.tag for c in report.cases] == ["case_d3"]

    b3 = build(label("B", 3))
    h = closed_subsystem(b3, [r for r in b3.roots if sum(r) == 0])
    weights = isotropy_weights(b3, h)
    cert = find_splittings(weights)[0]
    constraints = check_constraints(normalize(b3), cert)
    assert constraints.beta_norm2 == Fraction(3, 4)
    assert set(constraints.pairings) == {Fraction(1, 4)}


def test_criterion_4_wolf_witnesses_rank_8_verify_rank_4_rediscovered():
    for lab in simple_labels_up_to(8):
        parent = build(lab)
        weights = isotropy_weights(parent, wolf_subsystem(parent))
        if not weights.weights:
            continue  # rank 1: h = g, the quotient is a point
        cert = wolf_certificate(parent)
        assert verify_certificate(weights, cert), str(lab)
        if lab.rank <= 4:
            assert cert in find_splittings(weights), str(lab)


def test_criterion_5_rank_3_classification_under_5min():
    start = time.monotonic()
    report = classify_all(3)
    positives = [p for p in report.pairs if p.certificates]
    strict = {
        (p.g_label, p.h_description, p.verdict)
        for p in positives if p.verdict != "symmetric_candidate"
    }
    wolf_expected = set()
    for g in ("A2", "A3", "B2", "B3", "C3", "G2"):
        wolf = next(p for p in report.pairs if p.g_label == g and p.is_wolf)
        wolf_expected.add((g, wolf.h_description, "wolf_space"))
    expected = wolf_expected | {("B3", "A2+T1", "so7_u3")}
    assert strict == expected

    for g in ("G2", "B2"):
        torus = next(
            p for p in report.pairs
            if p.g_label == g and not p.h_description.startswith(("A", "B", "C"))
        )
        assert torus.certificates == () and torus.verdict == "no_splitting"

    extras = [p for p in positives if p.verdict == "symmetric_candidate"]
    for p in extras:
        assert p.symmetric  # weight-level positives excluded downstream

    products = classify_all(2, include_products=True)
    s2xs2 = [p for p in products.pairs if p.verdict == "s2xs2_type"]
    assert len(s2xs2) == 1
    assert s2xs2[0].g_label == "A1+A1" and s2xs2[0].quaternionic_n == 1

    assert time.monotonic() - start < 300.0


def test_criterion_6_oracle_equivalence_rank_3():
    checked = 0
    for lab in simple_labels_up_to(3) + [parse_label_sum("A1+A1")]:
        parent = build_sum(lab) if isinstance(lab, list) else build(lab)
        for h in enumerate_closed_subsystems(parent):
            weights = isotropy_weights(parent, h)
            if (not weights.weights or weights.dim_M % 4 != 0
                    or len(weights.weights) > 12):
                continue
            fast = set(find_splittings(weights))
            slow = set(splittings_oracle(weights))
            assert fast == slow, f"{parent.roots} / {h.roots}"
            checked += 1
    assert checked >= 10


def test_criterion_7_weyl_equivariance_100_random_cases():
    rng = random.Random(20260826)
    labels3 = simple_labels_up_to(3)
    cases = []
    for lab in labels3:
        parent = build(lab)
        wg = weyl_group(parent)
        subs = [
            h for h in enumerate_closed_subsystems(parent)
            if len(h.roots) < len(parent.roots)
            and (len(parent.roots) - len(h.roots)) % 4 == 0
        ]
        if subs:
            cases.append((parent, wg, subs))
    from rootsplit.splitting import _canonical_certificate

    for _ in range(100):
        parent, wg, subs = rng.choice(cases)
        h = rng.choice(subs)
        k = rng.randrange(len(wg.elements))
        word = wg.words[k]
        weights = isotropy_weights(parent, h)
        moved = weights_from_set(
            [wg.apply_word(word, w) for w in weights.weights]
        )
        transformed = set(find_splittings(moved))
        # Certificates transform by the same linear action, up to
        # canonical form.
        expected = set()
        for c in find_splittings(weights):
            beta = wg.apply_word(word, c.beta)
            plus_half = [
                wg.apply_word(
                    word, tuple(b + s * a for b, a in zip(c.beta, alpha))
                )
                for alpha in c.alphas for s in (1, -1)
            ]
            expected.add(_canonical_certificate(beta, plus_half))
        assert expected == transformed


def test_criterion_8_negative_spot_checks():
    s8 = classify_pair("B4", "D4#0")
    assert s8.certificates == () and s8.verdict == "no_splitting"
    b2 = classify_pair("B2", "torus")
    assert b2.certificates == () and b2.verdict == "no_splitting"
