"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in ``LEDGER`` and printed in the terminal summary
(see conftest), so ``pytest tests/test_acceptance.py`` ends with a table.
"""

import io
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath

from nonsas.checker import (
    AXIOM_IDS,
    Status,
    canonical_domain,
    check_additivity,
    check_cn5_order,
    check_legendre,
    grid_domain,
    replay,
    run_check,
    run_suite,
)
from nonsas.cli import main
from nonsas.dsl import CORPUS, corpus_program, evaluate, load, pretty_print
from nonsas.kernel import Angle, Point, Ray, angle_at, measure_value
from nonsas.labeling import (
    Power,
    add_classes,
    builtin_scheme,
    congruent,
    extend,
    identity_scheme,
    label_at,
    label_of,
)
from nonsas.values import ExactPi, Interval, Ordering, Precision, TriBool, compare

LEDGER: list[str] = []
SCHEMES = ("identity", "counterexample", "power")


def report(n: int, title: str, ok: bool, detail: str) -> None:
    LEDGER.append(f"criterion {n} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), out, err), out.getvalue()


def sq(p, q):
    return (p.x - q.x) ** 2 + (p.y - q.y) ** 2


def test_criterion_1_main_theorem():
    start = time.perf_counter()
    code, out = cli("verify", "--scheme", "counterexample", "--format", "json")
    elapsed = time.perf_counter() - start
    checks = {c["axiom_id"]: c for c in json.loads(out)["checks"]}
    w = checks["pp"]["witness"]
    ok = (code == 0
          and checks["playfair_classical"]["status"] == "Holds"
          and checks["playfair_hilbert"]["status"] == "Holds"
          and checks["sas"]["status"] == "Violated"
          and checks["pp"]["status"] == "Violated"
          and (w["label_P"], w["label_P_prime"], w["sum"]) == ("1/4 π", "9/16 π", "13/16 π")
          and elapsed < 5)
    report(1, "main theorem", ok,
           f"exit {code}, pp classes {w['label_P']} + {w['label_P_prime']} = {w['sum']}, {elapsed:.2f} s")


def test_criterion_2_sas_witness():
    s = builtin_scheme("counterexample")
    r = run_check("sas", s, canonical_domain())
    w = r.witness
    (a, b, c), (a2, b2, c2) = ([Point(*map(Fraction, p)) for p in w[k]] for k in ("triangle", "image"))
    sides = [(sq(a, b), sq(a2, b2)), (sq(a, c), sq(a2, c2)), (sq(b, c), sq(b2, c2))]
    included = label_of(s, angle_at(a, b, c)), label_of(s, angle_at(a2, b2, c2))
    seconds = label_of(s, angle_at(b, a, c)), label_of(s, angle_at(b2, a2, c2))
    ok = (r.status is Status.VIOLATED and replay(r, s)
          and all(x == y for x, y in sides) and {x for x, _ in sides} == {1, 2}
          and included == (ExactPi(Fraction(1, 2)),) * 2
          and seconds == (ExactPi(Fraction(7, 16)), ExactPi(Fraction(1, 4))))
    report(2, "SAS witness", ok,
           f"squared sides {[str(x) for x, _ in sides]}, included {included[0]}, second labels {seconds[0]} vs {seconds[1]}")


def test_criterion_3_identity_soundness():
    start = time.perf_counter()
    results = run_suite(identity_scheme(), canonical_domain(budget=1000))
    elapsed = time.perf_counter() - start
    bad = [r.axiom_id for r in results if r.status is not Status.HOLDS or r.samples_run < 1000]
    ok = not bad and len(results) == len(AXIOM_IDS) and elapsed < 60
    fewest = min(results, key=lambda r: r.samples_run)
    report(3, "identity soundness", ok,
           f"{len(results)} checks Hold, fewest samples {fewest.samples_run} ({fewest.axiom_id}), "
           f"{elapsed:.1f} s" + (f"; failing {bad}" if bad else ""))


def test_criterion_4_legendre():
    s = builtin_scheme("counterexample")
    good = check_legendre(s, [Point(5, 5), Point(6, 5), Point(6, 6)])
    bad = check_legendre(s, [Point(0, 0), Point(1, 0), Point(1, 1)])
    ok = (good.status is Status.HOLDS and good.witness["sum"] == "1 π"
          and bad.status is Status.VIOLATED and bad.witness["sum"] == "19/16 π")
    report(4, "Legendre flexibility", ok, f"sums {good.witness['sum']} and {bad.witness['sum']}")


def _perpendicular(rng):
    hot = [Point(1, 1), Point(2, 3), Point(3, 1), Point(0, 0)]
    if rng.random() < 0.5:
        v = rng.choice(hot)
    else:
        v = Point(Fraction(rng.randint(-99, 99), rng.randint(1, 9)), Fraction(rng.randint(-99, 99), rng.randint(1, 9)))
    while True:
        dx, dy = rng.randint(-50, 50), rng.randint(-50, 50)
        if (dx, dy) != (0, 0):
            break
    sign = rng.choice((1, -1))
    return Angle(Ray(v, dx, dy), Ray(v, -sign * dy, sign * dx))


def test_criterion_5_right_angles_and_supplements():
    rng = random.Random(5)
    half = ExactPi(Fraction(1, 2))
    schemes = [builtin_scheme(n) for n in SCHEMES]
    right_bad = 0
    for _ in range(10_000):
        a = _perpendicular(rng)
        right_bad += sum(label_of(s, a) != half for s in schemes)
    grid = [ExactPi(Fraction(k, 1001)) for k in range(1, 1001)]
    supp_bad = 0
    for s in schemes:
        for p in [Point(0, 0), *s.override_points]:
            for x in grid:
                y = ExactPi(1 - x.q)
                total = add_classes(label_at(s, p, x), label_at(s, p, y))
                supp_bad += compare(total, ExactPi(Fraction(1))) is not Ordering.EQUAL
    report(5, "right angles and supplements", right_bad == 0 and supp_bad == 0,
           f"{right_bad} non-right labels in 10^4 pairs x 3 schemes, "
           f"{supp_bad} supplement failures on a {len(grid)}-point grid")


def test_criterion_6_power_order():
    rng = random.Random(6)
    precision = Precision(bits=64, max_bits=512)
    rs = [Fraction(3, 2), Fraction(2), Fraction(5, 2)]
    unknown = wrong = done = 0
    while done < 100_000:
        b = Power(rs[done % 3])
        q1 = Fraction(rng.randint(1, 10 ** 6 - 1), 10 ** 6)
        # every tenth pair is adjacent on the grid to stress the separation
        q2 = q1 + Fraction(1, 10 ** 6) if done % 10 == 0 else Fraction(rng.randint(1, 10 ** 6 - 1), 10 ** 6)
        if q1 == q2 or q2 >= 1:
            continue
        lo, hi = min(q1, q2), max(q1, q2)
        order = compare(extend(b, ExactPi(lo), precision), extend(b, ExactPi(hi), precision), precision)
        unknown += order is None
        wrong += order is not None and order is not Ordering.LESS
        done += 1
    s, d = builtin_scheme("power"), canonical_domain()
    cn5 = check_cn5_order(s, d)
    add = check_additivity(s, d)
    w = add.witness or {}
    ok = (unknown == 0 and wrong == 0 and cn5.status is Status.HOLDS and add.status is Status.VIOLATED
          and w.get("part_labels") == ["1/16 π", "1/16 π"] and w.get("whole_label") == "1/2 π")
    report(6, "power-family order", ok,
           f"{done} comparisons, {wrong} out of order, {unknown} unknown; cn5 {cn5.status.value}; "
           f"additivity {add.status.value} with {' + '.join(w.get('part_labels', []))} vs {w.get('whole_label')}")


def _cosine_equal(a1: Angle, a2: Angle) -> bool:
    # cos = dot / (|h||k|): equal iff signs of dot agree and dot^2 / norms agree
    def parts(a):
        h, k = a.h, a.k
        dot = h.dx * k.dx + h.dy * k.dy
        return dot, (h.dx ** 2 + h.dy ** 2) * (k.dx ** 2 + k.dy ** 2)
    d1, n1 = parts(a1)
    d2, n2 = parts(a2)
    return (d1 > 0) == (d2 > 0) and (d1 < 0) == (d2 < 0) and d1 * d1 * n2 == d2 * d2 * n1


def _random_angle(rng, bound=8):
    v = Point(rng.randint(-9, 9), rng.randint(-9, 9))
    while True:
        h = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        k = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        if (0, 0) not in (h, k) and h[0] * k[1] != h[1] * k[0]:
            return Angle(Ray(v, *h), Ray(v, *k))


def test_criterion_7_oracles():
    rng = random.Random(7)
    s = identity_scheme()
    agree = 0
    for i in range(10_000):
        a1 = _random_angle(rng, 3 if i % 2 else 8)
        a2 = _random_angle(rng, 3 if i % 2 else 8)
        agree += (congruent(s, a1, a2) is TriBool.TRUE) == _cosine_equal(a1, a2)
    mpmath.mp.prec = 256
    contained = 0
    for _ in range(10_000):
        a = _random_angle(rng, 1000)
        true = mpmath.atan2(a.cross, a.dot)
        v = measure_value(a)
        if isinstance(v, Interval):
            lo = mpmath.mpf(v.lo.numerator) / v.lo.denominator
            hi = mpmath.mpf(v.hi.numerator) / v.hi.denominator
            contained += lo <= true <= hi
        else:
            contained += abs(true - mpmath.mpf(v.q.numerator) / v.q.denominator * mpmath.pi) < mpmath.mpf(2) ** -200
    report(7, "oracle equivalence", agree == 10_000 and contained == 10_000,
           f"congruence agreement {agree}/10000, oracle containment {contained}/10000")


DSL_PAIRS = [("playfair_classical.axm", "playfair_classical"), ("pp.axm", "pp"), ("cn5.axm", "cn5"),
             ("additivity.axm", "additivity"), ("legendre.axm", "legendre")]


def test_criterion_8_dsl_agreement():
    d = grid_domain(3)
    to_status = {TriBool.TRUE: Status.HOLDS, TriBool.FALSE: Status.VIOLATED, TriBool.UNKNOWN: Status.UNDETERMINED}
    same = 0
    rows = []
    for name in ("identity", "counterexample"):
        s = builtin_scheme(name)
        for file, aid in DSL_PAIRS:
            (outcome,) = evaluate(corpus_program(file), d, s).values()
            built = run_check(aid, s, d).status
            same += to_status[outcome.verdict] is built
            rows.append(f"{name}/{aid}={built.value}")
    parsed = round_trip = 0
    for file in CORPUS:
        prog = corpus_program(file)
        parsed += 1
        round_trip += load(pretty_print(prog)) == prog
    report(8, "DSL agreement", same == 10 and parsed == round_trip == len(CORPUS),
           f"{same}/10 verdict pairs identical, {round_trip}/{len(CORPUS)} corpus files round-trip")


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "nonsas", "verify", "--scheme", "counterexample", "--seed", "42", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    report(9, "determinism", ok, f"{len(a.stdout)} bytes, identical: {a.stdout == b.stdout}")
