"""Acceptance criteria, one test each.

Each test records a one-line PASS/FAIL verdict; ``conftest.py`` prints them in
the terminal summary.  Running this file directly prints the same lines.
"""

import math
import random
import time

from mwalgebra import suites
from mwalgebra.algebra import equals
from mwalgebra.expr import parse, to_string
from mwalgebra.errors import ExpressionSyntaxError
from mwalgebra.graph import validate
from mwalgebra.ifs import attractor, check_equivariance, check_surjectivity, code, dimension, self_similarity_gap
from mwalgebra.sampling import random_element, random_graph

from conftest import CONFIG_DIR, config

N_GRAPHS = 20
PAIRS = 500
SAMPLES = 1000

VERDICTS = {}


def graphs():
    out = []
    for seed in range(N_GRAPHS):
        g = random_graph(random.Random(1000 + seed), max_vertices=6, max_edges=12)
        assert validate(g).ok
        out.append(g)
    return out


def verdict(n, ok, detail):
    VERDICTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    return ok


def _tally_summary(total):
    bad = {k: v for k, v in total.items() if v[0] != v[1]}
    counts = ", ".join(f"{k} {p}/{t}" for k, (p, t) in sorted(total.items()))
    return not bad, counts


def _merge(total, tally):
    for k, (p, t) in tally.items():
        acc = total.setdefault(k, [0, 0])
        acc[0] += p
        acc[1] += t


def test_criterion_1_symbolic_identities():
    t0 = time.perf_counter()
    total = {}
    for i, g in enumerate(graphs()):
        _merge(total, suites.algebra_suite(g, random.Random(i), PAIRS))
    elapsed = time.perf_counter() - t0
    ok, counts = _tally_summary(total)
    ok = ok and elapsed < 60 and total["associativity"][1] >= N_GRAPHS * PAIRS
    assert verdict(1, ok, f"{N_GRAPHS} graphs x {PAIRS} pairs, {counts}, {elapsed:.1f}s (< 60s)")


def test_criterion_2_tau_and_intertwining():
    total = {}
    for i, g in enumerate(graphs()):
        _merge(total, suites.intertwine_suite(g, random.Random(100 + i), SAMPLES))
    ok, counts = _tally_summary(total)
    ok = ok and total["tau_multiplicative"][1] >= N_GRAPHS * SAMPLES
    assert verdict(2, ok, f"{SAMPLES} cylinder functions per graph, {counts}")


def test_criterion_3_toeplitz_and_covariance():
    total = {}
    for i, g in enumerate(graphs()):
        _merge(total, suites.toeplitz_suite(g, random.Random(200 + i), SAMPLES))
        _merge(total, suites.covariance_suite(g, random.Random(300 + i), SAMPLES))
    ok, counts = _tally_summary(total)
    ok = ok and total["toeplitz"][1] >= N_GRAPHS * SAMPLES and total["covariance"][1] >= N_GRAPHS * SAMPLES
    assert verdict(3, ok, f"{SAMPLES} inputs per graph, {counts}")


def test_criterion_4_generator_coverage():
    total = {}
    for g in graphs():
        _merge(total, suites.generator_coverage(g))
    ok, counts = _tally_summary(total)
    assert verdict(4, ok, counts)


def test_criterion_5_dimension_closed_forms():
    cases = [
        ("cantor", math.log(2) / math.log(3)),
        ("sierpinski", math.log(3) / math.log(2)),
        ("single_loop", 0.0),
    ]
    parts, ok = [], True
    for name, want in cases:
        sys = config(name).system
        t0 = time.perf_counter()
        got = dimension(sys)
        dt = time.perf_counter() - t0
        good = abs(got - want) <= 1e-9 and dt < 1.0
        ok &= good
        parts.append(f"{name} |err|={abs(got - want):.1e} in {dt * 1000:.0f}ms")
    assert verdict(5, ok, "; ".join(parts))


def test_criterion_6_coding_map():
    sys = config("cantor").system
    diam = sys.max_diam
    bound = 2 * 3.0**-30 * diam + 1e-12
    rep = check_equivariance(sys, SAMPLES, 30, 1e-12, seed=0)
    point, _ = code(sys, sys.graph.path(*["e2"] * 20), 20)
    err = abs(point[0] - 1.0)
    ok = rep.passed and rep.max_discrepancy <= bound and err <= 3.0**-20
    assert verdict(6, ok, f"equivariance max {rep.max_discrepancy:.2e} <= {bound:.2e} over {SAMPLES} paths; "
                          f"|code(e2^20) - 1| = {err:.2e} <= {3.0**-20:.2e}")


def test_criterion_7_surjectivity():
    half = check_surjectivity(config("half_maps").system, 0.01)
    cant = check_surjectivity(config("cantor").system, 0.05)
    ok = half.passed and not cant.passed
    assert verdict(7, ok, f"half-maps eps=0.01 gap {half.max_gap['v']:.4f} (pass); "
                          f"Cantor eps=0.05 gap {cant.max_gap['v']:.4f} (fail)")


def test_criterion_8_self_similarity():
    parts, ok = [], True
    for path in sorted(CONFIG_DIR.glob("*.toml")):
        cfg = config(path.stem)
        if cfg.system is None or not validate(cfg.graph).ok:
            continue
        eps = 0.01 if cfg.system.dimension == 1 else 0.02
        approx = attractor(cfg.system, eps)
        gap = max(self_similarity_gap(cfg.system, approx).values())
        good = gap <= 2 * approx.radius
        ok &= good
        parts.append(f"{path.stem} {gap:.1e}<={2 * approx.radius:.1e}")
    assert verdict(8, ok and len(parts) >= 5, ", ".join(parts))


def test_criterion_9_parser_roundtrip():
    rng = random.Random(9)
    good = 0
    for _ in range(SAMPLES):
        g = random_graph(rng)
        x = random_element(g, rng, 5, 3)
        if equals(parse(g, to_string(x)), x):
            good += 1
    cantor = config("cantor").graph
    cases = [("s(e1", 4), ("s(e1) +", 7), ("p(v))", 4)]
    offsets = 0
    for text, want in cases:
        try:
            parse(cantor, text)
        except ExpressionSyntaxError as exc:
            offsets += exc.offset == want
    ok = good == SAMPLES and offsets == len(cases)
    assert verdict(9, ok, f"round-trip {good}/{SAMPLES}, error offsets {offsets}/{len(cases)}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(VERDICTS):
        print(VERDICTS[n])
