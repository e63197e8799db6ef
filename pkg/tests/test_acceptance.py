"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see conftest.py).
"""

import csv
import io
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from usoq import cli
from usoq.cube import from_elements as S
from usoq.orientation import example_uso, flip, psi, random_uso, save, uniform
from usoq.period import orbit_period, sink_via_period
from usoq.qpf import QpfConfig, RecoveryExhausted, find_sink, qpf_distribution, statevector_distribution
from usoq.solvers import brute_decision, solve_by_facet_decision
from usoq.verifier import enumerate_usos, global_sink, global_source, is_bijection, is_uso


def record(number, title, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] AC{number:<2} {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_ac01_exponential_period_family(tmp_path, capsys):
    paths = []
    for n in range(1, 17):
        path = tmp_path / f"psi{n}.uso"
        save(psi(n), path)
        paths.append(path)
    bad = []
    start = time.perf_counter()
    for n, path in enumerate(paths, start=1):
        code = cli.main(["period", str(path)])
        rep = kv(capsys.readouterr().out)
        if code != 0 or int(rep["period"]) != 2 ** n:
            bad.append(n)
    elapsed = time.perf_counter() - start
    record(1, "psi(n) period == 2^n for n=1..16 via `period`, under 10 s",
           not bad and elapsed < 10.0, f"{elapsed:.2f}s, mismatches={bad}")


def test_ac02_flip_closure(usos3):
    checks = sum(1 for m in usos3 for lam in range(8) if is_uso(flip(m, lam)))
    record(2, "flip closure on all 744 3-cube USOs x 8 flip sets", len(usos3) == 744 and checks == 5952,
           f"{checks}/5952")


def test_ac03_outmap_bijection(usos3):
    exhaustive = all(is_bijection(m) for m in usos3)
    generated = [(n, seed) for n in range(1, 11) for seed in range(100)
                 if not is_bijection(random_uso(n, seed))]
    record(3, "outmaps are bijections: 744 enumerated + 1000 generated (n<=10)",
           exhaustive and not generated, f"failures={generated[:5]}")


def test_ac04_enumeration_counts():
    counts = [sum(1 for _ in enumerate_usos(n)) for n in (1, 2, 3)]
    record(4, "USO counts 2 / 12 / 744 for n = 1 / 2 / 3", counts == [2, 12, 744], f"got {counts}")


def test_ac05_period_gives_sink(usos3):
    bad = [m for m in usos3 if sink_via_period(m) != global_sink(m)]
    families = []
    for n in range(1, 11):
        families.append(psi(n))
        families.extend(uniform(n, a) for a in {0, 1, (1 << n) - 1, (1 << n) // 3})
        families.extend(random_uso(n, seed) for seed in range(100))
    bad += [m for m in families if sink_via_period(m) != global_sink(m)]
    record(5, "s^(l-1)(empty) is the global sink on 744 enumerated + psi/uniform/random (n<=10)",
           not bad, f"{len(usos3) + len(families)} instances, {len(bad)} mismatches")


def test_ac06_example_ground_truth():
    m = example_uso()
    res = orbit_period(m, 0)
    ok = (is_uso(m) and global_sink(m) == S([1, 3]) and global_source(m) == 0
          and m.eval(0) == S([1, 2, 3]) and res.period == 4)
    record(6, "worked 3-cube example: USO, sink {1,3}, source empty set, period 4", ok,
           f"sink={global_sink(m)}, period={res.period}")


def test_ac07_distribution_exactness(usos2, usos3):
    worst = 0.0
    for l in (1, 2, 4, 8, 16):
        for t in (6, 10, 14):
            p = qpf_distribution(l, t)
            support = np.arange(0, 2 ** t, 2 ** t // l)
            off = np.delete(p, support)
            worst = max(worst, float(np.abs(p[support] - 1 / l).max()), float(np.abs(off).max()))
    uniform_ok = worst <= 1e-12

    instances = list(usos2) + list(usos3)
    instances += [uniform(4, a) for a in range(16)] + [psi(4)] + [random_uso(4, s) for s in range(200)]
    tv_worst = 0.0
    for m in instances:
        for t in range(m.n, 11):
            sv = statevector_distribution(m, t)
            an = qpf_distribution(orbit_period(m, 0).period, t)
            tv_worst = max(tv_worst, 0.5 * float(np.abs(sv - an).sum()))
    record(7, "QPF distribution exact for l | 2^t; analytic vs statevector agree (n<=4, t<=10)",
           uniform_ok and tv_worst < 1e-9, f"max dev {worst:.1e}, max TV {tv_worst:.1e}")


def _trial(m, seed):
    cfg = QpfConfig(t=2 * m.n + 1, samples=20, seed=seed, attempts=1)
    try:
        return find_sink(m, cfg).sink == global_sink(m)
    except RecoveryExhausted:
        return False


def test_ac08_end_to_end_success():
    random_hits = sum(_trial(random_uso(6, seed), seed) for seed in range(1000))
    psi_trials = [(n, seed) for n in range(1, 13) for seed in range(25)]
    psi_hits = sum(_trial(psi(n), seed) for n, seed in psi_trials)
    ok = random_hits >= 990 and psi_hits == len(psi_trials)
    record(8, "quantum_find_sink (t=2n+1, 20 samples): >=99% on random n=6, 100% on psi(n<=12)", ok,
           f"random {random_hits}/1000, psi {psi_hits}/{len(psi_trials)}")


def test_ac09_naive_walk_vs_qpf(capsys):
    code = cli.main(["bench", "--family", "psi", "--n-range", "1..14", "--methods", "naive-walk,qpf",
                     "--samples", "20"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    naive_ok = [int(r["naive-walk_queries"]) for r in rows] == [2 ** n for n in range(1, 15)]
    oracle_calls = [int(r["qpf_oracle_calls"]) if r["qpf_oracle_calls"] else None for r in rows]
    sinks_ok = all(r["qpf_sink"] == r["naive-walk_sink"] == str(1 << (int(r["n"]) - 1)) for r in rows)
    qpf_ok = all(c is not None and c <= 21 for c in oracle_calls)
    record(9, "bench psi n=1..14: naive walk costs 2^n, qpf uses <= 21 oracle powers",
           code == 0 and naive_ok and qpf_ok and sinks_ok, f"qpf oracle calls {oracle_calls}")


def test_ac10_search_to_decision(usos3):
    bad = 0
    for m in usos3:
        calls = 0
        oracle = brute_decision(m)

        def decision(c):
            nonlocal calls
            calls += 1
            return oracle(c)

        res = solve_by_facet_decision(m, decision)
        if res.sink != global_sink(m) or calls != 3:
            bad += 1
    record(10, "facet recursion: exactly n decision calls, correct sink on all 744 3-cube USOs",
           bad == 0, f"{bad} failures")
