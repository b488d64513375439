"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
(run with ``pytest tests/test_acceptance.py -v -s``).

Runtime budgets are asserted where stated; the session fixture in conftest
warms the JIT kernels first, so budgets measure the computation itself.
"""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from cesaro import (
    DEFAULT_BASES,
    GeometricPartition,
    HorizonError,
    a_s_density_formulas,
    a_s_set,
    alternating,
    block_density,
    block_means,
    cesaro_means,
    check_theorem1,
    constant,
    counterexample,
    counterexample_demo,
    decomposition_residual,
    density_band,
    from_runs,
    multiples_of,
    paper_example_set,
    random_bounded,
    shifted,
    strong_cesaro_means,
    telescoping_residuals,
)
from cesaro.cli import run

GRID = (1.2, 1.5, 2.0, math.e, 3.0, 10.0)


@contextmanager
def criterion(index: int, name: str, budget_s: float | None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {index} ({name}): FAIL "
              f"({time.perf_counter() - t0:.2f}s)", flush=True)
        raise
    dt = time.perf_counter() - t0
    if budget_s is not None and dt >= budget_s:
        print(f"ACCEPTANCE {index} ({name}): FAIL "
              f"(runtime {dt:.2f}s over budget {budget_s}s)", flush=True)
        raise AssertionError(f"runtime {dt:.2f}s exceeds budget {budget_s}s")
    print(f"ACCEPTANCE {index} ({name}): PASS ({dt:.2f}s"
          + (f", budget {budget_s}s)" if budget_s is not None else ")"), flush=True)


def test_criterion_1_exact_identity_suite():
    generators = [
        counterexample(),
        paper_example_set().source(),
        a_s_set(0.5).source(),
        random_bounded(7, 1.0, 10**6),
        constant(-2.0),
    ]
    with criterion(1, "exact identity suite", 30.0):
        for src in generators:
            theta = src.declared_bound
            for alpha in GRID:
                for n in (10**3, 10**5, 10**6):
                    res = decomposition_residual(src, alpha, n)
                    assert res <= 1e-9 * n * theta, (src.label, alpha, n, res)
                part = GeometricPartition(alpha)
                k_max = part.completed_blocks(10**6)
                res = telescoping_residuals(src, alpha, k_max)
                for k in range(1, k_max + 1):
                    if not math.isnan(res[k - 1]):
                        n_k = part.iota(k + 1) - 1
                        assert res[k - 1] <= 1e-9 * n_k * theta, (src.label, alpha, k)


def test_criterion_2_partition_exactness():
    with criterion(2, "partition exactness", 1.0):
        for alpha in GRID:
            part = GeometricPartition(alpha)
            total = 0
            t = 0
            while True:
                try:
                    hi = part.iota(t + 2)
                except HorizonError:
                    break
                t += 1
                total += hi - part.iota(t)
                assert total == part.iota(t + 1) - 1, (alpha, t)
                # sum of w_j over j <= t-1 equals iota_t - 1
                assert part.iota(t) - 1 <= part.power(t + 1) * (1 + 1e-12), (alpha, t)
            assert t >= 18  # every grid base reaches a deep horizon


def test_criterion_3_counterexample_reproduction():
    with criterion(3, "counterexample reproduction", 5.0):
        n = 1 << 20
        demo = counterexample_demo(n)
        assert len(demo.block_series) == 20
        assert demo.max_abs_block_mean_from_2 == 0.0
        assert demo.cesaro_band.width >= 0.25
        # brute-force oracle: exact integer cumulative sums
        signs = counterexample().values(1, n + 1).astype(np.int64)
        ratios = np.cumsum(signs) / np.arange(1, n + 1)
        oracle = float(np.max(ratios[(n // 2) - 1:]))
        assert 0.30 <= oracle <= 0.34
        assert abs(demo.limsup_estimate - oracle) <= 1e-15


def test_criterion_4_a_s_family():
    n = 1 << 22
    with criterion(4, "a_s family densities", 10.0):
        j_top = GeometricPartition(2.0).completed_blocks(n)
        bad = []
        for s in (0.0, 0.25, 0.5, 1.0):
            iset = a_s_set(s)
            for j in range(2, j_top + 1):
                bd = block_density(iset, 2.0, j)
                if bd != 0.5:
                    bad.append((s, j, bd))
            lo, hi = a_s_density_formulas(s)
            rep = density_band(iset, n, 0.5)
            assert abs(rep.lower - lo) <= 0.01, (s, rep.lower, lo)
            assert abs(rep.upper - hi) <= 0.01, (s, rep.upper, hi)
        # NOTE: provably fails at the single point (s=1, j=2): the first
        # run of A_1 is {2 + floor(1*2^0) + 1} = {4}, which lies in block 3,
        # so block 2 = [2, 4) is empty and its density is 0, not 1/2.  The
        # criterion is asserted as stated; see the decisions ledger.
        assert not bad, f"block densities != 1/2 at {bad}"


def test_criterion_5_theorem2_positive_case():
    with criterion(5, "theorem-2 positive case", 5.0):
        src = paper_example_set().source()
        series = block_means(src, 2.0, 20)
        for j in range(16, 21):
            assert series.value[j - 1] <= 0.001, (j, series.value[j - 1])
        means = cesaro_means(src, 1 << 20)
        assert means.last <= 0.001


def test_criterion_6_theorem1_consistency_sweep():
    cases = [
        (constant(0.0), 0.0),
        (constant(1.0), 1.0),
        (constant(0.3), 0.3),
        (constant(-1.0), -1.0),
        (multiples_of(2).source(), 0.5),
        (multiples_of(3).source(), 1 / 3),
        (alternating(), 0.5),
        (shifted(constant(5.0), 5.0), 0.0),
        (shifted(multiples_of(2).source(), 0.5), 0.0),
        (shifted(multiples_of(4).source(), -0.25), 0.5),
    ]
    assert len(cases) == 10
    with criterion(6, "theorem-1 consistency sweep", 60.0):
        for src, limit in cases:
            report = check_theorem1(src, DEFAULT_BASES, 1 << 20, tol=0.01)
            assert report.consistent, (src.label, report.notes)
            assert report.cesaro.converged_to(limit), (src.label, report.cesaro)


def test_criterion_7_nonnegative_coincidence():
    sources = [
        constant(0.0),
        constant(0.3),
        multiples_of(2).source(),
        a_s_set(0.25).source(),
        paper_example_set().source(),
        alternating(),
        from_runs([(5, 14)]).source(),
        shifted(counterexample(), -1.0),  # values {0, 2}
    ]
    with criterion(7, "nonnegative coincidence", None):
        for src in sources:
            a = cesaro_means(src, 1 << 16).a
            b = strong_cesaro_means(src, 0.0, 1 << 16).a
            assert np.array_equal(a, b), src.label


def test_criterion_8_cli_determinism_and_roundtrip(tmp_path, capsys):
    with criterion(8, "CLI determinism and round-trip", None):
        # byte-identical stdout for identical configurations
        args = ["means", "--gen", "random", "--seed", "42", "--bound", "1",
                "--n", "1000", "--format", "csv"]
        assert run(args) == 0
        first = capsys.readouterr().out
        assert run(args) == 0
        assert capsys.readouterr().out == first

        # byte-identical files
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for target in (a, b):
            assert run(["check-thm2", "--gen", "paper-example", "--alpha", "2",
                        "--n", "65536", "--out", str(target)]) == 0
        assert a.read_bytes() == b.read_bytes()
        json.loads(a.read_text())

        # export/import round trip is bit-identical in the means series
        seq = tmp_path / "seq.txt"
        assert run(["gen", "--gen", "random", "--seed", "42", "--bound", "1",
                    "--n", "1000", "--emit", str(seq)]) == 0
        capsys.readouterr()
        assert run(["means", "--gen", "file", "--path", str(seq),
                    "--n", "1000", "--format", "csv"]) == 0
        assert capsys.readouterr().out == first
