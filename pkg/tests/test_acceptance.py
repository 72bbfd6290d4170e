"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Every test records a single PASS/FAIL line that is printed in the terminal
summary (and to stdout, visible with ``pytest -s``).
"""
import io
import random
import time
from contextlib import contextmanager

import pytest

import oracles
from conftest import ACCEPTANCE_LINES, CUSP, FAMILY, random_weyl
from test_cli import COMMANDS
from weylkit.cli import main
from weylkit.curve import MonomialCurve, TOperator, correspondence_check, preserves_ring, project_class
from weylkit.idealizer import (
    action_witness,
    as_curve,
    idealizer_dim,
    idealizer_filtered_basis,
    idealizer_member,
    quotient_dim,
)
from weylkit.parse import parse_poly, parse_toperator
from weylkit.poly import translate
from weylkit.torsion import (
    bound_check,
    filtration_action_check,
    growth_table,
    independence_check,
    leading_term_check,
    point_module_dims,
)
from weylkit.weyl import WeylOp, act, bernstein_degree, euler_operator

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time the block, collect failed parts, record one line, then assert."""
    failures: list[str] = []
    start = time.perf_counter()
    error = None
    try:
        yield failures
    except Exception as exc:  # recorded, then re-raised below
        error = exc
        failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        failures.append(f"runtime {elapsed:.1f}s >= {limit:.0f}s")
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title} ({elapsed:.2f}s)"
    if failures:
        line += " :: " + "; ".join(failures)
    ACCEPTANCE_LINES[number] = line
    print(line)
    if error is not None:
        raise error
    assert not failures, line


def test_criterion_1_weyl_axioms():
    rng = random.Random(1)
    x, y, dx, dy = (WeylOp.generator(g) for g in ("x", "y", "dx", "dy"))
    with criterion(1, "Weyl axioms", 5) as bad:
        one = WeylOp.scalar(1)
        if dx * x - x * dx != one or dy * y - y * dy != one:
            bad.append("canonical commutators")
        for a, b in [(x, y), (dx, dy), (x, dy), (y, dx)]:
            if not (a * b - b * a).is_zero():
                bad.append(f"[{a}, {b}] != 0")
        for _ in range(100):
            a, b, c = (random_weyl(rng, 4) for _ in range(3))
            if (a * b) * c != a * (b * c):
                bad.append(f"associativity fails for {a}, {b}, {c}")
                break
        for _ in range(100):
            a, b = random_weyl(rng, 4), random_weyl(rng, 4)
            p = parse_poly("x^3*y - 2*x*y^2 + y^4 + 5")
            if act(a * b, p) != act(a, act(b, p)):
                bad.append(f"module law fails for {a}, {b}")
                break
        pairs = 0
        while pairs < 100:
            a, b = random_weyl(rng, 4), random_weyl(rng, 4)
            if a.is_zero() or b.is_zero():
                continue
            pairs += 1
            if bernstein_degree(a * b) != bernstein_degree(a) + bernstein_degree(b):
                bad.append(f"degree additivity fails for {a}, {b}")
                break


def test_criterion_2_idealizer_dual_oracle():
    rng = random.Random(2)
    members = idealizer_filtered_basis(CUSP, 3).elements
    with criterion(2, "idealizer membership: conjugation vs action", 30) as bad:
        seen = {True: 0, False: 0}
        for k in range(200):
            if k % 2:
                theta = random_weyl(rng, 4)
            else:
                theta = sum((rng.randint(-3, 3) * m for m in rng.sample(members, 3)), WeylOp.zero())
            member = idealizer_member(theta, CUSP)
            witness = action_witness(theta, CUSP)
            seen[member] += 1
            if member != (witness is None):
                bad.append(f"disagreement on {theta}")
                break
            if witness is not None:
                c, d = witness
                order = max((theta * WeylOp.poly(parse_poly(CUSP))).order, 0)
                if c + d > order:
                    bad.append(f"witness {witness} beyond order {order}")
        if not (seen[True] and seen[False]):
            bad.append(f"sample not mixed: {seen}")


def test_criterion_3_idealizer_dims():
    with criterion(3, "idealizer filtered dimensions for y^2 - x^3", 10) as bad:
        g1, g2, f2 = idealizer_dim(CUSP, 1), idealizer_dim(CUSP, 2), quotient_dim(CUSP, 2)
        oracle = [oracles.idealizer_dim(CUSP, n) for n in (1, 2)]
        if (g1, g2, f2) != (3, 7, 7):
            bad.append(f"(G1, G2, F2) = {(g1, g2, f2)}, expected (3, 7, 7)")
        if [g1, g2] != oracle:
            bad.append(f"oracle disagrees: {oracle}")
        if not idealizer_member(euler_operator(2, 3), CUSP):
            bad.append("Euler operator rejected")
        for g in ("dx", "dy"):
            if idealizer_member(WeylOp.generator(g), CUSP):
                bad.append(f"{g} accepted")


def test_criterion_4_torsion_bound():
    """The fixture 1, 3, 6, 9, 12 for y^2 - x^3 is asserted literally.

    Exact rank (library and an independent sympy oracle) gives 2n + 1 instead;
    that fixture equals the bound itself and contradicts the off-curve
    dim M(0) = 0 of criterion 8, so this part fails by design.
    """
    with criterion(4, "torsion bound, independence, leading terms, linear growth", 120) as bad:
        for f in FAMILY:
            N = as_curve(f).N
            for n in range(13):
                if not bound_check(f, n, raise_on_failure=False).ok:
                    bad.append(f"bound {f} n={n}")
                if n >= N:
                    if not independence_check(f, n, raise_on_failure=False).ok:
                        bad.append(f"independence {f} n={n}")
                    if not leading_term_check(f, n, raise_on_failure=False).ok:
                        bad.append(f"leading term {f} n={n}")
            diffs = growth_table(f, 12).differences()
            if len(set(diffs[N:])) != 1:
                bad.append(f"first differences of {f} not constant from N: {diffs}")
        observed = growth_table(CUSP, 12).dims()
        oracle = oracles.torsion_dims(CUSP, 12)
        if observed != oracle:
            bad.append(f"library {observed} != oracle {oracle}")
        pinned = [1, 3, 6, 9, 12]
        if observed[:5] != pinned:
            bad.append(f"pinned dims {pinned} for {CUSP}, observed {observed[:5]} (oracle agrees with observed)")


def test_criterion_5_filtration_action():
    with criterion(5, "M(n) F_m inside M(n+m) for y^2 - x^3, n, m <= 5", 60) as bad:
        for n in range(6):
            for m in range(6):
                rep = filtration_action_check(CUSP, n, m, raise_on_failure=False)
                if not rep.ok:
                    bad.append(f"n={n} m={m}: {rep.details.get('counterexample')}")


def test_criterion_6_correspondence():
    C = MonomialCurve(2, 3)
    rng = random.Random(6)
    with criterion(6, "idealizer quotient vs operators preserving k[t^2, t^3]", 120) as bad:
        for n in range(7):
            rep = correspondence_check(C, n)
            if not rep.ok:
                bad.append(f"n={n}: {rep.counterexample}")
        basis = idealizer_filtered_basis(C.f, 3).elements
        for _ in range(50):
            a, b = rng.choice(basis), rng.choice(basis)
            if project_class(a * b, C) != project_class(a, C) * project_class(b, C):
                bad.append(f"not multiplicative on {a}, {b}")
                break
        f = WeylOp.poly(C.f)
        for _ in range(50):
            theta = random_weyl(rng, 3)
            if not project_class(f * theta, C).is_zero():
                bad.append(f"f*({theta}) not killed")
                break


def test_criterion_7_normalization_fixtures():
    S = MonomialCurve(2, 3).semigroup
    with criterion(7, "semigroup and preservation fixtures for (2, 3)", 5) as bad:
        if (S.frobenius, S.conductor) != (1, 2):
            bad.append(f"frobenius/conductor {(S.frobenius, S.conductor)}")
        if not preserves_ring(TOperator.euler(), S):
            bad.append("t*dt rejected")
        if not preserves_ring(parse_toperator("dt^2 - 2*t^-1*dt"), S):
            bad.append("dt^2 - 2*t^-1*dt rejected")
        if preserves_ring(TOperator.dt(), S):
            bad.append("dt accepted")


def test_criterion_8_translation():
    points = {"smooth (1,1)": (1, 1), "singular (0,0)": (0, 0), "off-curve (1,2)": (1, 2)}
    with criterion(8, "point modules match translated growth tables", 30) as bad:
        for label, (g, d) in points.items():
            direct = point_module_dims(CUSP, g, d, 6).dims()
            shifted = growth_table(translate(parse_poly(CUSP), g, d), 6).dims()
            if direct != shifted:
                bad.append(f"{label}: {direct} != {shifted}")
        if point_module_dims(CUSP, 1, 2, 0).dims()[0] != 0:
            bad.append("off-curve dim M(0) != 0")


def _run(argv):
    out = io.StringIO()
    return main(argv, stdout=out), out.getvalue()


def test_criterion_9_cli_determinism(corrupt_rows):
    from weylkit.torsion import set_row_hook

    with criterion(9, "CLI determinism and violation exit codes", 30) as bad:
        set_row_hook(None)
        for argv in COMMANDS:
            for fmt in ("json", "csv", "text"):
                first, second = _run(argv + ["--format", fmt]), _run(argv + ["--format", fmt])
                if first != second:
                    bad.append(f"nondeterministic: {' '.join(argv)} {fmt}")
                if first[0] != 0:
                    bad.append(f"exit {first[0]}: {' '.join(argv)} {fmt}")
        set_row_hook(corrupt_rows)
        code, _ = _run(["torsion", "check", "--f", CUSP, "--max-n", "4", "--format", "json"])
        if code != 1:
            bad.append(f"corrupted row gave exit {code}, expected 1")
