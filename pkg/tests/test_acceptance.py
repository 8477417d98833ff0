"""End-to-end acceptance checks, one test per criterion.

Every test records a single ``criterion N: PASS|FAIL`` line; the lines are
printed together at the end of the pytest run (see ``conftest.py``).
"""

import itertools
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest
import sympy

from coxshuffle import buildings as bld
from coxshuffle.algebra import (
    AlgebraElement,
    closed_form_idempotents,
    get_family,
    idempotents,
    shuffle,
    sigma_j,
    sigma_prime,
)
from coxshuffle.faces import SignVector, chambers, enumerate_faces, identity, is_chamber, product, sign_vector_product
from coxshuffle.maps import B_TO_A, B_TO_D, D_TO_A, push_element, verify_homomorphism
from coxshuffle.numbers import signed_stirling, signed_stirling_explicit, stirling2, stirling2_explicit, q_stirling
from coxshuffle.spectral import verify_minimal_polynomial
from coxshuffle.walks import WalkConfig, empirical_transition_matrix, exact_transition_matrix, within_binomial_band

from oracles import point_product

RESULTS: dict[str, str] = {}


@contextmanager
def criterion(number, title, budget):
    """Time a criterion and record its verdict line."""
    start = time.perf_counter()
    state = {"ok": False, "note": ""}
    try:
        yield state
        state["ok"] = state.get("ok", True)
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed <= budget
        verdict = "PASS" if state["ok"] and within else "FAIL"
        note = state["note"] + ("" if within else f"; over the {budget:.0f}s budget")
        line = f"criterion {number:>2}: {verdict}  {title} ({elapsed:.1f}s){'  ' + note if note else ''}"
        RESULTS[str(number)] = line
        print(line)
    assert within, line


def finish(state, ok, note=""):
    state["ok"], state["note"] = ok, note
    assert ok, note


# ------------------------------------------------------------------ 1


def test_criterion_01_semigroup():
    with criterion(1, "semigroup laws and sign-vector oracle", 60) as st:
        bad = []
        for family, ns in (("A", (2, 3, 4)), ("B", (2, 3)), ("D", (3,))):
            for n in ns:
                faces = enumerate_faces(family, n)
                one = identity(family, n)
                table = {(x, y): product(x, y) for x in faces for y in faces}
                if any(table[one, x] != x or table[x, one] != x for x in faces):
                    bad.append(f"identity {family}{n}")
                for x, y, z in itertools.product(faces, repeat=3):
                    if table[table[x, y], z] != table[x, table[y, z]]:
                        bad.append(f"associativity {family}{n}")
                        break
                chs = set(chambers(family, n))
                if any(table[x, c] not in chs or table[c, x] != c for x in faces for c in chs):
                    bad.append(f"chamber ideal {family}{n}")
        for family in ("B", "D"):
            faces = enumerate_faces(family, 3)
            sv = {f: SignVector.of(f) for f in faces}
            for x in faces:
                for y in faces:
                    p = sv[product(x, y)]
                    if p != sign_vector_product(sv[x], sv[y]) or p.signs != point_product(family, 3, sv[x].signs, sv[y].signs):
                        bad.append(f"oracle {family}3")
                        break
        finish(st, not bad, ", ".join(sorted(set(bad))))


# ------------------------------------------------------------------ 2


def test_criterion_02_additive_laws():
    with criterion(2, "S_a S_b = S_(a+b), a+b <= 6, n <= 5", 120) as st:
        bad = []
        for fid in ("sideA", "twoSidedA", "sideB", "sideD"):
            for n in range(3 if fid == "sideD" else 2, 6):
                s = [shuffle(fid, n, a) for a in range(7)]
                for a in range(7):
                    for b in range(7 - a):
                        if s[a] * s[b] != s[a + b]:
                            bad.append(f"{fid} n={n} a={a} b={b}")
        finish(st, not bad, ", ".join(bad))


# ------------------------------------------------------------------ 3


def test_criterion_03_multiplicative_laws():
    with criterion(3, "S_a S_b = S_(ab) for the riffle shuffles", 300) as st:
        bad = []
        cases = {"riffleA": range(2, 6), "riffleB": range(2, 5), "riffleD": range(3, 5)}
        pairs = [(a, b) for a in range(1, 5) for b in range(1, 5) if a * b <= 12]
        assert (2, 3) in pairs
        for fid, ns in cases.items():
            for n in ns:
                s = {a: shuffle(fid, n, a) for a in range(1, 13)}
                for a, b in pairs:
                    if s[a] * s[b] != s[a * b]:
                        bad.append(f"{fid} n={n} {a}x{b}")
        finish(st, not bad, ", ".join(bad))


# ------------------------------------------------------------------ 4


def test_criterion_04_spectra():
    with criterion(4, "minimal polynomials and multiplicities, n <= 4", 300) as st:
        bad = []
        grid = {
            "sideA": (2, 3, 4),
            "twoSidedA": (2, 3, 4),
            "sideB": (2, 3, 4),
            "sideD": (3, 4),
            "riffleA": (2, 3, 4),
            "riffleB": (2, 3, 4),
            "riffleD": (3, 4),
        }
        for fid, ns in grid.items():
            fam = get_family(fid)
            for n in ns:
                for a in fam.index_set(fam.min_index + 3):
                    if fam.arity == "additive" and a == 0:
                        continue
                    rep = verify_minimal_polynomial(fid, n, a)
                    if not (rep.annihilation and rep.certified and sum(rep.multiplicities) == rep.chamber_count):
                        bad.append(f"{fid} n={n} a={a}")
        finish(st, not bad, ", ".join(bad))


# ------------------------------------------------------------------ 5


def test_criterion_05_idempotents():
    with criterion(5, "orthogonal idempotents and degeneracies, n <= 5", 600) as st:
        bad = []
        for fid in ("sideA", "twoSidedA", "riffleA", "sideB", "riffleB", "sideD", "riffleD"):
            c = get_family(fid).complex
            for n in range(3 if c == "D" else 2, 6):
                es = idempotents(fid, n)
                zero, one = AlgebraElement.zero(c, n), AlgebraElement.one(c, n)
                if sum(es, zero) != one:
                    bad.append(f"{fid} n={n} sum")
                for i, e in enumerate(es):
                    for j, f in enumerate(es[i:], i):
                        if e * f != (e if i == j else zero):
                            bad.append(f"{fid} n={n} e{i}e{j}")
                raw = closed_form_idempotents(fid, n)
                if fid in ("sideA", "twoSidedA", "sideD") and not raw[f"e{n - 1}"].is_zero():
                    bad.append(f"{fid} n={n} e_(n-1)")
                if fid == "riffleB" and raw[f"e'{n}"] != raw[f"e{n}"]:
                    bad.append(f"riffleB n={n} e'_n")
        finish(st, not bad, ", ".join(bad))


# ------------------------------------------------------------------ 6


def test_criterion_06_maps_homomorphism_and_side_chain():
    start = time.perf_counter()
    bad = []
    for m in (B_TO_D, D_TO_A, B_TO_A):
        if not verify_homomorphism(m, 3):
            bad.append(f"{m.name} homomorphism")
    for n in (3, 4):
        for j in range(n + 1):
            d = push_element(B_TO_D, sigma_j("sideB", n, j))
            if d != sigma_j("sideD", n, j) or push_element(D_TO_A, d) != sigma_j("twoSidedA", n, j):
                bad.append(f"sigma_{j} n={n}")
        for a in range(6):
            d = push_element(B_TO_D, shuffle("sideB", n, a))
            if d != shuffle("sideD", n, a) or push_element(D_TO_A, d) != shuffle("twoSidedA", n, a):
                bad.append(f"S_{a} n={n}")
    RESULTS["6a"] = f"criterion 6 part: {'PASS' if not bad else 'FAIL'}  homomorphisms at n=3, side chain sigma_j and S_a ({time.perf_counter() - start:.1f}s)"
    print(RESULTS["6a"])
    assert not bad, bad


def riffle_isomorphism_parts(n):
    """Basis-to-basis images under B->D, and whether the images stay independent."""
    basis_b = [sigma_j("riffleB", n, 0)]
    basis_d = [sigma_j("riffleD", n, 0)]
    for j in range(1, n):
        basis_b += [sigma_j("riffleB", n, j), sigma_prime("riffleB", n, j)]
        basis_d += [sigma_j("riffleD", n, j), sigma_prime("riffleD", n, j)]
    basis_b.append(sigma_j("riffleB", n, n))
    basis_d.append(sigma_j("riffleD", n, n))
    images = [push_element(B_TO_D, x) for x in basis_b]
    to_basis = all(i == d for i, d in zip(images, basis_d))
    types = sorted({J for x in images for J in x.orbit_coefficients()}, key=sorted)
    rows = [[x.orbit_coefficients().get(J, 0) for J in types] for x in images]
    rank = sympy.Matrix(rows).rank()
    return to_basis, rank, len(basis_b)


@pytest.mark.xfail(strict=True, reason="the D double algebra has dimension 2n-1, one less than the B double algebra")
def test_criterion_06_riffle_isomorphism():
    start = time.perf_counter()
    notes, ok = [], True
    for n in (3, 4):
        to_basis, rank, size = riffle_isomorphism_parts(n)
        notes.append(f"n={n}: basis-to-basis {to_basis}, image rank {rank} of {size}")
        ok = ok and to_basis and rank == size
    elapsed = time.perf_counter() - start
    RESULTS["6"] = (
        f"criterion  6: {'PASS' if ok else 'FAIL'}  riffleB->riffleD basis-to-basis isomorphism ({elapsed:.1f}s)  "
        + "; ".join(notes)
    )
    print(RESULTS["6"])
    assert ok, RESULTS["6"]


# ------------------------------------------------------------------ 7


def test_criterion_07_buildings():
    with criterion(7, "q-buildings: counts, relations, apartments, q-Stirling", 900) as st:
        bad = []
        for n in (2, 3, 4):
            for q in (2, 3):
                b = bld.get_building("glnA", n, q)
                for j in range(1, n):
                    count = len(b.faces_of_type(b.labels()[:j]))
                    want = 1
                    for i in range(j):
                        want *= sum(q**k for k in range(n - i))
                    if count != want:
                        bad.append(f"glnA count n={n} q={q} j={j}")
                    if not bld.verify_q_relation(b, j):
                        bad.append(f"glnA relation n={n} q={q} j={j}")
        for kind, n, q in [
            ("symplecticB", 2, 2),
            ("symplecticB", 2, 3),
            ("symplecticB", 3, 2),
            ("orthogonalB", 2, 2),
            ("orthogonalB", 2, 3),
            ("orthogonalB", 3, 2),
            ("oriflammeD", 3, 2),
        ]:
            b = bld.get_building(kind, n, q)
            for j in range(1, n + 1):
                if not bld.verify_q_relation(b, j):
                    bad.append(f"{kind} relation n={n} q={q} j={j}")
        ori = bld.get_building("oriflammeD", 3, 2)
        if bld.q_sigma(ori, 3) != bld.q_sigma(ori, 2).scale(2):
            bad.append("oriflamme sigma_n = 2 sigma_(n-1)")
        for kind in bld.KINDS:
            ok, count = bld.verify_apartment_independence(bld.get_building(kind, 2, 2))
            if not ok or count == 0:
                bad.append(f"apartments {kind}")
        for kind, n, q in [("glnA", 3, 2), ("glnA", 3, 3), ("glnA", 4, 2), ("symplecticB", 2, 2), ("orthogonalB", 2, 2)]:
            if not bld.verify_q_stirling(bld.get_building(kind, n, q), amax=4):
                bad.append(f"q-Stirling {kind} n={n} q={q}")
        finish(st, not bad, ", ".join(bad))


# ------------------------------------------------------------------ 8


def test_criterion_08_degeneration():
    with criterion(8, "q -> 1 degeneration and explicit Stirling formulas", 60) as st:
        bad = [(a, j) for a in range(9) for j in range(9) if q_stirling("qA", a, j, 1) != stirling2(a, j)]
        for a in range(11):
            for j in range(11):
                if stirling2(a, j) != stirling2_explicit(a, j) or signed_stirling(a, j) != signed_stirling_explicit(a, j):
                    bad.append((a, j))
        finish(st, not bad, ", ".join(map(str, bad[:5])))


# ------------------------------------------------------------------ 9

SIM_CASES = [("sideA", 3, 2), ("sideB", 3, 1), ("sideD", 3, 1), ("riffleA", 3, 2), ("riffleB", 3, 2), ("riffleB", 3, 3)]
SIM_TRIALS = 100_000
SAMPLERS = ("element", "cards")


def sim_seed(case: int, sampler: str) -> int:
    """A distinct seed per case and sampler.  Streams are keyed by seed,
    column and block only, so reusing one seed everywhere would drive every
    case with the same random numbers and correlate their deviations."""
    return 2 * case + SAMPLERS.index(sampler)


def test_criterion_09_simulation():
    with criterion(9, "empirical one-step matrices within 4 sd at 1e5 trials", 600) as st:
        bad, worst_all = [], 0.0
        for case, (family, n, a) in enumerate(SIM_CASES):
            exact = exact_transition_matrix(family, n, a)
            emp = {}
            for sampler in SAMPLERS:
                cfg = WalkConfig(family, n, a, trials=SIM_TRIALS, seed=sim_seed(case, sampler), sampler=sampler)
                emp[sampler] = empirical_transition_matrix(cfg)
                ok, worst = within_binomial_band(emp[sampler], exact, SIM_TRIALS, k=4)
                worst_all = max(worst_all, worst)
                if not ok:
                    bad.append(f"{family} n={n} a={a} {sampler} z={worst:.2f}")
            # the two samplers against each other: difference of two independent binomials
            sd = np.sqrt(2 * exact * (1 - exact) / SIM_TRIALS)
            diff = np.abs(emp["element"] - emp["cards"])
            z = np.where(sd > 0, diff / np.where(sd > 0, sd, 1), np.where(diff > 0, np.inf, 0))
            if z.max() > 4:
                bad.append(f"{family} n={n} a={a} samplers z={z.max():.2f}")
            worst_all = max(worst_all, float(z.max()))
        finish(st, not bad, ", ".join(bad) or f"largest |z| = {worst_all:.2f}")


# ------------------------------------------------------------------ 10

CLI_RUNS = [
    ["simulate", "--family", "riffleB", "--n", "3", "--a", "3", "--steps", "6", "--trials", "20000", "--seed", "17"],
    ["simulate", "--family", "sideD", "--n", "3", "--steps", "6", "--trials", "20000", "--seed", "5", "--sampler", "cards"],
    ["spectrum", "--family", "sideB", "--n", "3", "--a", "2"],
    ["verify", "--family", "riffleD", "--n", "3", "--checks", "semigroup,idempotents,minpoly"],
    ["qshuffle", "--building", "symplecticB", "--n", "2", "--q", "2"],
    ["numbers", "--kind", "qSymplectic", "--amax", "5", "--q", "3", "--n", "2", "--format", "csv"],
]


def test_criterion_10_reproducibility(tmp_path):
    with criterion(10, "identical CLI invocations are byte-identical", 300) as st:
        bad = []
        for i, argv in enumerate(CLI_RUNS + [CLI_RUNS[0] + ["--figure", "FIG"]]):
            outs = []
            for rep in range(2):
                fig = tmp_path / f"fig{i}_{rep}.png"
                args = [str(fig) if x == "FIG" else x for x in argv]
                proc = subprocess.run([sys.executable, "-m", "coxshuffle", *args], capture_output=True, check=False)
                outs.append((proc.returncode, proc.stdout, fig.read_bytes() if fig.exists() else b""))
            if outs[0] != outs[1] or outs[0][0] != 0 or not outs[0][1]:
                bad.append(" ".join(argv[:3]))
        finish(st, not bad, ", ".join(bad))
