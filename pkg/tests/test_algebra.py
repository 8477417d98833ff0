import itertools
import json
from collections import Counter
from fractions import Fraction
from math import comb, factorial

import pytest

from coxshuffle.algebra import (
    FAMILY_IDS,
    AlgebraElement,
    character_decomposition,
    check_shuffle_algebra_axioms,
    closed_form_idempotents,
    express_in_shuffles,
    get_family,
    idempotents,
    shuffle,
    sigma_J,
    sigma_j,
    sigma_prime,
)
from coxshuffle.faces import FaceA, FaceB, FaceD, enumerate_faces, parse_face

# ------------------------------------------------- brute-force card oracles


def _last_occurrence(seq):
    """Distinct items ordered by their last occurrence, most recent first."""
    out = []
    for x in reversed(seq):
        if x not in out:
            out.append(x)
    return out


def side_oracle(family, n, a):
    """Move ``a`` cards (with an optional flip for B/D) to the top, one at a time."""
    counts = Counter()
    signs = (1,) if family == "A" else (1, -1)
    for seq in itertools.product([(c, s) for c in range(1, n + 1) for s in signs], repeat=a):
        top, last_sign = [], {}
        for c, s in reversed(seq):
            if c not in last_sign:
                last_sign[c] = s
                top.append(c)
        rest = [c for c in range(1, n + 1) if c not in last_sign]
        blocks = [[c * last_sign[c]] for c in top]
        if family == "A":
            face = FaceA.from_blocks(blocks + ([rest] if rest else []))
        elif family == "B":
            face = FaceB.from_blocks(blocks, rest, n)
        else:
            face = FaceD.from_blocks(blocks, rest, n)
        counts[face] += 1
    return counts


def two_sided_oracle(n, a):
    counts = Counter()
    for seq in itertools.product([(c, side) for c in range(1, n + 1) for side in "tb"], repeat=a):
        last = {}
        for c, side in seq:
            last[c] = side
        order = _last_occurrence([c for c, _ in seq])
        top = [c for c in order if last[c] == "t"]
        bottom = [c for c in order if last[c] == "b"][::-1]
        middle = [c for c in range(1, n + 1) if c not in last]
        blocks = [[c] for c in top] + ([middle] if middle else []) + [[c] for c in bottom]
        counts[FaceA.from_blocks(blocks)] += 1
    return counts


def riffle_oracle(n, a):
    """Inverse riffle: give every card a pile label and stack the piles."""
    counts = Counter()
    for labels in itertools.product(range(a), repeat=n):
        blocks = [[c + 1 for c in range(n) if labels[c] == p] for p in range(a)]
        counts[FaceA.from_blocks([b for b in blocks if b])] += 1
    return counts


def as_counter(x):
    return Counter({f: int(c) for f, c in x.terms.items()})


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("a", [0, 1, 2, 3, 4])
def test_side_shuffles_match_card_oracle(n, a):
    for fid, fam in (("sideA", "A"), ("sideB", "B"), ("sideD", "D")):
        if (fam != "A" and n > 3 and a > 3) or (fam == "D" and n < 3):
            continue
        assert as_counter(shuffle(fid, n, a)) == side_oracle(fam, n, a), fid


@pytest.mark.parametrize("n,a", [(2, 2), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_two_sided_matches_card_oracle(n, a):
    assert as_counter(shuffle("twoSidedA", n, a)) == two_sided_oracle(n, a)


@pytest.mark.parametrize("n,a", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (3, 5)])
def test_riffle_matches_inverse_riffle(n, a):
    assert as_counter(shuffle("riffleA", n, a)) == riffle_oracle(n, a)


# ------------------------------------------------------------------ examples


def test_sigma_one_squared():
    assert sigma_j("sideA", 4, 1) ** 2 == sigma_j("sideA", 4, 1) + sigma_j("sideA", 4, 2)
    assert sigma_j("sideB", 3, 1) ** 2 == 2 * sigma_j("sideB", 3, 1) + sigma_j("sideB", 3, 2)


def test_orbit_sizes():
    assert len(sigma_J("B", 2, ["t"])) == 4
    assert len(sigma_j("sideA", 4, 2)) == 12
    assert len(sigma_j("sideA", 4, 4)) == len(sigma_j("sideA", 4, 3)) == 24


def test_riffleD_sigma_counts_uv_twice():
    x = sigma_j("riffleD", 3, 2)
    o = x.orbit_coefficients()
    assert o[frozenset({"u", "v"})] == 2
    assert o[frozenset({"s1", "u"})] == 1
    assert frozenset({"s1", "s2"}) not in o
    # the odd part spans two ranks
    assert sigma_prime("riffleD", 3, 2).support_ranks() == {2, 3}


def test_riffleA_S2():
    x = shuffle("riffleA", 3, 2)
    assert x == 2 * AlgebraElement.one("A", 3) + sigma_j("riffleA", 3, 1)


def test_normalisations():
    for n in (2, 3, 4):
        for a in range(0, 4):
            assert shuffle("sideA", n, a).coefficient_sum() == n**a
            for fid in ("twoSidedA", "sideB", "sideD"):
                if fid == "sideD" and n < 3:
                    continue
                assert shuffle(fid, n, a).coefficient_sum() == (2 * n) ** a
        for a in range(1, 5):
            for fid in ("riffleA", "riffleB", "riffleD"):
                if fid == "riffleD" and n < 3:
                    continue
                assert shuffle(fid, n, a).coefficient_sum() == a**n
        assert sigma_j("sideA", n, n).coefficient_sum() == factorial(n)
        assert shuffle("sideB", n, 1).coefficient_sum() == 2 * n


# ------------------------------------------------------------- semigroup laws


@pytest.mark.parametrize("fid", ["sideA", "twoSidedA", "sideB", "sideD"])
def test_additive_law(fid):
    for n in (3, 4):
        for a, b in [(0, 2), (1, 1), (1, 2), (2, 2), (1, 3)]:
            assert shuffle(fid, n, a) * shuffle(fid, n, b) == shuffle(fid, n, a + b)


@pytest.mark.parametrize("fid", ["riffleA", "riffleB", "riffleD"])
def test_multiplicative_law(fid):
    for a, b in [(2, 2), (2, 3), (3, 3), (1, 4)]:
        assert shuffle(fid, 3, a) * shuffle(fid, 3, b) == shuffle(fid, 3, a * b)


def test_face_route_agrees_with_orbit_route():
    x, y = shuffle("sideB", 3, 2), sigma_prime("riffleD", 3, 1)
    assert x.multiply(x, route="faces") == x.multiply(x, route="orbits")
    assert y.multiply(y, route="faces") == y * y


def test_sideA_product_formula():
    for n in range(3, 6):
        for i in range(0, n):
            for j in range(0, n - i):
                expected = sum(
                    (factorial(k) * comb(i, k) * comb(j, k) * sigma_j("sideA", n, i + j - k) for k in range(min(i, j) + 1)),
                    AlgebraElement.zero("A", n),
                )
                assert sigma_j("sideA", n, i) * sigma_j("sideA", n, j) == expected


def test_commutativity():
    for fid in FAMILY_IDS:
        n = 3
        xs = [sigma_j(fid, n, j) for j in (1, 2)]
        if fid in ("riffleB", "riffleD"):
            xs.append(sigma_prime(fid, n, 1))
        for x, y in itertools.combinations(xs, 2):
            assert x * y == y * x


# ---------------------------------------------------------------- idempotents


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_idempotent_system(fid):
    for n in (3, 4):
        es = idempotents(fid, n)
        c = get_family(fid).complex
        assert sum(es, AlgebraElement.zero(c, n)) == AlgebraElement.one(c, n)
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                assert e * f == (e if i == j else AlgebraElement.zero(c, n))
        fam = get_family(fid)
        for a in fam.index_set(fam.min_index + 3):
            assert character_decomposition(fid, n, a) == shuffle(fid, n, a)


def test_degenerate_idempotents():
    for n in (3, 4):
        for fid in ("sideA", "twoSidedA", "sideD"):
            assert closed_form_idempotents(fid, n)[f"e{n - 1}"].is_zero()
        raw = closed_form_idempotents("riffleB", n)
        assert raw[f"e'{n}"] == raw[f"e{n}"]
        raw = closed_form_idempotents("riffleD", n)
        assert raw[f"e'{n - 1}"] == raw[f"e{n - 1}"]


def test_sideA_n3_e2_vanishes():
    assert closed_form_idempotents("sideA", 3)["e2"].is_zero()


# --------------------------------------------------------------------- axioms


@pytest.mark.parametrize("fid", ["sideA", "twoSidedA", "riffleA", "sideB", "sideD", "riffleB-even", "riffleB-odd", "riffleD-even"])
def test_axioms_hold(fid):
    rep = check_shuffle_algebra_axioms(fid, 3)
    assert rep.all_pass, rep.notes


def test_axiom_failures_are_detected():
    # the odd riffle basis of type D mixes two ranks in each element
    rep = check_shuffle_algebra_axioms("riffleD-odd", 3)
    assert not rep.results["graded_basis"]
    assert rep.results["single_generator"] and rep.results["spanned_by_shuffles"]
    # both parities together exceed the rank bound
    rep = check_shuffle_algebra_axioms("riffleB", 3)
    assert rep.dimension == 6 and not rep.results["dimension"]
    assert check_shuffle_algebra_axioms("riffleD", 3).dimension == 5


def test_express_in_shuffles():
    coeffs = express_in_shuffles("sideA", 3, sigma_j("sideA", 3, 1) ** 2, [0, 1, 2])
    assert coeffs is not None
    total = sum((c * shuffle("sideA", 3, a) for a, c in coeffs.items()), AlgebraElement.zero("A", 3))
    assert total == sigma_j("sideA", 3, 1) ** 2


# ------------------------------------------------------------------ plumbing


def test_element_serialisation_round_trip():
    x = shuffle("sideB", 2, 2) - Fraction(1, 3) * sigma_j("sideB", 2, 1)
    assert AlgebraElement.from_json(x.to_json()) == x
    assert AlgebraElement.from_dict(json.loads(json.dumps(x.to_dict()))) == x


def test_invalid_inputs():
    with pytest.raises(ValueError):
        shuffle("riffleA", 3, 0)
    with pytest.raises(ValueError):
        sigma_j("riffleA", 3, 3)
    with pytest.raises(ValueError):
        get_family("nope")
    with pytest.raises(ValueError):
        sigma_prime("sideA", 3, 1)


def test_face_elements():
    f = parse_face("({2}|{1,3})")
    x = AlgebraElement.face(f, 2)
    assert x.coefficient(f) == 2 and not x.is_invariant()
    assert len(enumerate_faces("A", 3)) == len(AlgebraElement.one("A", 3).terms) + 12
