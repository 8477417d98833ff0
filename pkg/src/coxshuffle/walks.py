"""Monte-Carlo chamber walks for the shuffle elements.

Two independent samplers move a batch of decks one step:

``element``
    draw a face with probability coefficient / coefficient sum and act on
    the chamber through the precomputed action table;
``cards``
    the card-level description of the shuffle (marking cards, labelling
    piles, flipping signs) carried out directly on signed decks.

Random streams: trials are cut into consecutive blocks of ``BLOCK`` trials
and block ``k`` draws from ``Philox`` seeded by ``SeedSequence(seed,
spawn_key=(k,))`` (one more key component distinguishes the columns of an
empirical transition matrix).  Results depend only on the seed and the
trial index, never on how work is scheduled.  The key does not include the
family, ``n`` or ``a``: two walks run with the same seed share their uniforms,
so give independent experiments distinct seeds.
"""

from __future__ import annotations

import csv
import functools
import io
from dataclasses import dataclass, field

import numpy as np

from coxshuffle.algebra import AlgebraElement, get_family, shuffle
from coxshuffle.faces import Face, FaceA, FaceB, FaceD, chambers
from coxshuffle.spectral import action_table, transition_operator

BLOCK = 8192
SAMPLERS = ("element", "cards")


class WalkConfigError(ValueError):
    pass


@dataclass(frozen=True)
class WalkConfig:
    family: str
    n: int
    a: int
    steps: int = 10
    trials: int = 10_000
    seed: int = 0
    start: int = 0
    sampler: str = "element"

    def __post_init__(self):
        fam = get_family(self.family)
        if not fam.valid_index(self.a):
            raise WalkConfigError(f"invalid shuffle index a={self.a} for {self.family}")
        if self.steps < 0 or self.trials < 1:
            raise WalkConfigError("steps must be >= 0 and trials >= 1")
        if not 0 <= self.seed < 2**64:
            raise WalkConfigError("seed must be a 64-bit unsigned integer")
        if self.sampler not in SAMPLERS:
            raise WalkConfigError(f"sampler must be one of {SAMPLERS}")
        if not 0 <= self.start < len(chambers(fam.complex, self.n)):
            raise WalkConfigError("start chamber index out of range")


@dataclass
class WalkTrace:
    config: WalkConfig
    path: list[int]  # chamber of trial 0 after each step (index 0 = start)
    tv: list[float]
    distribution: np.ndarray  # final empirical distribution over chambers
    counts: np.ndarray = field(repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "chamber", "tv_distance"])
        for s, (c, d) in enumerate(zip(self.path, self.tv)):
            w.writerow([s, c, f"{d:.10f}"])
        return buf.getvalue()


def generators(seed: int, trials: int, *key: int) -> list[tuple[slice, np.random.Generator]]:
    """One generator per block of trials, per the stream-splitting rule."""
    out = []
    for k, lo in enumerate(range(0, trials, BLOCK)):
        ss = np.random.SeedSequence(seed, spawn_key=(*key, k))
        out.append((slice(lo, min(lo + BLOCK, trials)), np.random.Generator(np.random.Philox(ss))))
    return out


# ---------------------------------------------------------- element sampler


@dataclass(frozen=True)
class FaceDistribution:
    faces: np.ndarray  # rows of the action table
    probabilities: np.ndarray
    normalization: float


def face_distribution(x: AlgebraElement) -> FaceDistribution:
    terms = x.terms
    if not terms:
        raise WalkConfigError("the zero element does not define a walk")
    if any(c <= 0 for c in terms.values()):
        raise WalkConfigError("element has nonpositive coefficients")
    at = action_table(x.family, x.n)
    total = x.coefficient_sum()
    idx = np.array([at.face_index[f] for f in terms], dtype=np.int64)
    p = np.array([float(c / total) for c in terms.values()])
    return FaceDistribution(idx, p / p.sum(), float(total))


@functools.lru_cache(maxsize=64)
def _shuffle_distribution(family: str, n: int, a: int) -> FaceDistribution:
    return face_distribution(shuffle(family, n, a))


def sample_step(state: int, element: AlgebraElement, rng: np.random.Generator) -> int:
    """One step from chamber index ``state``: draw a face, return ``face * chamber``."""
    dist = face_distribution(element)
    at = action_table(element.family, element.n)
    f = dist.faces[rng.choice(len(dist.faces), p=dist.probabilities)]
    return int(at.table[f, state])


def _element_step(family: str, n: int, a: int, states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    fam = get_family(family)
    dist = _shuffle_distribution(family, n, a)
    at = action_table(fam.complex, n)
    picks = dist.faces[rng.choice(len(dist.faces), size=len(states), p=dist.probabilities)]
    return at.table[picks, states]


# ------------------------------------------------------------ card sampler
#
# A deck is an int array (trials, n), top card first; type B and D cards are
# signed.  A type D deck is held with its bottom card positive.


def chamber_deck(c: Face) -> tuple[int, ...]:
    if isinstance(c, FaceD):
        return tuple(b[0] for b in c.blocks) + (abs(c.central[0]),)
    return tuple(b[0] for b in c.blocks)


def deck_chamber(deck, n: int, complex_: str) -> Face:
    blocks = tuple((int(x),) for x in deck)
    if complex_ == "A":
        return FaceA(blocks, n)
    if complex_ == "B":
        return FaceB(blocks, (), n)
    return FaceD.from_blocks(blocks, (), n)


@dataclass(frozen=True)
class DeckCodec:
    decks: np.ndarray  # chamber index -> deck
    codes: np.ndarray  # sorted deck codes
    order: np.ndarray  # chamber index for each sorted code
    radix: int
    offset: int

    def encode(self, decks: np.ndarray) -> np.ndarray:
        w = self.radix ** np.arange(decks.shape[1] - 1, -1, -1, dtype=np.int64)
        return ((decks + self.offset) * w).sum(axis=1)

    def lookup(self, decks: np.ndarray) -> np.ndarray:
        codes = self.encode(decks)
        pos = np.searchsorted(self.codes, codes)
        if np.any(pos >= len(self.codes)) or np.any(self.codes[np.minimum(pos, len(self.codes) - 1)] != codes):
            raise AssertionError("card sampler produced an invalid deck")
        return self.order[pos]


@functools.lru_cache(maxsize=None)
def deck_codec(complex_: str, n: int) -> DeckCodec:
    chs = chambers(complex_, n)
    decks = np.array([chamber_deck(c) for c in chs], dtype=np.int64)
    radix, offset = 2 * n + 1, n
    w = radix ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = ((decks + offset) * w).sum(axis=1)
    order = np.argsort(codes)
    return DeckCodec(decks, codes[order], order, radix, offset)


def _rearrange(decks: np.ndarray, keys: np.ndarray) -> np.ndarray:
    return np.take_along_axis(decks, np.argsort(keys, axis=1, kind="stable"), axis=1)


def _mark(rng, trials: int, n: int, a: int, labels: int) -> np.ndarray:
    """Pick a card ``a`` times, each time writing one of ``labels`` marks;
    later marks overwrite earlier ones.  Returns marks (0 = unmarked)."""
    marks = np.zeros((trials, n), dtype=np.int64)
    rows = np.arange(trials)
    for _ in range(a):
        card = rng.integers(0, n, size=trials)
        marks[rows, card] = rng.integers(1, labels + 1, size=trials)
    return marks


def _side(decks, rng, a, signed):
    """Pick a card ``a`` times (flipping its sign or not with equal
    probability on signed decks) and move the picked cards to the top in a
    random order."""
    t, n = decks.shape
    rows = np.arange(t)
    picked = np.zeros((t, n), dtype=bool)
    flips = np.zeros((t, n), dtype=np.int64)
    for _ in range(a):
        card = rng.integers(0, n, size=t)
        picked[rows, card] = True
        if signed:
            flips[rows, card] ^= rng.integers(0, 2, size=t)
    out = np.where(flips == 1, -decks, decks)
    keys = np.where(picked, rng.random((t, n)), 1.0 + np.arange(n))
    return _rearrange(out, keys)


def _two_sided(decks, rng, a):
    t, n = decks.shape
    marks = _mark(rng, t, n, a, 2)  # 1 = top, 2 = bottom
    pos = np.arange(n)
    r = rng.random((t, n))
    keys = np.select([marks == 1, marks == 2], [r, n + 1.0 + r], 1.0 + pos)
    return _rearrange(decks, keys)


def _riffle(decks, rng, a):
    t, n = decks.shape
    labels = rng.integers(1, a + 1, size=(t, n))
    keys = (a - labels) * n + np.arange(n)
    return _rearrange(decks, keys)


def _signed_riffle(decks, rng, a):
    """Inverse ``a``-shuffle of signed decks.  Every card independently gets
    one of ``a`` equally likely options: a pile label ``1..a//2`` together
    with a flip bit, plus for odd ``a`` the unflipped bottom pile ``0``.
    Within a pile, unflipped cards keep their order on top and flipped
    cards go below in reverse order."""
    t, n = decks.shape
    half = a // 2
    opt = rng.integers(0, a, size=(t, n))
    if a % 2:
        pile = (opt + 1) // 2
        flip = (opt > 0) & (opt % 2 == 0)
    else:
        pile = opt // 2 + 1
        flip = opt % 2 == 1
    pos = np.arange(n)
    within = np.where(flip, 2 * n - 1 - pos, pos)
    keys = (half - pile) * 2 * n + within
    return _rearrange(np.where(flip, -decks, decks), keys)


def _card_step(family: str, n: int, a: int, decks: np.ndarray, rng) -> np.ndarray:
    if family == "sideA":
        return _side(decks, rng, a, signed=False)
    if family == "twoSidedA":
        return _two_sided(decks, rng, a)
    if family == "riffleA":
        return _riffle(decks, rng, a)
    if family in ("sideB", "sideD"):
        out = _side(decks, rng, a, signed=True)
    else:
        out = _signed_riffle(decks, rng, a)
    if family.endswith("D"):
        # the bottom card of a type D deck carries no sign
        out[:, -1] = np.abs(out[:, -1])
    return out


def card_step(family: str, n: int, a: int, states: np.ndarray, rng) -> np.ndarray:
    """Chamber indices after one card-level shuffle of each deck."""
    codec = deck_codec(get_family(family).complex, n)
    return codec.lookup(_card_step(family, n, a, codec.decks[states], rng))


def _step(cfg_family, n, a, sampler, states, rng):
    if sampler == "element":
        return _element_step(cfg_family, n, a, states, rng)
    return card_step(cfg_family, n, a, states, rng)


# ------------------------------------------------------------------ walks


def tv_to_uniform(p: np.ndarray) -> float:
    return 0.5 * float(np.abs(p - 1.0 / len(p)).sum())


def run_walk(cfg: WalkConfig) -> WalkTrace:
    size = len(chambers(get_family(cfg.family).complex, cfg.n))
    states = np.full(cfg.trials, cfg.start, dtype=np.int64)
    gens = generators(cfg.seed, cfg.trials)
    path, tv = [cfg.start], []
    counts = np.bincount(states, minlength=size)
    tv.append(tv_to_uniform(counts / cfg.trials))
    for _ in range(cfg.steps):
        for sl, rng in gens:
            states[sl] = _step(cfg.family, cfg.n, cfg.a, cfg.sampler, states[sl], rng)
        counts = np.bincount(states, minlength=size)
        tv.append(tv_to_uniform(counts / cfg.trials))
        path.append(int(states[0]))
    return WalkTrace(cfg, path, tv, counts / cfg.trials, counts)


def run_sequence(family: str, n: int, indices: list[int], trials: int, seed: int = 0, start: int = 0, sampler: str = "element") -> np.ndarray:
    """Empirical distribution after one step of ``S_a`` for each ``a`` in turn."""
    size = len(chambers(get_family(family).complex, n))
    states = np.full(trials, start, dtype=np.int64)
    gens = generators(seed, trials)
    for a in indices:
        for sl, rng in gens:
            states[sl] = _step(family, n, a, sampler, states[sl], rng)
    return np.bincount(states, minlength=size) / trials


def empirical_transition_matrix(cfg: WalkConfig) -> np.ndarray:
    """Column ``c`` holds the empirical one-step distribution from chamber
    ``c`` over ``cfg.trials`` independent trials."""
    size = len(chambers(get_family(cfg.family).complex, cfg.n))
    m = np.zeros((size, size))
    for c in range(size):
        states = np.full(cfg.trials, c, dtype=np.int64)
        for sl, rng in generators(cfg.seed, cfg.trials, c):
            states[sl] = _step(cfg.family, cfg.n, cfg.a, cfg.sampler, states[sl], rng)
        m[:, c] = np.bincount(states, minlength=size) / cfg.trials
    return m


def exact_transition_matrix(family: str, n: int, a: int) -> np.ndarray:
    return transition_operator(shuffle(family, n, a)).stochastic()


def within_binomial_band(empirical: np.ndarray, exact: np.ndarray, trials: int, k: float = 4.0) -> tuple[bool, float]:
    """Entrywise ``|empirical - p| <= k * sqrt(p (1 - p) / trials)``.  Returns
    the verdict and the largest standardized deviation (inf where p is 0 or
    1 and the empirical value differs)."""
    sd = np.sqrt(exact * (1 - exact) / trials)
    dev = np.abs(empirical - exact)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(sd > 0, dev / np.where(sd > 0, sd, 1), np.where(dev > 1e-12, np.inf, 0.0))
    worst = float(z.max()) if z.size else 0.0
    return worst <= k, worst


def exact_tv(cfg: WalkConfig) -> list[float]:
    """Total variation to uniform after each step, from operator powers."""
    m = exact_transition_matrix(cfg.family, cfg.n, cfg.a)
    p = np.zeros(m.shape[0])
    p[cfg.start] = 1.0
    out = [tv_to_uniform(p)]
    for _ in range(cfg.steps):
        p = m @ p
        out.append(tv_to_uniform(p))
    return out


def plot_trace(trace: WalkTrace, path, reference: list[float] | None = None) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cfg = trace.config
    fig, ax = plt.subplots(figsize=(6, 4))
    steps = range(len(trace.tv))
    ax.plot(steps, trace.tv, marker="o", ms=3, label="simulated")
    if reference is not None:
        ax.plot(steps, reference, ls="--", label="exact")
    ax.set_yscale("log")
    ax.set_xlabel("step")
    ax.set_ylabel("total variation to uniform")
    ax.set_title(f"{cfg.family}, n={cfg.n}, a={cfg.a}, {cfg.trials} trials")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None, "CreationDate": None} if str(path).endswith(".pdf") else {"Software": None})
    plt.close(fig)
