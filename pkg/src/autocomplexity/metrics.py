"""Similarity metrics built on conditional automatic complexity.

Four distances over words of a fixed length, compared on the slow
representatives (binary: the words starting with 0):

* ``jnum``     log2(C(x|y) * C(y|x))
* ``jnum-max`` max(log2 C(x|y), log2 C(y|x))
* ``j``        jnum / (log2(C(x|y) C(y|x) C(x) C(y)) - log2 C(x#y))
* ``jmax``     log2 max(C(x|y), C(y|x)) / log2 max(C(x), C(y))

where C is the unique-acceptance complexity and x#y the pair word. The
quotients use the convention 0/0 = 0, and the boundary decisions (is the
distance exactly 0, exactly 1?) are made on the integer complexities, never by
comparing floats.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .cache import ResultCache
from .complexity import (
    DEFAULT_MAX_NODES,
    KIND_COND_UNIQUE,
    KIND_DET_PARTIAL,
    KIND_UNIQUE,
    Budget,
    ComplexityQuery,
    compute,
    max_complexity,
    value_at_most,
)
from .words import Word, fractional_power, slow_normalize, slow_words, track


class MetricKind(Enum):
    J_NUM = "jnum"
    J_NUM_MAX = "jnum-max"
    J = "j"
    J_MAX = "jmax"

    @classmethod
    def parse(cls, name: str) -> MetricKind:
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown metric kind {name!r}")


class ComplexityProvider:
    """Memoized complexity lookups keyed by slow canonical forms."""

    def __init__(self, cache: ResultCache | None = None, max_nodes: int = DEFAULT_MAX_NODES):
        self.cache = cache
        self.max_nodes = max_nodes
        self._memo: dict[tuple, int] = {}

    def _value(self, query: ComplexityQuery) -> int:
        key = (
            query.kind,
            query.target.symbols,
            query.target.alphabet_size,
            None if query.condition is None else query.condition.symbols,
            None if query.condition is None else query.condition.alphabet_size,
        )
        hit = self._memo.get(key)
        if hit is None:
            hit = compute(query, Budget(max_nodes=self.max_nodes), self.cache).value
            self._memo[key] = hit
        return hit

    def unconditional(self, x: Word) -> int:
        return self._value(ComplexityQuery(KIND_UNIQUE, slow_normalize(x)))

    def conditional(self, x: Word, y: Word) -> int:
        return self._value(
            ComplexityQuery(KIND_COND_UNIQUE, slow_normalize(x), slow_normalize(y))
        )

    def track_value(self, x: Word, y: Word) -> int:
        return self._value(ComplexityQuery(KIND_UNIQUE, slow_normalize(track(x, y))))

    def det_unconditional(self, x: Word) -> int:
        return self._value(ComplexityQuery(KIND_DET_PARTIAL, slow_normalize(x)))


def is_unit_j_distance(x: Word, y: Word, provider: ComplexityProvider) -> bool:
    """Integer-side test for J(x,y) = 1: the pair word is as complex as the
    product of the parts, and the numerator is nonzero."""
    if provider.conditional(x, y) == 1 and provider.conditional(y, x) == 1:
        return False
    return provider.track_value(x, y) == provider.unconditional(x) * provider.unconditional(y)


def metric_value(
    kind: MetricKind,
    x: Word,
    y: Word,
    provider: ComplexityProvider,
    det_baseline: bool = False,
) -> float:
    """Evaluate one of the four distances; logs are base 2.

    ``det_baseline`` swaps the unconditional values inside ``jmax`` for their
    deterministic (partial-DFA) counterparts, for comparison runs.
    """
    if len(x) != len(y):
        raise ValueError("metric arguments must have equal length")
    a_xy = provider.conditional(x, y)
    a_yx = provider.conditional(y, x)
    if kind is MetricKind.J_NUM:
        return math.log2(a_xy * a_yx)
    if kind is MetricKind.J_NUM_MAX:
        return math.log2(max(a_xy, a_yx))
    if kind is MetricKind.J:
        if a_xy == 1 and a_yx == 1:
            return 0.0
        a_x = provider.unconditional(x)
        a_y = provider.unconditional(y)
        a_track = provider.track_value(x, y)
        if a_track == a_x * a_y:
            return 1.0
        num = math.log2(a_xy * a_yx)
        return num / (math.log2(a_xy * a_yx * a_x * a_y) - math.log2(a_track))
    if kind is MetricKind.J_MAX:
        num = max(a_xy, a_yx)
        if num == 1:
            return 0.0
        if det_baseline:
            den = max(provider.det_unconditional(x), provider.det_unconditional(y))
        else:
            den = max(provider.unconditional(x), provider.unconditional(y))
        if num == den:
            return 1.0
        return math.log2(num) / math.log2(den)
    raise ValueError(f"unknown metric kind {kind!r}")


@dataclass(frozen=True)
class MetricReport:
    n: int
    kind: MetricKind
    ground_set_size: int
    identity_violations: tuple
    symmetry_violations: tuple
    triangle_violations: tuple

    @property
    def ok(self) -> bool:
        return not (
            self.identity_violations
            or self.symmetry_violations
            or self.triangle_violations
        )

    @property
    def violation_count(self) -> int:
        return (
            len(self.identity_violations)
            + len(self.symmetry_violations)
            + len(self.triangle_violations)
        )


def verify_metric(
    n: int,
    kind: MetricKind,
    provider: ComplexityProvider | None = None,
    tolerance: float = 1e-9,
) -> MetricReport:
    """Exhaustively check the metric axioms on the slow binary words of length n.

    Checks d(x,x)=0, d(x,y)=0 => x=y, symmetry, and the triangle inequality
    over every ordered triple, comparing reals within the tolerance.
    """
    provider = provider or ComplexityProvider()
    ground = list(slow_words(n, 2))
    size = len(ground)
    d = [[0.0] * size for _ in range(size)]
    for i, x in enumerate(ground):
        for j, y in enumerate(ground):
            d[i][j] = metric_value(kind, x, y, provider)

    identity = []
    symmetry = []
    triangle = []
    for i, x in enumerate(ground):
        if abs(d[i][i]) > tolerance:
            identity.append((x, d[i][i]))
        for j, y in enumerate(ground):
            if i != j and abs(d[i][j]) <= tolerance:
                identity.append((x, y, d[i][j]))
            if i < j and abs(d[i][j] - d[j][i]) > tolerance:
                symmetry.append((x, y, d[i][j], d[j][i]))
    for i in range(size):
        for j in range(size):
            for k in range(size):
                if d[i][k] > d[i][j] + d[j][k] + tolerance:
                    triangle.append(
                        (ground[i], ground[j], ground[k], d[i][k], d[i][j] + d[j][k])
                    )
    return MetricReport(
        n=n,
        kind=kind,
        ground_set_size=size,
        identity_violations=tuple(identity),
        symmetry_violations=tuple(symmetry),
        triangle_violations=tuple(triangle),
    )


@dataclass(frozen=True)
class DistributionRow:
    """Counts of pairs (x, y) per conditional complexity value q, q = 1, 2, ..."""

    n: int
    counts: tuple[int, ...]
    sampled: int | None = None  # number of samples, None for exhaustive rows

    @property
    def mode(self) -> int:
        best = max(range(len(self.counts)), key=lambda i: self.counts[i])
        return best + 1

    @property
    def total(self) -> int:
        return sum(self.counts)


def _tally(values) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    top = max(counts)
    return tuple(counts.get(q, 0) for q in range(1, top + 1))


def _distribution_row(n: int, provider: ComplexityProvider) -> DistributionRow:
    ground = list(slow_words(n, 2))
    values = [
        provider.conditional(x, y) for y in ground for x in ground
    ]
    return DistributionRow(n=n, counts=_tally(values))


def _row_worker(args) -> tuple[int, tuple[int, ...]]:
    n, cache_dir, max_nodes = args
    cache = ResultCache(cache_dir) if cache_dir else None
    provider = ComplexityProvider(cache, max_nodes)
    return n, _distribution_row(n, provider).counts


def distribution_table(
    n_max: int,
    provider: ComplexityProvider | None = None,
    jobs: int = 1,
) -> list[DistributionRow]:
    """Exhaustive conditional-complexity distribution rows for n = 0..n_max."""
    if n_max > 10:
        raise ValueError("exhaustive rows stop at length 10; sample longer lengths")
    provider = provider or ComplexityProvider()
    if jobs <= 1:
        return [_distribution_row(n, provider) for n in range(n_max + 1)]
    cache_dir = None
    if provider.cache is not None and provider.cache.directory is not None:
        cache_dir = str(provider.cache.directory)
    args = [(n, cache_dir, provider.max_nodes) for n in range(n_max + 1)]
    rows: dict[int, tuple[int, ...]] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for n, counts in pool.map(_row_worker, args):
            rows[n] = counts
    return [DistributionRow(n=n, counts=rows[n]) for n in range(n_max + 1)]


def sample_distribution(
    n: int, samples: int, seed: int, provider: ComplexityProvider | None = None
) -> DistributionRow:
    """Empirical conditional-complexity distribution over random slow pairs."""
    provider = provider or ComplexityProvider()
    rng = random.Random(seed)

    def draw() -> Word:
        return Word((0,) + tuple(rng.randrange(2) for _ in range(n - 1)), 2)

    values = [provider.conditional(draw(), draw()) for _ in range(samples)]
    return DistributionRow(n=n, counts=_tally(values), sampled=samples)


def format_table(rows: list[DistributionRow]) -> str:
    """Aligned text layout with the modal count of each row in brackets."""
    width = max(len(r.counts) for r in rows)
    header = ["n\\q"] + [str(q) for q in range(1, width + 1)]
    body = [header]
    for r in rows:
        cells = [str(r.n)]
        for i in range(width):
            if i < len(r.counts):
                text = str(r.counts[i])
                if i + 1 == r.mode:
                    text = f"[{text}]"
                cells.append(text)
            else:
                cells.append("")
        body.append(cells)
    widths = [max(len(row[c]) for row in body) for c in range(width + 1)]
    lines = [
        "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)).rstrip()
        for row in body
    ]
    return "\n".join(lines) + "\n"


def classify_unit_distance(
    n: int,
    provider: ComplexityProvider | None = None,
    method: str = "fast",
) -> set[frozenset[Word]]:
    """All unordered pairs of distinct slow binary words at J distance 1.

    The fast path only examines pairs that could satisfy
    C(x#y) = C(x) * C(y): since the pair word obeys the half-length ceiling,
    both factors must be small, so candidates are the words of complexity at
    most ceiling/2 plus every pair containing the constant word. The
    exhaustive path evaluates every pair and is kept as an audit.
    """
    provider = provider or ComplexityProvider()
    ground = list(slow_words(n, 2))
    pairs: set[frozenset[Word]] = set()
    if method == "exhaustive":
        for i, x in enumerate(ground):
            for y in ground[i + 1 :]:
                if is_unit_j_distance(x, y, provider):
                    pairs.add(frozenset({x, y}))
        return pairs
    if method != "fast":
        raise ValueError("method must be 'fast' or 'exhaustive'")

    zero = Word((0,) * n, 2)
    for x in ground:
        if x != zero and is_unit_j_distance(zero, x, provider):
            pairs.add(frozenset({zero, x}))
    ceiling = max_complexity(n)
    candidates = []
    for x in ground:
        if x == zero:
            continue
        v = value_at_most(
            ComplexityQuery(KIND_UNIQUE, x), ceiling // 2, provider.cache, provider.max_nodes
        )
        if v is not None and v >= 2:
            candidates.append((x, v))
    for i, (x, vx) in enumerate(candidates):
        for y, vy in candidates[i + 1 :]:
            if vx * vy > ceiling:
                continue
            if is_unit_j_distance(x, y, provider):
                pairs.add(frozenset({x, y}))
    return pairs


def expected_unit_distance_pairs(n: int) -> set[frozenset[Word]]:
    """The classification the searches are compared against for n <= 12:
    every pair containing 0^n and, from length 10 on, the alternating word
    paired with a period-3 word."""
    zero = Word((0,) * n, 2)
    pairs = {
        frozenset({zero, w}) for w in slow_words(n, 2) if w != zero
    }
    if n >= 10:
        alternating = fractional_power(Word.parse("01"), n)
        for base in ("001", "010", "011"):
            pairs.add(frozenset({alternating, fractional_power(Word.parse(base), n)}))
    return pairs
