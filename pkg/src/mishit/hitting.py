"""Minimum hitting sets over MIS families, and the covering-code view.

The exact solver treats hitting as set cover over the dual incidence
structure: depth-first branch and bound that always branches on an unhit set
with the fewest candidate hitters, with a greedy disjoint-set packing as the
lower bound.  After the optimum size is certified, a lexicographic refinement
pass rebuilds the least optimal set member by member, so results are
reproducible across runs and platforms.

For the Hamming family, hitting all radius-(m/2 - t) balls is the same as
being a covering code of radius m/2 - t in Z_2^m.  The scan engine computes,
for every word of the space, its distance to the nearest codeword; covering
radius and far-point witnesses are two views of that scan.  A word w is far
from the whole code (distance > m/2 - t everywhere) exactly when, in the
+/-1 encoding, its inner product with every codeword is below 2t, which is
how the discrepancy bound forces code sizes of at least ceil(t^2/36).

Upper-bound constructions: rows of a Sylvester Hadamard matrix of order h0
(the least power of two >= 4t^2) together with their complements, each
extended by an all-zeros and an all-ones suffix; and seeded random prefixes
of length 4t^2 extended the same two complementary ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .families import HammingSpec
from .graph import (
    DEFAULT_MIS_CAP,
    FamilyTooLargeError,
    Graph,
    MisFamily,
    VertexSet,
    _iter_bits,
    enumerate_mis,
)

SCAN_MAX_M = 28


class InfeasibleFamilyError(ValueError):
    """A family member is empty, so no vertex set can hit everything."""


@dataclass(frozen=True)
class HittingResult:
    """A minimum transversal with its certificate.

    ``optimal`` means the branch-and-bound search exhausted all smaller
    candidates for the *given* family; ``per_set_witness`` records, for each
    family member in input order, one vertex of the transversal inside it.
    """

    set: VertexSet
    size: int
    optimal: bool
    per_set_witness: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "vertices": list(self.set.members()),
            "optimal": self.optimal,
        }


def _family_masks(family) -> tuple[list[int], int]:
    """Extract (bitmasks, universe size) from a MisFamily or a VertexSet sequence."""
    sets: Sequence[VertexSet] = family.sets if isinstance(family, MisFamily) else family
    if not sets:
        raise ValueError("family must be non-empty")
    n = sets[0].n
    masks = []
    for s in sets:
        if s.n != n:
            raise ValueError("family members live in different universes")
        if s.bits == 0:
            raise InfeasibleFamilyError("family contains an empty member")
        masks.append(s.bits)
    return masks, n


def _dedupe(masks: list[int]) -> list[int]:
    seen = set()
    out = []
    for m in masks:
        if m not in seen:
            seen.add(m)
            out.append(m)
    return out


def _drop_supersets(masks: list[int]) -> list[int]:
    # hitting a subset hits every superset, so strict supersets are redundant;
    # MIS families have equal-size members, where this pass is a no-op
    if len({m.bit_count() for m in masks}) == 1:
        return masks
    return [
        m for m in masks
        if not any(other != m and other & m == other for other in masks)
    ]


def _pack_lower_bound(masks: list[int]) -> int:
    used = 0
    count = 0
    for m in masks:
        if not m & used:
            used |= m
            count += 1
    return count


def _greedy_mask(masks: list[int], n: int) -> int:
    """Greedy max-coverage transversal, ties broken by least vertex index."""
    unhit = list(masks)
    chosen = 0
    while unhit:
        counts = {}
        for s in unhit:
            for v in _iter_bits(s):
                counts[v] = counts.get(v, 0) + 1
        best_v = min(counts, key=lambda v: (-counts[v], v))
        chosen |= 1 << best_v
        unhit = [s for s in unhit if not s >> best_v & 1]
    return chosen


def _branch_optimum(masks: list[int], upper_mask: int) -> tuple[int, int]:
    """Exact minimum transversal (size, mask) by depth-first branch and bound."""
    best_size = upper_mask.bit_count()
    best_mask = upper_mask

    def dfs(unhit: list[int], size: int, chosen: int) -> None:
        nonlocal best_size, best_mask
        if not unhit:
            if size < best_size:
                best_size, best_mask = size, chosen
            return
        if size + _pack_lower_bound(unhit) >= best_size:
            return
        branch = min(unhit, key=lambda s: s.bit_count())
        for v in _iter_bits(branch):
            bit = 1 << v
            dfs([s for s in unhit if not s & bit], size + 1, chosen | bit)

    dfs(masks, 0, 0)
    return best_size, best_mask


def _feasible(unhit: list[int], allowed: int, budget: int) -> bool:
    """Is there a transversal of the unhit sets within ``allowed`` of size <= budget?"""
    if not unhit:
        return True
    if budget <= 0 or _pack_lower_bound(unhit) > budget:
        return False
    branch = min(unhit, key=lambda s: (s & allowed).bit_count())
    candidates = branch & allowed
    if not candidates:
        return False
    for v in _iter_bits(candidates):
        bit = 1 << v
        if _feasible([s for s in unhit if not s & bit], allowed, budget - 1):
            return True
    return False


def _lex_min_optimal(masks: list[int], n: int, opt_size: int) -> int:
    """The lexicographically least transversal of the certified optimum size."""
    full = (1 << n) - 1
    chosen = 0
    unhit = masks
    lo = 0
    for slot in range(opt_size):
        rest_budget = opt_size - slot - 1
        for v in range(lo, n):
            bit = 1 << v
            remaining = [s for s in unhit if not s & bit]
            if len(remaining) == len(unhit):
                continue  # hits nothing new: cannot belong to a minimum set
            allowed = full & ~((bit << 1) - 1)  # strictly above v
            if _feasible(remaining, allowed, rest_budget):
                chosen |= bit
                unhit = remaining
                lo = v + 1
                break
        else:
            raise AssertionError("lexicographic refinement could not extend an optimal prefix")
    if unhit:
        raise AssertionError("refined set is not a transversal")
    return chosen


def min_hitting_set(family, universe: int | None = None) -> HittingResult:
    """Exact minimum-cardinality set meeting every family member.

    ``family`` is a MisFamily or a sequence of VertexSets over one universe.
    Ties among optima are broken toward the lexicographically least vertex
    tuple.  If the family is an incomplete enumeration, the result is still a
    minimum transversal of the given members, hence only a lower-bound
    certificate for the hitting number of the source graph.
    """
    masks, n = _family_masks(family)
    if universe is not None and universe != n:
        raise ValueError(f"universe {universe} does not match family universe {n}")
    work = _drop_supersets(_dedupe(masks))
    greedy = _greedy_mask(work, n)
    opt_size, _ = _branch_optimum(work, greedy)
    best = _lex_min_optimal(work, n, opt_size)
    witnesses = []
    for m in masks:
        hit = m & best
        witnesses.append((hit & -hit).bit_length() - 1)
    return HittingResult(
        set=VertexSet(n, best),
        size=opt_size,
        optimal=True,
        per_set_witness=tuple(witnesses),
    )


def greedy_hitting_set(family) -> VertexSet:
    """Deterministic greedy transversal: max coverage, ties by least index."""
    masks, n = _family_masks(family)
    return VertexSet(n, _greedy_mask(_dedupe(masks), n))


def h_of_graph(g: Graph, cap: int = DEFAULT_MIS_CAP) -> HittingResult:
    """Hitting number of ``g``: minimum transversal of all maximum independent sets."""
    family = enumerate_mis(g, cap=cap)
    if not family.complete:
        raise FamilyTooLargeError(
            f"more than {cap} maximum independent sets; use a structural family"
        )
    return min_hitting_set(family)


# ---------------------------------------------------------------------------
# covering codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveringCode:
    """A set of binary m-words aimed at covering radius ``target_radius``.

    Words are canonicalised (sorted, deduplicated) on construction so radius
    computations and file exports are reproducible.
    """

    m: int
    words: tuple[int, ...]
    target_radius: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("word length must be positive")
        if not 0 <= self.target_radius <= self.m:
            raise ValueError(f"target radius {self.target_radius} out of range 0..{self.m}")
        canon = tuple(sorted(set(self.words)))
        for w in canon:
            if w < 0 or w >> self.m:
                raise ValueError(f"word {w:#x} is not a {self.m}-bit value")
        object.__setattr__(self, "words", canon)

    def __len__(self) -> int:
        return len(self.words)


def _min_dist_chunks(code: CoveringCode, chunk_bits: int = 20) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start, min-distance-to-code array) over chunks of the word space."""
    m = code.m
    arr = np.array(code.words, dtype=np.uint32)
    step = 1 << min(chunk_bits, m)
    for start in range(0, 1 << m, step):
        space = np.arange(start, min(start + step, 1 << m), dtype=np.uint32)
        mind = np.full(space.shape, m + 1, dtype=np.uint8)
        for c in arr:
            np.minimum(mind, np.bitwise_count(space ^ c).astype(np.uint8), out=mind)
        yield start, mind


def covering_radius(code: CoveringCode) -> int:
    """Exact covering radius: max over all 2^m words of the distance to the code."""
    if not code.words:
        raise ValueError("empty code has no covering radius")
    if code.m > SCAN_MAX_M:
        raise ValueError(f"exhaustive scan supports m <= {SCAN_MAX_M}, got m={code.m}")
    return max(int(mind.max()) for _, mind in _min_dist_chunks(code))


def find_far_point(
    code: CoveringCode,
    t: int,
    seed=None,
    samples: int = 100_000,
) -> int | None:
    """A word at distance > m/2 - t from every codeword, or None.

    Exhaustive (hence complete) for m <= 28; beyond that a seeded random
    search that may miss sparse witnesses.  In the +/-1 encoding the far
    condition reads inner product < 2t against every codeword, via
    inner product = m - 2 * distance.
    """
    if not code.words:
        raise ValueError("empty code")
    m = code.m
    # distance d > m/2 - t  <=>  2d > m - 2t, exact in integers
    floor2 = m - 2 * t
    if m <= SCAN_MAX_M:
        for start, mind in _min_dist_chunks(code):
            far = np.nonzero(mind.astype(np.int32) * 2 > floor2)[0]
            if far.size:
                return start + int(far[0])
        return None
    rng = np.random.default_rng(seed)
    nbytes = (m + 7) // 8
    mask = (1 << m) - 1
    for _ in range(samples):
        w = int.from_bytes(rng.bytes(nbytes), "little") & mask
        if all(2 * (w ^ c).bit_count() > floor2 for c in code.words):
            return w
    return None


def hitting_set_to_code(spec: HammingSpec, s: VertexSet) -> CoveringCode:
    """Reinterpret a vertex set of the Hamming graph as a code over Z_2^m."""
    if s.n != spec.n:
        raise ValueError(f"vertex set over {s.n} words against universe {spec.n}")
    if len(s) == 0:
        raise ValueError("empty vertex set")
    return CoveringCode(m=spec.m, words=s.members(), target_radius=spec.ball_radius)


def code_to_hitting_set(spec: HammingSpec, code: CoveringCode) -> VertexSet:
    """Inverse of hitting_set_to_code; round-trips exactly."""
    if code.m != spec.m:
        raise ValueError(f"code length {code.m} against spec m={spec.m}")
    return VertexSet.from_members(spec.n, code.words)


def discrepancy_lower_bound(t: int) -> int:
    """Least code size T not excluded by the inner-product argument.

    A code of T words admits a +/-1 vector with all inner products at most
    12*sqrt(T) in absolute value; when 12*sqrt(T) < 2t that vector is far
    from every codeword, so any covering code of radius m/2 - t must have
    T >= ceil(t^2/36).  Returned without any silent strengthening.
    """
    if t < 1:
        raise ValueError("t must be a positive integer")
    return (t * t + 35) // 36


def kneser_lower_bound(spec: HammingSpec) -> int:
    """The lower bound 2t from the Kneser subgraph; weaker than the t^2/36 order."""
    return 2 * spec.t


def sylvester_hadamard_rows(order: int) -> list[int]:
    """Rows of the Sylvester Hadamard matrix as binary words.

    Bit j of row i is the parity of popcount(i & j), i.e. entry -1 of the
    +/-1 matrix maps to bit 1.
    """
    if order < 1 or order & (order - 1):
        raise ValueError("Sylvester order must be a power of two")
    rows = []
    for i in range(order):
        w = 0
        for j in range(order):
            if (i & j).bit_count() & 1:
                w |= 1 << j
        rows.append(w)
    return rows


def hadamard_prefix_order(t: int) -> int:
    """Least power of two >= 4t^2."""
    need = 4 * t * t
    h0 = 1
    while h0 < need:
        h0 <<= 1
    return h0


def build_hadamard_covering_code(spec: HammingSpec) -> CoveringCode:
    """Hadamard rows and their complements, extended two complementary ways.

    Every Sylvester row of order h0 (least power of two >= 4t^2) and its
    complement forms an h0-prefix; each prefix is completed by an all-zeros
    and an all-ones suffix, giving 4*h0 words of length m.
    """
    h0 = hadamard_prefix_order(spec.t)
    if spec.m < h0:
        raise ValueError(f"m={spec.m} is below the Hadamard prefix order {h0}")
    pre_mask = (1 << h0) - 1
    ones_suffix = ((1 << (spec.m - h0)) - 1) << h0
    words = []
    for row in sylvester_hadamard_rows(h0):
        for prefix in (row, row ^ pre_mask):
            words.append(prefix)
            words.append(prefix | ones_suffix)
    return CoveringCode(m=spec.m, words=tuple(words), target_radius=spec.ball_radius)


@dataclass(frozen=True)
class RandomCodeOutcome:
    """Result of the randomized construction: ``code`` is None after failure."""

    code: CoveringCode | None
    verified: bool
    trials_used: int


def build_random_covering_code(
    spec: HammingSpec,
    trials: int,
    rng_seed,
    count: int | None = None,
) -> RandomCodeOutcome:
    """Random length-4t^2 prefixes extended two complementary ways.

    Each trial samples ``count`` prefixes (default 16t^2, matching the
    Hadamard code size), extends each with the all-zeros and the all-ones
    suffix, and accepts the first trial whose exhaustively verified covering
    radius is at most m/2 - t.  Beyond the scan range the first sample is
    returned unverified.
    """
    prefix_len = 4 * spec.t * spec.t
    if prefix_len > spec.m:
        raise ValueError(f"prefix length 4t^2={prefix_len} exceeds m={spec.m}")
    if count is None:
        count = 4 * prefix_len
    rng = np.random.default_rng(rng_seed)
    nbytes = (prefix_len + 7) // 8
    pmask = (1 << prefix_len) - 1
    ones_suffix = ((1 << (spec.m - prefix_len)) - 1) << prefix_len
    for trial in range(1, trials + 1):
        words = []
        for _ in range(count):
            prefix = int.from_bytes(rng.bytes(nbytes), "little") & pmask
            words.append(prefix)
            words.append(prefix | ones_suffix)
        code = CoveringCode(m=spec.m, words=tuple(words), target_radius=spec.ball_radius)
        if spec.m > SCAN_MAX_M:
            return RandomCodeOutcome(code=code, verified=False, trials_used=trial)
        if covering_radius(code) <= spec.ball_radius:
            return RandomCodeOutcome(code=code, verified=True, trials_used=trial)
    return RandomCodeOutcome(code=None, verified=False, trials_used=trials)


def min_covering_code_search(m: int, radius: int, max_size: int | None = None) -> CoveringCode:
    """Smallest code of covering radius <= ``radius`` by direct subset search.

    Independent of the hitting-set solver: enumerates candidate codes in
    lexicographic order by increasing size over precomputed ball masks.
    Exponential; intended for the m <= 6 cross-checks.
    """
    if m > 6:
        raise ValueError("direct code search is only supported for m <= 6")
    if not 0 <= radius <= m:
        raise ValueError("radius out of range")
    size_space = 1 << m
    balls = []
    words = np.arange(size_space, dtype=np.uint32)
    for c in range(size_space):
        near = np.bitwise_count(words ^ np.uint32(c)) <= radius
        packed = np.packbits(near, bitorder="little").tobytes()
        balls.append(int.from_bytes(packed, "little"))
    full = (1 << size_space) - 1
    limit = max_size if max_size is not None else size_space
    for size in range(1, limit + 1):
        for combo in combinations(range(size_space), size):
            cover = 0
            for c in combo:
                cover |= balls[c]
            if cover == full:
                return CoveringCode(m=m, words=combo, target_radius=radius)
    raise ValueError(f"no covering code of radius {radius} within size {limit}")


# ---------------------------------------------------------------------------
# code files
# ---------------------------------------------------------------------------


def word_to_string(word: int, m: int) -> str:
    """0/1 string with position j holding bit j of the word."""
    return "".join("1" if word >> j & 1 else "0" for j in range(m))


def string_to_word(s: str) -> int:
    word = 0
    for j, ch in enumerate(s):
        if ch == "1":
            word |= 1 << j
        elif ch != "0":
            raise ValueError(f"bad code character {ch!r}")
    return word


def write_code(code: CoveringCode, path) -> None:
    t = code.m // 2 - code.target_radius
    with open(path, "w") as fh:
        fh.write(f"m={code.m} t={t}\n")
        for w in code.words:
            fh.write(word_to_string(w, code.m) + "\n")


def read_code(path) -> CoveringCode:
    with open(path) as fh:
        header = fh.readline().split()
        fields = dict(part.split("=") for part in header)
        m = int(fields["m"])
        t = int(fields["t"])
        words = []
        for line in fh:
            line = line.strip()
            if line:
                if len(line) != m:
                    raise ValueError(f"word of length {len(line)} in a length-{m} code file")
                words.append(string_to_word(line))
    return CoveringCode(m=m, words=tuple(words), target_radius=m // 2 - t)
