"""Exact enumeration of closed and first-return walks on Z^d.

Counting conventions (used everywhere in the package):

* ``A`` tables hold A_{2n}, the number of walks of length 2n that start and
  end at the origin; index n is the *half-length*, starting at n = 0 with
  A_0 = 1.
* ``B`` tables hold B_{2n}, the walks returning to the origin for the
  first time at step 2n; index starts at n = 1.
* ``X`` tables hold the normalized counts x_n = A_{2n} / C(2n, n), which
  satisfy the fundamental recurrence

      x_n^{(d+1)} = sum_k C(n, k)^2 x_k^{(d)},   x_n^{(1)} = 1.

All sequences are generated from the x-ladder (single source of truth);
A follows by multiplying central binomials, B by the convolution

      B_{2n} = A_{2n} - sum_{k=1}^{n-1} B_{2k} A_{2n-2k}.

An independent dynamic-programming oracle (full_distribution_dp,
first_returns_dp) convolves unit steps directly and is used for
cross-checks only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import CapacityError
from .kernel import BigCount, binomial, binomial_row

KINDS = ("X", "A", "B")

# DP boxes larger than this many cells are refused (fail loudly, stay
# desk-scale).
DP_CELL_BUDGET = 10**8


@dataclass(frozen=True)
class SequenceTable:
    """A prefix of one of the walk-count sequences.

    ``values[i]`` is the term with index ``offset + i``; offset is 0 for
    kinds X and A (x_0 = A_0 = 1) and 1 for kind B (B_2 is the first term).
    """

    dimension: int
    kind: str
    values: tuple[BigCount, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("kind must be one of %s" % (KINDS,))
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def offset(self) -> int:
        return 1 if self.kind == "B" else 0

    @property
    def n_max(self) -> int:
        return self.offset + len(self.values) - 1

    def value(self, n: int) -> BigCount:
        """Term with sequence index n (A_{2n}, B_{2n} or x_n)."""
        i = n - self.offset
        if i < 0 or i >= len(self.values):
            raise IndexError("index %d outside table range" % n)
        return self.values[i]

    def iter_indexed(self) -> Iterator[tuple[int, BigCount]]:
        for i, v in enumerate(self.values):
            yield self.offset + i, v

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.dimension,
            "offset": self.offset,
            "values": [str(v) for v in self.values],
        }


@dataclass(frozen=True)
class LatticeDistribution:
    """Sparse endpoint distribution of an n-step walk in Z^dimension."""

    dimension: int
    steps: int
    counts: dict[tuple[int, ...], BigCount] = field(compare=False)

    def total(self) -> BigCount:
        return sum(self.counts.values())

    def at(self, point: tuple[int, ...]) -> BigCount:
        return self.counts.get(tuple(point), 0)

    def sorted_items(self) -> list[tuple[tuple[int, ...], BigCount]]:
        """Items in lexicographic point order (canonical serialization)."""
        return sorted(self.counts.items())

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "steps": self.steps,
            "counts": [[list(p), str(c)] for p, c in self.sorted_items()],
        }


@dataclass(frozen=True)
class Layer:
    """Slice of the (d+1)-dimensional n-step distribution at height h.

    ``counts`` is the induced d-dimensional distribution; ``dimension``
    is the ambient dimension d+1.
    """

    dimension: int
    steps: int
    height: int
    counts: LatticeDistribution


def x_sequence(d: int, N: int) -> SequenceTable:
    """x_0 .. x_N in dimension d via the fundamental recurrence ladder."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    xs = [1] * (N + 1)
    for _ in range(d - 1):
        prev = xs
        xs = []
        for n in range(N + 1):
            row = binomial_row(n)
            xs.append(sum(row[k] * row[k] * prev[k] for k in range(n + 1)))
    return SequenceTable(d, "X", tuple(xs))


def closed_walks(d: int, N: int) -> SequenceTable:
    """A_0 .. A_{2N}: closed walks, A_{2n} = C(2n, n) * x_n."""
    xs = x_sequence(d, N)
    vals = tuple(binomial(2 * n, n) * x for n, x in enumerate(xs.values))
    return SequenceTable(d, "A", vals)


def _first_returns_from_a(a_values: tuple[BigCount, ...]) -> list[BigCount]:
    """B_2 .. B_{2N} from A_0 .. A_{2N} via the convolution recurrence."""
    N = len(a_values) - 1
    bs: list[BigCount] = []
    for n in range(1, N + 1):
        b = a_values[n] - sum(bs[k - 1] * a_values[n - k] for k in range(1, n))
        bs.append(b)
    return bs


def first_returns(d: int, N: int) -> SequenceTable:
    """B_2 .. B_{2N}: first returns to the origin."""
    if N < 1:
        raise ValueError("N must be >= 1")
    a = closed_walks(d, N)
    return SequenceTable(d, "B", tuple(_first_returns_from_a(a.values)))


def first_return_closed_form_1d(n: int) -> BigCount:
    """B_{2n}^{(1)} = C(2n, n) / (2n - 1); the division is always exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q, r = divmod(binomial(2 * n, n), 2 * n - 1)
    if r:
        raise ArithmeticError(
            "C(2n,n) not divisible by 2n-1 at n=%d; implementation bug" % n
        )
    return q


def endpoint_count_2d(n: int, k: int, l: int) -> BigCount:
    """Walks of length n in Z^2 from the origin to (k, l).

    Equals C(n, (n+k-l)/2) * C(n, (n+k+l)/2); zero when |k|+|l| > n or
    when n and k+l have different parity.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if abs(k) + abs(l) > n or (n - k - l) % 2 != 0:
        return 0
    return binomial(n, (n + k - l) // 2) * binomial(n, (n + k + l) // 2)


def tau_entry(n: int, i: int, j: int) -> BigCount:
    """Entry j on row i of the triangle tau_n: C(n, i-1) * C(i-1, j-1)."""
    if not (1 <= j <= i <= n + 1):
        raise ValueError("tau_entry needs 1 <= j <= i <= n+1")
    return binomial(n, i - 1) * binomial(i - 1, j - 1)


def _distribution_formula(d: int, n: int, cache: dict) -> dict[tuple[int, ...], BigCount]:
    """Endpoint distribution l_n^{(d)} built from the layer formula only.

    Dimension 1 is the Pascal row; dimension d+1 is assembled from the
    heights h = -n..n, each height being a layer over the d-dimensional
    distributions.  Fully independent of the step-convolution DP.
    """
    key = (d, n)
    if key in cache:
        return cache[key]
    if d == 1:
        dist = {(k,): binomial(n, (n + k) // 2)
                for k in range(-n, n + 1, 2)}
    else:
        dist = {}
        for h in range(-n, n + 1):
            for p, c in _layer_counts(d, n, h, cache).items():
                dist[p + (h,)] = c
    cache[key] = dist
    return dist


def _layer_counts(d_target: int, n: int, h: int,
                  cache: dict) -> dict[tuple[int, ...], BigCount]:
    """Counts of the height-h slice, via

        L_{n,h}^{(d+1)} = sum_j C(n, n-h-2j) * C(h+2j, j) * l_{n-h-2j}^{(d)}

    with h replaced by |h| (mirror symmetry).
    """
    h = abs(h)
    d = d_target - 1
    out: dict[tuple[int, ...], BigCount] = {}
    for j in range((n - h) // 2 + 1):
        w = binomial(n, n - h - 2 * j) * binomial(h + 2 * j, j)
        if w == 0:
            continue
        for p, c in _distribution_formula(d, n - h - 2 * j, cache).items():
            out[p] = out.get(p, 0) + w * c
    return out


def layer(d_target: int, n: int, h: int) -> Layer:
    """The layer L_{n,h} of the d_target-dimensional n-step distribution."""
    if d_target < 2:
        raise ValueError("layer needs target dimension >= 2")
    if n < 0:
        raise ValueError("n must be >= 0")
    if abs(h) > n:
        raise ValueError("|h| must be <= n")
    counts = _layer_counts(d_target, n, h, {})
    dist = LatticeDistribution(d_target - 1, n, counts)
    return Layer(d_target, n, h, dist)


def distribution_formula(d: int, n: int) -> LatticeDistribution:
    """Full l_n^{(d)} assembled from layers (formula route, no DP)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    return LatticeDistribution(d, n, _distribution_formula(d, n, {}))


def _check_box(d: int, steps_box: int):
    cells = (2 * steps_box + 1) ** d
    if cells > DP_CELL_BUDGET:
        raise CapacityError(
            "DP box (2*%d+1)^%d = %d cells exceeds budget %d"
            % (steps_box, d, cells, DP_CELL_BUDGET)
        )


def _dp_shift_sum(arr: np.ndarray) -> np.ndarray:
    """One convolution step with the 2d unit steps (mass leaving the box
    is dropped; callers arrange boxes large enough that this is exact or
    provably irrelevant)."""
    new = np.zeros_like(arr)
    for ax in range(arr.ndim):
        lo = [slice(None)] * arr.ndim
        hi = [slice(None)] * arr.ndim
        lo[ax] = slice(0, -1)
        hi[ax] = slice(1, None)
        lo_t, hi_t = tuple(lo), tuple(hi)
        new[lo_t] += arr[hi_t]
        new[hi_t] += arr[lo_t]
    return new


def full_distribution_dp(d: int, n: int) -> LatticeDistribution:
    """Independent oracle: exact DP over the (2n+1)^d box.

    Starts with unit mass at the origin and convolves with the 2d unit
    steps n times; the result sums to (2d)^n.  Exactness is preserved by
    using a numpy object array of Python ints.
    """
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    _check_box(d, n)
    shape = (2 * n + 1,) * d if n > 0 else (1,) * d
    arr = np.zeros(shape, dtype=object)
    origin = tuple(s // 2 for s in shape)
    arr[origin] = 1
    for _ in range(n):
        arr = _dp_shift_sum(arr)
    counts: dict[tuple[int, ...], BigCount] = {}
    for idx in zip(*np.nonzero(arr)):
        point = tuple(int(i) - n for i in idx)
        counts[point] = int(arr[idx])
    return LatticeDistribution(d, n, counts)


def first_returns_dp(d: int, n: int) -> BigCount:
    """Independent oracle for B_{2n}: DP that zeroes the origin after each
    intermediate step, then reads the origin after step 2n.

    The box keeps coordinates in [-n, n]: a walk that leaves it cannot be
    back at the origin by step 2n, so dropping that mass is exact for the
    returned count.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    _check_box(d, n)
    shape = (2 * n + 1,) * d
    arr = np.zeros(shape, dtype=object)
    origin = (n,) * d
    arr[origin] = 1
    for t in range(1, 2 * n + 1):
        arr = _dp_shift_sum(arr)
        if t < 2 * n:
            arr[origin] = 0
    v = arr[origin]
    return int(v)


# ---------------------------------------------------------------------------
# Fast generators: P-recurrence forward iteration for d in {3, 4, 5}.
# O(N) big-integer steps instead of the O(d N^2) ladder; always uses exact
# division by the leading coefficient (which must divide -- anything else
# is a bug and raises).
# ---------------------------------------------------------------------------

def _iterate_p_recurrence(rec, seeds: list[BigCount], N: int) -> list[BigCount]:
    """Extend seeds to indices 0..N using sum_k P_k(n) u_{n+k} = 0."""
    r = rec.order
    vals = list(seeds)
    for n in range(0, N - r + 1):
        acc = 0
        for k in range(r):
            acc += int(rec.coefficients[k](n)) * vals[n + k]
        lead = int(rec.coefficients[r](n))
        q, rem = divmod(-acc, lead)
        if rem:
            raise ArithmeticError(
                "P-recurrence division not exact at n=%d" % n
            )
        vals.append(q)
    return vals


def x_sequence_fast(d: int, N: int) -> SequenceTable:
    """x-table via the known P-recurrences (d in {3,4,5}); falls back to
    the ladder otherwise."""
    from . import catalog

    if d not in (3, 4, 5) or N < 4:
        return x_sequence(d, N)
    rec = catalog.x_recurrence(d)
    seeds = list(x_sequence(d, rec.order - 1).values)
    return SequenceTable(d, "X", tuple(_iterate_p_recurrence(rec, seeds, N)))


def closed_walks_fast(d: int, N: int) -> SequenceTable:
    """A-table via the known P-recurrences (d in {3,4,5})."""
    from . import catalog

    if d not in (3, 4, 5) or N < 4:
        return closed_walks(d, N)
    rec = catalog.a_recurrence(d)
    seeds = list(closed_walks(d, rec.order - 1).values)
    return SequenceTable(d, "A", tuple(_iterate_p_recurrence(rec, seeds, N)))


def first_returns_fast(d: int, N: int) -> SequenceTable:
    """B-table with the A-values generated by the fast path."""
    if N < 1:
        raise ValueError("N must be >= 1")
    a = closed_walks_fast(d, N)
    return SequenceTable(d, "B", tuple(_first_returns_from_a(a.values)))
