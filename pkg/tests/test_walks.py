"""Walk enumeration: sequences, endpoint distributions, layers, DP oracles.

The brute-force oracle enumerates every (2d)^L walk explicitly; all
formula- and DP-based counters must agree with it on small cases.  The
table literals are frozen here independently of the package's embedded
fixtures.
"""

import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lattice_returns as lr
from lattice_returns.errors import CapacityError

# ---------------------------------------------------------------------------
# oracle: explicit enumeration of all (2d)^L walks
# ---------------------------------------------------------------------------


def brute_endpoints(d, length):
    """Counter mapping endpoint -> number of length-`length` walks."""
    steps = []
    for axis in range(d):
        for sign in (1, -1):
            e = [0] * d
            e[axis] = sign
            steps.append(tuple(e))
    counts = Counter()
    for path in itertools.product(steps, repeat=length):
        pos = tuple(sum(c) for c in zip(*path)) if path else (0,) * d
        counts[pos] += 1
    return counts


def brute_first_returns(d, length):
    """Number of length-`length` walks touching the origin only at both ends."""
    steps = []
    for axis in range(d):
        for sign in (1, -1):
            e = [0] * d
            e[axis] = sign
            steps.append(tuple(e))
    origin = (0,) * d
    total = 0
    for path in itertools.product(steps, repeat=length):
        pos = [0] * d
        ok = True
        for i, s in enumerate(path):
            for a in range(d):
                pos[a] += s[a]
            if tuple(pos) == origin and i < length - 1:
                ok = False
                break
        if ok and tuple(pos) == origin:
            total += 1
    return total


# frozen table: first eight terms of A and B for d = 1..4 (independent
# copy; the same numbers appear in OEIS A000984/A284016, A002894/A054474,
# A002896/A049037, A039699/A359801)
TABLE_A = {
    1: (2, 6, 20, 70, 252, 924, 3432, 12870),
    2: (4, 36, 400, 4900, 63504, 853776, 11778624, 165636900),
    3: (6, 90, 1860, 44730, 1172556, 32496156, 936369720, 27770358330),
    4: (8, 168, 5120, 190120, 7939008, 357713664, 16993726464, 839358285480),
}
TABLE_B = {
    1: (2, 2, 4, 10, 28, 84, 264, 858),
    2: (4, 20, 176, 1876, 22064, 275568, 3584064, 47995476),
    3: (6, 54, 996, 22734, 577692, 15680628, 445162392, 13055851998),
    4: (8, 104, 2944, 108136, 4525888, 204981888, 9792786432, 486323201640),
}


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_closed_walks_match_frozen_table(d):
    table = lr.closed_walks(d, 8)
    assert tuple(table.value(n) for n in range(1, 9)) == TABLE_A[d]
    assert table.value(0) == 1


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_first_returns_match_frozen_table(d):
    table = lr.first_returns(d, 8)
    assert tuple(table.value(n) for n in range(1, 9)) == TABLE_B[d]


def test_closed_walks_match_brute_force():
    for d, n in [(1, 4), (2, 3), (3, 2)]:
        origin = brute_endpoints(d, 2 * n)[(0,) * d]
        assert lr.closed_walks(d, n).value(n) == origin


def test_first_returns_match_brute_force():
    assert brute_first_returns(1, 6) == TABLE_B[1][2]
    assert brute_first_returns(2, 4) == TABLE_B[2][1]
    assert brute_first_returns(3, 4) == TABLE_B[3][1]


def test_x_sequence_small_dimensions():
    assert lr.x_sequence(1, 6).values == (1,) * 7
    # d = 2: central binomials
    assert lr.x_sequence(2, 6).values == (1, 2, 6, 20, 70, 252, 924)


def test_x_sequence_d5_frozen():
    # ladder values verified by hand: x_3 = 1 + 9*4 + 9*28 + 256 = 545, etc.
    assert lr.x_sequence(5, 5).values == (1, 5, 45, 545, 7885, 127905)


def test_closed_walks_d5_frozen():
    # A_{2n} = C(2n, n) * x_n
    assert lr.closed_walks(5, 4).values == (1, 10, 270, 10900, 551950)


def test_x_vs_closed_walks_relation():
    from lattice_returns.kernel import binomial

    for d in (3, 4):
        xs = lr.x_sequence(d, 20)
        As = lr.closed_walks(d, 20)
        for n in range(21):
            assert As.value(n) == binomial(2 * n, n) * xs.value(n)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_fast_paths_agree_with_ladder(d):
    assert lr.x_sequence_fast(d, 40).values == lr.x_sequence(d, 40).values
    assert lr.closed_walks_fast(d, 40).values == lr.closed_walks(d, 40).values
    assert lr.first_returns_fast(d, 25).values == lr.first_returns(d, 25).values


def test_first_return_closed_form_1d():
    b1 = lr.first_returns(1, 30)
    for n in range(1, 31):
        assert lr.first_return_closed_form_1d(n) == b1.value(n)


def test_first_returns_convolution_identity():
    # B_{2n} = A_{2n} - sum_{k=1}^{n-1} B_{2k} A_{2(n-k)}
    d = 3
    A = lr.closed_walks(d, 12)
    B = lr.first_returns(d, 12)
    for n in range(2, 13):
        acc = sum(B.value(k) * A.value(n - k) for k in range(1, n))
        assert B.value(n) == A.value(n) - acc


# ---------------------------------------------------------------------------
# distributions, endpoint formulas, layers
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d,length", [(1, 7), (2, 5), (3, 4)])
def test_dp_distribution_matches_brute_force(d, length):
    brute = brute_endpoints(d, length)
    dp = lr.full_distribution_dp(d, length)
    assert dp.counts == dict(brute)
    assert dp.total() == (2 * d) ** length


@pytest.mark.parametrize("d,length", [(2, 6), (3, 5), (4, 4)])
def test_formula_distribution_matches_dp(d, length):
    dp = lr.full_distribution_dp(d, length)
    f = lr.distribution_formula(d, length)
    assert dp.counts == f.counts


def test_endpoint_count_2d_against_brute_force():
    brute = brute_endpoints(2, 6)
    for k in range(-7, 8):
        for l in range(-7, 8):
            assert lr.endpoint_count_2d(6, k, l) == brute.get((k, l), 0)


def test_endpoint_count_2d_parity_and_range():
    assert lr.endpoint_count_2d(4, 1, 0) == 0  # parity mismatch
    assert lr.endpoint_count_2d(4, 5, 0) == 0  # out of reach
    assert lr.endpoint_count_2d(3, 1, 0) == 9


def test_tau_entry():
    from lattice_returns.kernel import binomial

    for n in range(1, 7):
        for i in range(1, n + 2):
            for j in range(1, i + 1):
                assert lr.tau_entry(n, i, j) == binomial(n, i - 1) * binomial(i - 1, j - 1)
    with pytest.raises(ValueError):
        lr.tau_entry(3, 5, 1)
    with pytest.raises(ValueError):
        lr.tau_entry(3, 2, 3)


@pytest.mark.parametrize("d,n", [(2, 5), (3, 4), (4, 3)])
def test_layers_tile_the_dp_distribution(d, n):
    dp = lr.full_distribution_dp(d, n)
    seen = 0
    for h in range(-n, n + 1):
        lay = lr.layer(d, n, h)
        assert lay.dimension == d and lay.height == h and lay.steps == n
        for point, count in lay.counts.sorted_items():
            assert dp.at(point + (h,)) == count
            seen += count
    assert seen == dp.total()


def test_layer_range_errors():
    with pytest.raises(ValueError):
        lr.layer(1, 3, 0)
    with pytest.raises(ValueError):
        lr.layer(3, 2, 3)
    with pytest.raises(ValueError):
        lr.layer(3, -1, 0)


def test_first_returns_dp_matches_convolution():
    for d in (1, 2, 3):
        table = lr.first_returns(d, 4)
        for n in range(1, 5):
            assert lr.first_returns_dp(d, n) == table.value(n)


def test_capacity_guards():
    with pytest.raises(CapacityError):
        lr.full_distribution_dp(5, 30)  # 61^5 > 10^8 cells
    with pytest.raises(CapacityError):
        lr.first_returns_dp(4, 60)


# ---------------------------------------------------------------------------
# table container behaviour
# ---------------------------------------------------------------------------


def test_sequence_table_offsets():
    a = lr.closed_walks(2, 5)
    b = lr.first_returns(2, 5)
    assert a.offset == 0 and b.offset == 1
    assert a.n_max == 5 and b.n_max == 5
    assert list(a.iter_indexed())[0] == (0, 1)
    assert list(b.iter_indexed())[0] == (1, 4)


def test_sequence_table_json_uses_strings():
    obj = lr.closed_walks(4, 8).to_json_obj()
    assert obj["kind"] == "A" and obj["d"] == 4
    assert obj["values"][-1] == "839358285480"
    assert all(isinstance(v, str) for v in obj["values"])


@given(st.integers(1, 4), st.integers(0, 12))
@settings(max_examples=25, deadline=None)
def test_distribution_total_is_power(d, n):
    f = lr.distribution_formula(d, n)
    assert f.total() == (2 * d) ** n


@given(st.integers(1, 3), st.integers(0, 8))
@settings(max_examples=20, deadline=None)
def test_distribution_symmetry(d, n):
    f = lr.distribution_formula(d, n)
    for point, count in f.sorted_items():
        mirrored = tuple(-c for c in point)
        assert f.at(mirrored) == count
        for perm in itertools.permutations(point):
            assert f.at(tuple(perm)) == count
