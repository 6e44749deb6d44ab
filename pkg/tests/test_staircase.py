import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from downcore.exceptions import DomainError
from downcore.grids import downcore, staircase_boxset
from downcore.permutations import Permutation, avoids_all, enumerate_avoiders, parse_permutation
from downcore.staircase import (
    StaircaseEncoding,
    decode,
    encode,
    is_valid_132_encoding,
    iter_encodings,
    nonzero_count,
    staircase_boxes,
    staircase_downcore,
    staircase_to_cartesian,
)
from oracles import all_perms

P = parse_permutation
GOLDEN_ENC = StaircaseEncoding.from_rows([[2, 0, 1], [1, 0], [1]])


def brute_encode(perm):
    """Direct transcription of the box definition, checking every box and every entry."""
    n = len(perm)
    mins = [i for i in range(1, n + 1) if all(perm[j - 1] > perm[i - 1] for j in range(1, i))]
    a = len(mins)
    val = {0: n + 1, **{t: perm[mins[t - 1] - 1] for t in range(1, a + 1)}}
    pos = {**{t: mins[t - 1] for t in range(1, a + 1)}, a + 1: n + 1}
    counts = {}
    for i, j in staircase_boxes(a):
        counts[i, j] = sum(
            1
            for p in range(1, n + 1)
            if val[i] < perm[p - 1] < val[i - 1] and pos[j] < p < pos[j + 1]
        )
    return StaircaseEncoding.from_counts(a, counts)


def test_golden_58634127():
    enc = encode(P("58634127"))
    assert enc.size == 3
    assert enc.rows == ((2, 0, 1), (1, 0), (1,))
    assert enc == GOLDEN_ENC
    assert enc.render() == "2 0 1\n  1 0\n    1"


def test_decreasing_is_all_zero():
    enc = encode(Permutation.decreasing(5))
    assert enc.size == 5 and nonzero_count(enc) == 0


def test_12():
    enc = encode(P("12"))
    assert enc.to_json() == {"size": 1, "rows": [[1]]}
    assert decode(enc) == P("12")


def test_empty_rejected():
    with pytest.raises(DomainError):
        encode(Permutation())


@pytest.mark.parametrize("n", range(1, 8))
def test_encode_matches_definition_on_all_perms(n):
    for p in all_perms(n):
        assert encode(p) == brute_encode(p)


def test_total_counts_length():
    for p in all_perms(6):
        assert encode(p).total == 6


class TestDowncore:
    def test_small(self):
        assert staircase_downcore(1).edge_count() == 0
        g = staircase_downcore(2)
        assert len(g) == 3 and g.edge_count() == 0

    def test_size3(self):
        g = staircase_downcore(3)
        assert g.edges() == [((1, 2), (2, 3))]
        for corner in [(1, 1), (3, 3), (1, 3)]:
            assert g.degree(corner) == 0

    @pytest.mark.parametrize("a", range(1, 8))
    def test_against_edge_rule(self, a):
        g = staircase_downcore(a)
        boxes = staircase_boxes(a)
        assert list(g.vertices) == sorted(boxes)
        for p, q in combinations(boxes, 2):
            (i, j), (k, l) = p, q
            want = (i < k and j < l and k <= j) or (k < i and l < j and i <= l)
            assert g.has_edge(p, q) == want == g.has_edge(q, p)
        for v in boxes:
            assert not g.has_edge(v, v)
            if v[0] == v[1]:
                assert g.degree(v) == 0

    @pytest.mark.parametrize("a", range(1, 8))
    def test_isomorphic_to_cartesian_staircases(self, a):
        g = staircase_downcore(a)
        upper = downcore(staircase_boxset(a, "upper-right"))
        lower = downcore(staircase_boxset(a, "lower-left"))
        to_cart = {v: staircase_to_cartesian(v, a) for v in g.vertices}
        assert set(to_cart.values()) == set(upper.vertices)
        mapped = {frozenset((to_cart[p], to_cart[q])) for p, q in g.edges()}
        assert mapped == {frozenset(e) for e in upper.edges()}
        # anti-transpose carries the upper-right staircase onto the lower-left one
        flip = lambda b: (a + 1 - b[1], a + 1 - b[0])
        assert {frozenset(map(flip, e)) for e in upper.edges()} == {frozenset(e) for e in lower.edges()}

    def test_bad_size(self):
        with pytest.raises(DomainError):
            staircase_downcore(0)


class TestValidity:
    def test_examples(self):
        assert is_valid_132_encoding(StaircaseEncoding.from_rows([[0, 0, 0], [0, 0], [0]]))
        bad = StaircaseEncoding.from_counts(3, {(1, 2): 1, (2, 3): 2})
        assert not is_valid_132_encoding(bad)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_image_of_avoiders_is_valid_set(self, n):
        image = {encode(s) for s in enumerate_avoiders(n, [(1, 3, 2)])}
        for e in iter_encodings(n):
            assert (e in image) == is_valid_132_encoding(e)


class TestDecode:
    def test_all_zero(self):
        enc = StaircaseEncoding.from_counts(4, {})
        assert decode(enc) == Permutation.decreasing(4)

    def test_invalid_names_pair(self):
        bad = StaircaseEncoding.from_counts(3, {(1, 2): 1, (2, 3): 1})
        with pytest.raises(DomainError, match=r"\(1, 2\).*\(2, 3\)"):
            decode(bad)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_round_trip_on_avoiders(self, n):
        seen = {}
        for s in enumerate_avoiders(n, [(1, 3, 2)]):
            e = encode(s)
            assert e not in seen, "two avoiders share an encoding"
            seen[e] = s
            assert decode(e) == s

    @pytest.mark.parametrize("n", range(1, 9))
    def test_round_trip_on_valid_encodings(self, n):
        for e in iter_encodings(n):
            if is_valid_132_encoding(e):
                s = decode(e)
                assert avoids_all(s, [(1, 3, 2)])
                assert encode(s) == e

    def test_golden_decodes_to_avoider(self):
        # 58634127 contains 132; decoding yields the unique avoider sharing its encoding
        s = decode(GOLDEN_ENC)
        assert avoids_all(s, [(1, 3, 2)]) and encode(s) == GOLDEN_ENC


class TestEncodingObject:
    def test_json_round_trip(self):
        data = GOLDEN_ENC.to_json()
        assert data == {"size": 3, "rows": [[2, 0, 1], [1, 0], [1]]}
        assert StaircaseEncoding.from_json(json.dumps(data)) == GOLDEN_ENC

    def test_shape_checked(self):
        with pytest.raises(DomainError):
            StaircaseEncoding.from_rows([[1, 0], [1, 0]])
        with pytest.raises(DomainError):
            StaircaseEncoding.from_rows([[-1]])
        with pytest.raises(DomainError):
            StaircaseEncoding.from_json({"size": 2, "rows": [[1]]})

    def test_nonzero_count(self):
        assert nonzero_count(GOLDEN_ENC) == 4
        assert nonzero_count(encode(P("12"))) == 1
        assert nonzero_count(StaircaseEncoding.from_counts(3, {})) == 0

    def test_indexing(self):
        assert GOLDEN_ENC[1, 1] == 2 and GOLDEN_ENC[1, 3] == 1 and GOLDEN_ENC[3, 3] == 1
        with pytest.raises(KeyError):
            GOLDEN_ENC[2, 1]
        assert GOLDEN_ENC.row_sums() == [3, 1, 1]
        assert GOLDEN_ENC.column_sums() == [2, 1, 2]

    @given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))))
    def test_encode_is_deterministic_and_total(self, p):
        e = encode(p)
        assert e == encode(tuple(p)) and e.total == len(p)
