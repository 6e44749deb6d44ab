from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from downcore.exceptions import (
    PermutationParseError,
    PermutationValidationError,
    ResourceLimitError,
)
from downcore.enumeration import catalan
from downcore.permutations import (
    Permutation,
    avoids_all,
    contains_pattern,
    enumerate_avoiders,
    extremal_profile,
    is_123_avoiding_fast,
    is_skew_decomposable,
    parse_permutation,
    skew_components,
    skew_sum,
    standardize,
)
from oracles import all_perms, naive_contains

P = parse_permutation


@st.composite
def perms(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    return Permutation(draw(st.permutations(range(1, n + 1))))


class TestParse:
    def test_digit_string(self):
        assert P("76285143") == Permutation([7, 6, 2, 8, 5, 1, 4, 3])

    def test_empty(self):
        assert P("") == Permutation()
        assert len(P("   ")) == 0

    def test_separated_multi_digit(self):
        p = P("10 2 1 3 4 5 6 7 8 9")
        assert len(p) == 10 and p[0] == 10

    def test_commas_and_brackets(self):
        assert P("[3, 1, 2]") == Permutation([3, 1, 2])

    @pytest.mark.parametrize("text,bad", [("1 2 2", "2"), ("1 3", "2"), ("2 3 4", "1")])
    def test_not_a_bijection_names_value(self, text, bad):
        with pytest.raises(PermutationValidationError, match=bad):
            P(text)

    def test_ambiguous_contiguous(self):
        with pytest.raises(PermutationParseError):
            P("1023456789")

    def test_garbage(self):
        with pytest.raises(PermutationParseError):
            P("12a")

    def test_constructor_validates(self):
        with pytest.raises(PermutationValidationError):
            Permutation([1, 1])
        with pytest.raises(PermutationValidationError):
            Permutation([0, 1])

    def test_json_and_str(self):
        assert P("312").to_json() == [3, 1, 2]
        assert str(P("312")) == "312"
        assert str(P("10 2 1 3 4 5 6 7 8 9")).startswith("10 2")


class TestContainment:
    def test_examples(self):
        assert not contains_pattern(P("641532"), P("123"))
        assert contains_pattern(P("58634127"), P("132"))
        assert naive_contains(P("58634127"), P("132"))

    def test_self_and_empty(self):
        p = P("2413")
        assert contains_pattern(p, p)
        assert contains_pattern(p, Permutation())
        assert contains_pattern(Permutation(), Permutation())
        assert not contains_pattern(Permutation(), P("1"))

    def test_avoids_all(self):
        assert not avoids_all(P("2143"), [P("123"), P("2143")])
        assert avoids_all(P("641532"), [P("123")])
        assert avoids_all(P("76285143"), [P("123")])
        assert not naive_contains(P("76285143"), P("123"))

    @pytest.mark.parametrize("n", range(0, 8))
    def test_agrees_with_naive_all_patterns(self, n):
        patterns = [q for k in range(0, 5) for q in all_perms(k)]
        for p in all_perms(n):
            for q in patterns:
                assert contains_pattern(p, q) == naive_contains(p, q), (p, q)

    @given(perms(max_n=10), st.integers(1, 5).flatmap(lambda k: st.permutations(range(1, k + 1))))
    def test_random_agrees_with_naive(self, p, q):
        assert contains_pattern(p, q) == naive_contains(p, q)


class TestExtremal:
    def test_worked_example(self):
        p = P("536241")
        prof = extremal_profile(p)
        assert prof.ltr_min_values(p) == (5, 3, 2, 1)
        assert prof.rtl_max_values(p) == (6, 4, 1)

    def test_76285143(self):
        p = P("76285143")
        prof = extremal_profile(p)
        assert prof.ltr_min_values(p) == (7, 6, 2, 1)
        assert prof.rtl_max_values(p) == (8, 5, 4, 3)

    def test_identity(self):
        prof = extremal_profile(Permutation.identity(6))
        assert prof.ltr_min_positions == (1,)
        assert prof.rtl_max_positions == (6,)

    @given(perms())
    def test_invariants(self, p):
        prof = extremal_profile(p)
        if len(p):
            assert prof.ltr_min_positions[0] == 1
            assert prof.rtl_max_positions[-1] == len(p)
        mins = prof.ltr_min_values(p)
        maxs = prof.rtl_max_values(p)
        assert all(a > b for a, b in zip(mins, mins[1:]))
        assert all(a > b for a, b in zip(maxs, maxs[1:]))
        covered = set(prof.ltr_min_positions) | set(prof.rtl_max_positions)
        assert (covered == set(range(1, len(p) + 1))) == is_123_avoiding_fast(p)


class TestFast123:
    def test_examples(self):
        assert is_123_avoiding_fast(P("641532"))
        assert is_123_avoiding_fast(Permutation())
        # every entry of 536241 is an extremum, and indeed it has no 123
        assert is_123_avoiding_fast(P("536241"))
        assert not naive_contains(P("536241"), (1, 2, 3))
        assert not is_123_avoiding_fast(P("1324"))

    @pytest.mark.parametrize("n", range(0, 9))
    def test_equivalence_exhaustive(self, n):
        for p in permutations(range(1, n + 1)):
            assert is_123_avoiding_fast(p) == (not contains_pattern(p, (1, 2, 3)))


class TestEnumeration:
    def test_av3_123(self):
        got = list(enumerate_avoiders(3, [P("123")]))
        assert len(got) == 5
        assert got == [p for p in all_perms(3) if not naive_contains(p, (1, 2, 3))]

    def test_empty(self):
        assert list(enumerate_avoiders(0, [P("123")])) == [Permutation()]
        assert list(enumerate_avoiders(0, [])) == [Permutation()]

    @pytest.mark.parametrize("n", range(0, 10))
    def test_catalan_counts(self, n):
        assert sum(1 for _ in enumerate_avoiders(n, [P("123")])) == catalan(n)
        assert sum(1 for _ in enumerate_avoiders(n, [P("132")])) == catalan(n)

    @pytest.mark.parametrize("patterns", [["123"], ["132"], ["2143"], ["123", "2143"], ["321", "12"]])
    def test_matches_filter_in_lex_order(self, patterns):
        pats = [P(s) for s in patterns]
        for n in range(7):
            expected = [p for p in all_perms(n) if not any(naive_contains(p, q) for q in pats)]
            assert list(enumerate_avoiders(n, pats)) == expected

    def test_bound(self):
        with pytest.raises(ResourceLimitError):
            list(enumerate_avoiders(13, [P("123")]))
        with pytest.raises(ResourceLimitError):
            next(enumerate_avoiders(5, [P("123")], bound=4))

    def test_no_patterns_gives_everything(self):
        assert list(enumerate_avoiders(4, [])) == all_perms(4)


class TestSkew:
    def test_examples(self):
        assert not is_skew_decomposable(P("2143"))
        assert is_skew_decomposable(P("4312"))
        assert not is_skew_decomposable(P("1"))
        assert not is_skew_decomposable(Permutation())

    def test_components(self):
        # cuts after 4 and after 3: the maximal split has three blocks
        assert skew_components(P("4312")) == [P("1"), P("1"), P("12")]
        assert skew_components(P("3412")) == [P("12"), P("12")]
        assert skew_components(P("2143")) == [P("2143")]
        assert skew_components(Permutation()) == []

    @given(perms())
    def test_components_reassemble(self, p):
        blocks = skew_components(p)
        assert skew_sum(blocks) == p
        assert all(not is_skew_decomposable(b) for b in blocks)

    def test_standardize(self):
        assert standardize([7, 2, 9]) == P("213")
