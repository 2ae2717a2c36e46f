import math

import pytest

from palprefix.errors import DecodeError, ResourceLimitError
from palprefix.family import decode, family, family_size, gen_family, palpref_profile, size_lower_bound_bits
from palprefix.oracle import dp_prefix_palindromic_lengths

CASES = [(1, 1), (2, 1), (1, 2), (2, 2)]


def test_base_family():
    assert list(gen_family(1, 1)) == ["ab" + "b" * 6 + "a", "aabbbbbaa", "aaabbbaaa", "aaaabaaaa"]


def test_sizes():
    assert all(len(x) == 27 for x in family(2, 1))
    assert family_size(1, 2) == family_size(1, 1) ** 2 == 16
    assert family_size(2, 2) == family_size(1, 2) * family_size(2, 1)


@pytest.mark.parametrize("t,s", CASES + [(3, 1), (1, 3)])
def test_members_are_palindromes_of_the_right_length(t, s):
    for x in family(t, s):
        assert x == x[::-1]
        assert len(x) == 3 ** (t + s)


@pytest.mark.parametrize("t,s", CASES)
def test_size_lower_bound(t, s):
    assert math.log2(family_size(t, s)) >= size_lower_bound_bits(t, s)


def test_profile_example():
    assert palpref_profile("a" + "b" * 7 + "a", 1) == {(1, 1), (9, 1)}


def test_profile_matches_dp():
    x = family(1, 2)[5]
    pl = dp_prefix_palindromic_lengths(x)
    assert palpref_profile(x, 2) == {(i, pl[i]) for i in range(1, len(x) + 1) if pl[i] <= 2}
    assert (1, 1) in palpref_profile(x, 2)


@pytest.mark.parametrize("t,s", CASES)
def test_profiles_injective_and_decodable(t, s):
    members = family(t, s)
    profiles = [palpref_profile(x, s) for x in members]
    assert len(set(profiles)) == len(members)
    for x, p in zip(members, profiles):
        assert decode(p, t, s) == x


@pytest.mark.parametrize("t,s", CASES)
def test_corrupted_profiles_are_rejected(t, s):
    for x in family(t, s)[:6]:
        p = sorted(palpref_profile(x, s))
        for drop in range(len(p)):
            broken = p[:drop] + p[drop + 1:]
            try:
                got = decode(broken, t, s)
            except DecodeError:
                continue
            assert palpref_profile(got, s) == set(broken)


def test_size_cap():
    with pytest.raises(ResourceLimitError):
        list(gen_family(5, 5))


def test_lexicographic_order():
    m = family(1, 2)
    assert m == tuple(sorted(m)) or m == tuple(u + v + u for u in family(1, 1) for v in family(1, 1, 1))
