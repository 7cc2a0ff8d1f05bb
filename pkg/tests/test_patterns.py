"""
Tests for the deterministic structure tests and permutation multisegments.
"""

import itertools

from django.test import SimpleTestCase
from hypothesis import assume, given, settings

from components_app.exceptions import MultisegmentSyntaxError, PreconditionError
from components_app.multisegments import Segment, parse_multisegment
from components_app.patterns import (
    avoids_1324_2143,
    contains_pattern,
    find_unbalanced_witness,
    is_balanced,
    is_balanced_naive,
    is_ladder,
    is_regular,
    is_split,
    is_type_3412,
    is_type_4231,
    multisegment_of_permutation,
    parse_permutation,
    structure_tests,
)

from .strategies import multisegments

NONRIGID = "[4,5]+[2,4]+[3,3]+[1,2]"


class StructureTest(SimpleTestCase):

    def test_regular(self):
        self.assertTrue(is_regular(parse_multisegment(NONRIGID)))
        self.assertFalse(is_regular(parse_multisegment("[1,2]+[1,3]")))
        self.assertFalse(is_regular(parse_multisegment("[1,3]+[2,3]")))
        self.assertTrue(is_regular(parse_multisegment("0")))

    def test_ladder(self):
        self.assertTrue(is_ladder(parse_multisegment("[1,4]+[3,6]+[4,8]")))
        self.assertTrue(is_ladder(parse_multisegment("[1,1]+[3,4]+[4,7]", 8)))
        self.assertFalse(is_ladder(parse_multisegment("[1,4]+[2,3]")))

    def test_split(self):
        # [1,1] and [3,3] are not linked
        self.assertTrue(is_split(parse_multisegment("[1,1]+[3,3]")))
        self.assertFalse(is_split(parse_multisegment("[1,2]+[2,3]")))
        self.assertFalse(is_split(parse_multisegment("[1,2]")))

    def test_structure_flags(self):
        flags = structure_tests(parse_multisegment(NONRIGID))
        self.assertTrue(flags.regular)
        self.assertFalse(flags.balanced)
        self.assertFalse(flags.ladder)
        self.assertIsNotNone(flags.witness)

    def test_structure_flags_irregular(self):
        flags = structure_tests(parse_multisegment("[1,2]+[1,2]"))
        self.assertIsNone(flags.balanced)
        self.assertIsNone(flags.prime)


class BalanceTest(SimpleTestCase):
    """Pattern witnesses decide balance for regular multisegments."""

    def test_nonrigid_witness(self):
        witness = find_unbalanced_witness(parse_multisegment(NONRIGID))
        self.assertEqual(witness.kind, "4231")
        self.assertEqual(
            witness.segments,
            (Segment(2, 4), Segment(4, 5), Segment(3, 3), Segment(1, 2)),
        )
        self.assertTrue(is_type_4231(witness.segments))

    def test_three_segments_are_balanced(self):
        self.assertTrue(is_balanced(parse_multisegment("[1,4]+[2,3]+[3,5]")))

    def test_ladder_is_balanced(self):
        self.assertTrue(is_balanced(parse_multisegment("[1,4]+[3,6]+[4,8]")))

    def test_requires_regular(self):
        with self.assertRaises(PreconditionError):
            is_balanced(parse_multisegment("[1,2]+[1,3]"))

    def test_short_tuples_never_match(self):
        segments = (Segment(2, 4), Segment(4, 5), Segment(3, 3))
        self.assertFalse(is_type_4231(segments))
        self.assertFalse(is_type_3412(segments))

    def test_lm_multisegments(self):
        """The permutation multisegments of S4 are balanced exactly when they avoid both patterns."""
        for w in itertools.permutations(range(1, 5)):
            with self.subTest(w=w):
                self.assertEqual(is_balanced(multisegment_of_permutation(w)), avoids_1324_2143(w))

    @given(multisegments(max_n=6, max_segments=5))
    @settings(max_examples=150, deadline=None)
    def test_search_matches_naive_scan(self, m):
        assume(is_regular(m))
        witness = find_unbalanced_witness(m)
        self.assertEqual(witness is None, is_balanced_naive(m))
        if witness is not None:
            checker = is_type_4231 if witness.kind == "4231" else is_type_3412
            self.assertTrue(checker(witness.segments))


class PermutationTest(SimpleTestCase):

    def test_multisegment_of_permutation(self):
        m = multisegment_of_permutation((1, 3, 2, 4))
        self.assertEqual(m.n, 7)
        self.assertEqual(m, parse_multisegment("[1,4]+[2,6]+[3,5]+[4,7]", 7))

    def test_avoiders_in_s4(self):
        count = sum(1 for w in itertools.permutations(range(1, 5)) if avoids_1324_2143(w))
        self.assertEqual(count, 22)

    def test_contains_pattern(self):
        self.assertTrue(contains_pattern((2, 1, 4, 3), (2, 1, 4, 3)))
        self.assertTrue(contains_pattern((1, 4, 3, 5, 2), (1, 3, 2, 4)))
        self.assertFalse(contains_pattern((4, 3, 2, 1), (1, 2)))

    def test_parse_permutation(self):
        self.assertEqual(parse_permutation("1324"), (1, 3, 2, 4))
        self.assertEqual(parse_permutation("1, 3, 2, 4"), (1, 3, 2, 4))
        with self.assertRaises(MultisegmentSyntaxError):
            parse_permutation("13x4")
        with self.assertRaises(PreconditionError):
            parse_permutation("1224")
