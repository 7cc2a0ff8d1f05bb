"""
Tests for segments, multisegments and their text codec.
"""

from django.test import SimpleTestCase
from hypothesis import given, settings

from components_app.exceptions import MultisegmentSyntaxError, PreconditionError
from components_app.multisegments import (
    Multisegment,
    Segment,
    concatenation_applies,
    hom_vanishes,
    index_sets,
    parse_multisegment,
    quiver_dims,
)

from .strategies import multisegments

NONRIGID = "[4,5]+[2,4]+[3,3]+[1,2]"


class SegmentTest(SimpleTestCase):
    """Linking order, shifts and duality on single segments."""

    def test_precedes(self):
        self.assertTrue(Segment(1, 2).precedes(Segment(2, 3)))
        self.assertTrue(Segment(1, 2).precedes(Segment(3, 4)))
        self.assertFalse(Segment(1, 2).precedes(Segment(4, 5)))
        self.assertFalse(Segment(2, 3).precedes(Segment(1, 2)))
        self.assertFalse(Segment(1, 3).precedes(Segment(2, 3)))

    def test_precedes_is_irreflexive(self):
        self.assertFalse(Segment(2, 4).precedes(Segment(2, 4)))

    def test_shifts(self):
        self.assertEqual(Segment(2, 3).shifted(), Segment(3, 4))
        self.assertIsNone(Segment(2, 3).right_shift(3))
        self.assertEqual(Segment(2, 3).truncate(), Segment(3, 3))
        self.assertIsNone(Segment(3, 3).truncate())

    def test_dual(self):
        self.assertEqual(Segment(4, 5).dual(5), Segment(1, 2))

    def test_rejects_reversed_segment(self):
        with self.assertRaises(MultisegmentSyntaxError):
            Segment(3, 2)


class MultisegmentCodecTest(SimpleTestCase):
    """Parsing and canonical formatting."""

    def test_canonical_order(self):
        m = parse_multisegment("[1,4]+[3,6]+[4,8]")
        self.assertEqual(m.to_text(), "[4,8]+[3,6]+[1,4]")
        self.assertEqual(m.n, 8)

    def test_whitespace_and_repeats(self):
        m = parse_multisegment(" [1,2] + [1,2]+[3,3] ")
        self.assertEqual(m.multiplicity(Segment(1, 2)), 2)
        self.assertEqual(len(m), 3)

    def test_empty(self):
        m = parse_multisegment("0", 4)
        self.assertTrue(m.is_empty())
        self.assertEqual(m.n, 4)
        self.assertEqual(m.to_text(), "0")

    def test_explicit_n(self):
        self.assertEqual(parse_multisegment("[4,5]", 7).n, 7)

    def test_malformed(self):
        for text in ("", "[1,2", "[1,2]+", "[a,b]", "[1,2][3,4]", "1,2"):
            with self.subTest(text=text):
                with self.assertRaises(MultisegmentSyntaxError):
                    parse_multisegment(text)

    def test_out_of_range(self):
        with self.assertRaises(MultisegmentSyntaxError):
            parse_multisegment("[1,6]", 5)
        with self.assertRaises(MultisegmentSyntaxError):
            parse_multisegment("[0,2]")

    def test_json(self):
        m = parse_multisegment(NONRIGID)
        self.assertEqual(Multisegment.from_json(m.to_json()), m)

    @given(multisegments(max_n=6, max_segments=4))
    @settings(max_examples=100)
    def test_text_is_canonical(self, m):
        self.assertEqual(parse_multisegment(m.to_text(), m.n), m)


class MultisegmentOperationsTest(SimpleTestCase):

    def test_grdim(self):
        m = parse_multisegment(NONRIGID)
        self.assertEqual(m.grdim().counts, (1, 2, 2, 2, 1))

    def test_dual_is_involutive(self):
        m = parse_multisegment("[1,1]+[3,4]+[4,7]", 8)
        self.assertEqual(m.dual().dual(), m)
        self.assertEqual(m.dual().grdim(), m.grdim().reversed())

    def test_sum_requires_same_ambient(self):
        with self.assertRaises(PreconditionError):
            parse_multisegment("[1,2]", 3) + parse_multisegment("[1,2]", 4)

    def test_without(self):
        m = parse_multisegment("[1,2]+[2,3]")
        self.assertEqual(m.without(Segment(2, 3)).to_text(), "[1,2]")
        with self.assertRaises(PreconditionError):
            m.without(Segment(1, 3))


class IndexSetsTest(SimpleTestCase):
    """U and V index sets and the closed-form quiver dimensions."""

    def test_nonrigid_self_pairs(self):
        m = parse_multisegment(NONRIGID)
        self.assertEqual(len(index_sets(m, m).U), 4)

    def test_linked_segments(self):
        lower = parse_multisegment("[1,2]", 3)
        upper = parse_multisegment("[2,3]", 3)
        sets = index_sets(lower, upper)
        self.assertEqual((sets.U, sets.V), ((), ()))
        sets = index_sets(upper, lower)
        self.assertEqual(sets.U, ((0, 0),))
        self.assertEqual(sets.V, ((0, 0),))

    def test_single_segment(self):
        m = parse_multisegment("[2,4]", 5)
        sets = index_sets(m, m)
        self.assertEqual(sets.U, ())
        self.assertEqual(sets.V, ((0, 0),))

    def test_quiver_dims(self):
        lower = parse_multisegment("[1,2]", 3)
        upper = parse_multisegment("[2,3]", 3)
        self.assertEqual(quiver_dims(lower, upper).ext, 1)
        self.assertEqual(quiver_dims(upper, lower).ext, 0)
        self.assertEqual(quiver_dims(upper, lower).hom, 1)

    def test_concatenation(self):
        lower = parse_multisegment("[1,2]", 4)
        upper = parse_multisegment("[3,4]", 4)
        self.assertTrue(concatenation_applies(upper, lower))
        self.assertFalse(concatenation_applies(lower, upper))

    def test_hom_vanishes(self):
        self.assertTrue(hom_vanishes(parse_multisegment("[1,1]", 3), parse_multisegment("[3,3]", 3)))
        self.assertFalse(hom_vanishes(parse_multisegment("[2,3]", 3), parse_multisegment("[1,2]", 3)))
