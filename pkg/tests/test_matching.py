"""
Tests for the bipartite matching criterion and the quasi-lamina hom count.
"""

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from components_app.engine import TrialConfig, hom_pi, star
from components_app.exceptions import PreconditionError
from components_app.matching import MatchingGraph, hom_pi_lamina, matching_condition
from components_app.multisegments import parse_multisegment

from .strategies import ladders, multisegments

CONFIG = TrialConfig(trials=3, seed=11)


class MatchingGraphTest(SimpleTestCase):

    def test_edges(self):
        m = parse_multisegment("[1,2]+[2,3]")
        graph = MatchingGraph(m, m)
        self.assertEqual(graph.left, [("U", (0, 1))])
        self.assertEqual(len(graph.right), 3)
        self.assertEqual(
            graph.edges,
            [(("U", (0, 1)), ("V", (0, 0))), (("U", (0, 1)), ("V", (1, 1)))],
        )

    def test_empty_left_side(self):
        graph = MatchingGraph(parse_multisegment("[1,2]", 3), parse_multisegment("[2,3]", 3))
        self.assertEqual(graph.maximum_matching(), {})


class MatchingConditionTest(SimpleTestCase):

    def test_ladder_with_itself(self):
        m = parse_multisegment("[1,2]+[2,3]")
        result = matching_condition(m, m)
        self.assertTrue(result.holds)
        self.assertEqual(result.to_json(), {"holds": True, "max_matching": 1, "u_size": 1, "v_size": 3})
        self.assertEqual(hom_pi_lamina(m, m), 2)
        self.assertEqual(hom_pi(m, m, CONFIG).value, 2)

    def test_linked_segments(self):
        upper, lower = parse_multisegment("[2,3]", 3), parse_multisegment("[1,2]", 3)
        self.assertFalse(matching_condition(upper, lower).holds)
        self.assertTrue(matching_condition(lower, upper).holds)
        self.assertEqual(hom_pi_lamina(upper, lower), 1)

    def test_ladder_pair_does_not_concatenate(self):
        m1 = parse_multisegment("[1,1]+[3,4]+[4,7]", 8)
        m2 = parse_multisegment("[2,4]+[5,6]+[8,8]", 8)
        self.assertFalse(matching_condition(m2, m1).holds)

    def test_lamina_requires_a_ladder(self):
        m = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]")
        with self.assertRaises(PreconditionError):
            hom_pi_lamina(m, m)


class LaminaAgreementTest(SimpleTestCase):
    """Against a ladder, the matching decides concatenation and gives the hom."""

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_against_randomized_engine(self, data):
        ladder = data.draw(ladders(4, max_segments=3))
        other = data.draw(multisegments(n=4, max_segments=3))
        m, k = (ladder, other) if data.draw(st.booleans()) else (other, ladder)
        self.assertEqual(matching_condition(k, m).holds, star(m, k, CONFIG).value == m + k)
        self.assertEqual(hom_pi_lamina(m, k), hom_pi(m, k, CONFIG).value)
