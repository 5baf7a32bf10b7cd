import json

from taserial.common import Object, layer
from tests.ut import base


class TestCommonObject(base.BaseTest):

    def test_str(self):
        o = Object()
        o.machine = 'A'
        object_str_json = json.loads(str(o))
        self.assertEqual(object_str_json['machine'], o.machine)

    def test_equality(self):
        left, right = Object(), Object()
        left.seed = right.seed = 7
        self.assertEqual(left, right)
        right.seed = 8
        self.assertNotEqual(left, right)

    def test_layer_later_wins(self):
        self.assertEqual(layer(dict(seed=0, max_steps=200), dict(seed=7)), dict(seed=7, max_steps=200))
        self.assertEqual(layer(None, dict(seed=7), None), dict(seed=7))

    def test_layer_skips_unset(self):
        self.assertEqual(layer(dict(seed=3, max_steps=200), dict(seed=None, max_steps=10)), dict(seed=3, max_steps=10))
