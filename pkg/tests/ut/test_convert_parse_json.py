from taserial import fromjsonstr
from taserial.convert import ConversionError
from tests.ut import base_convert


class TestParseObjectJSON(base_convert.TestJSON):

    def test_json_object(self):
        record = '{' \
            '"record": "footer", ' \
            '"outcome": "terminated", ' \
            '"steps": 12, ' \
            '"final_state": [[["x", []], 3]], ' \
            '"truncated": null, ' \
            '"serializable": true' \
            '}'
        o = fromjsonstr(record)
        self.assertEqual(o.record, 'footer')
        self.assertEqual(o.outcome, 'terminated')
        self.assertEqual(o.steps, 12)
        self.assertEqual(o.final_state, [[['x', []], 3]])
        self.assertEqual(o.truncated, None)
        self.assertEqual(o.serializable, True)

    def test_json_array(self):
        events = '['\
            '{"kind": "LockGrant", "machine": "A", "origin": null}, ' \
            '{"kind": "Commit", "machine": "B", "origin": 4}' \
            ']'
        o = fromjsonstr(events)
        self.assertEqual(o[0].kind, 'LockGrant')
        self.assertEqual(o[0].machine, 'A')
        self.assertIsNone(o[0].origin)
        self.assertEqual(o[1].kind, 'Commit')
        self.assertEqual(o[1].origin, 4)

    def test_round_trip_object(self):
        o = fromjsonstr('{"config": {"policies": {"victim": "all"}}}')
        self.assertEqual(base_convert.TestJSON._tojsonstr(o), '{"config":{"policies":{"victim":"all"}}}')

    def test_invalid_json(self):
        with self.assertRaises(ConversionError):
            fromjsonstr('{"record": ')

    def test_empty(self):
        self.assertEqual(fromjsonstr(''), '')
