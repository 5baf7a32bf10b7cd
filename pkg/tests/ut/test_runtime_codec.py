import os
import tempfile

from taserial.asm.state import UpdateSet
from taserial.asm.values import FALSE, TRUE, UNDEF, Symbol
from taserial.convert import fromjsonstr, tojsonstr
from taserial.exception import MalformedTrace
from taserial.runtime import codec
from taserial.txctl.types import LockPair
from tests.ut import base_asm
from tests.ut.base import loc


class TestRuntimeCodec(base_asm.BaseRunTest):

    def setUp(self):
        super().setUp()
        self._trace = self.run_text(base_asm.DEADLOCK, seed=4)
        self._text = codec.dumps(self._trace)

    def test_values(self):
        for value in (0, -7, TRUE, FALSE, UNDEF, Symbol('red')):
            self.assertEqual(codec.decode_value(codec.encode_value(value)), value)
        self.assertIs(codec.encode_value(TRUE), True)
        self.assertIsNone(codec.encode_value(UNDEF))

    def test_updates_sorted(self):
        updates = UpdateSet([(loc('y'), 1), (loc('f', 2), TRUE), (loc('f', 1), Symbol('a'))])
        self.assertEqual(codec.encode_updates(updates), [[['f', [1]], 'a'], [['f', [2]], True], [['y', []], 1]])
        self.assertEqual(codec.decode_updates(codec.encode_updates(updates)), updates)

    def test_locks(self):
        locks = LockPair(frozenset([loc('x')]), frozenset([loc('x'), loc('f', 0)]))
        self.assertEqual(codec.decode_locks(fromjsonstr(tojsonstr(codec.encode_locks(locks)))), locks)
        self.assertEqual(codec.encode_locks(locks), dict(r=[['x', []]], w=[['f', [0]], ['x', []]]))
        self.assertIsNone(codec.encode_locks(None))

    def test_record_layout(self):
        lines = self._text.splitlines()
        self.assertEqual(len(lines), len(self._trace.steps) + 2)
        header, footer = fromjsonstr(lines[0]), fromjsonstr(lines[-1])
        self.assertEqual(header.record, 'header')
        self.assertEqual(header.seed, 4)
        self.assertEqual(header.config_digest, self._trace.config_digest)
        self.assertEqual(footer.record, 'footer')
        self.assertEqual(footer.steps, len(self._trace.steps))
        self.assertEqual(fromjsonstr(lines[1]).index, 0)

    def test_decode(self):
        trace = codec.loads(self._text)
        self.assertEqual(trace.config, self._trace.config)
        self.assertEqual(trace.steps, self._trace.steps)
        self.assertEqual(trace.initial_state, self._trace.initial_state)
        self.assertEqual(trace.final_state, self._trace.final_state)
        self.assertEqual(trace.outcome, self._trace.outcome)

    def test_encoding_is_stable(self):
        self.assertEqual(codec.dumps(codec.loads(self._text)), self._text)
        again = codec.encode(codec.loads(self._text))
        for line, other in zip(self._text.splitlines(), again):
            self._assert_equal_objects(fromjsonstr(line), fromjsonstr(other))

    def test_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'run.jsonl')
            codec.dump(self._trace, path)
            self.assertEqual(codec.dumps(codec.load(path)), self._text)

    def test_file_not_utf8(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'bad.jsonl')
            with open(path, 'wb') as fd:
                fd.write(b'\xff\xfe\n')
            with self.assertRaises(MalformedTrace):
                codec.load(path)

    def _assert_malformed(self, text):
        with self.assertRaises(MalformedTrace):
            codec.loads(text)

    def test_truncated(self):
        lines = self._text.splitlines()
        self._assert_malformed('\n'.join(lines[:-1]))
        self._assert_malformed(lines[0])
        self._assert_malformed('')

    def test_missing_step(self):
        lines = self._text.splitlines()
        self._assert_malformed('\n'.join(lines[:2] + lines[3:]))

    def test_invalid_json(self):
        lines = self._text.splitlines()
        self._assert_malformed('\n'.join([lines[0], '{"record": "step", '] + lines[1:]))

    def test_digest_mismatch(self):
        self._assert_malformed(self._text.replace(self._trace.config_digest, '0' * 16, 1))

    def test_unsupported_version(self):
        self._assert_malformed(self._text.replace('"version":1', '"version":99', 1))
