from taserial.asm.state import UpdateSet
from taserial.checker import CleansedEntry, CleansedSchedule, build_serial_run, divergence, equivalent
from taserial.checker.equivalence import compare
from taserial.exception import ConfigMismatch
from tests.ut import base_asm
from tests.ut.base import loc


class TestCheckerEquivalence(base_asm.BaseRunTest):

    def setUp(self):
        super().setUp()
        self._entry = CleansedEntry(0, UpdateSet([(loc('x'), 1)]), frozenset([(loc('x'), 0)]))

    def test_reflexive(self):
        trace = self.run_text(base_asm.DEADLOCK, seed=4)
        self.assertTrue(equivalent(trace, trace))

    def test_serial_run_equivalent(self):
        trace = self.run_text(base_asm.DEADLOCK, seed=4)
        self.assertIsNone(divergence(trace, build_serial_run(trace)))

    def test_config_mismatch(self):
        with self.assertRaises(ConfigMismatch):
            divergence(self.run_text(base_asm.COUNTER), self.run_text(base_asm.DEADLOCK))

    def test_updates_differ(self):
        other = CleansedEntry(0, UpdateSet([(loc('x'), 2)]), self._entry.reads)
        witness = compare(CleansedSchedule('A', (self._entry,)), CleansedSchedule('A', (other,)))
        self.assertEqual((witness.machine, witness.position, witness.reason), ('A', 0, 'updates'))

    def test_reads_differ(self):
        other = CleansedEntry(3, self._entry.updates, frozenset([(loc('x'), 5)]))
        witness = compare(CleansedSchedule('A', (self._entry,)), CleansedSchedule('A', (other,)))
        self.assertEqual((witness.reason, witness.step), ('reads', 0))

    def test_length_differs(self):
        witness = compare(CleansedSchedule('A', (self._entry, self._entry)), CleansedSchedule('A', (self._entry,)))
        self.assertEqual((witness.position, witness.reason, witness.left, witness.right), (1, 'length', '2', '1'))

    def test_equal_schedules(self):
        self.assertIsNone(compare(CleansedSchedule('A', (self._entry,)), CleansedSchedule('A', (self._entry,))))
