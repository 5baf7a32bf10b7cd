from taserial.exception import LockSafetyViolation
from taserial.txctl.enum import LockMode
from taserial.txctl.locktable import LockTable, triples
from taserial.txctl.types import LockPair
from tests.ut import base
from tests.ut.base import loc


def read(*locations):
    return LockPair(r_loc=frozenset(locations))


def write(*locations):
    return LockPair(w_loc=frozenset(locations))


class TestTxctlLockTable(base.BaseTest):

    def setUp(self):
        super().setUp()
        self._x = loc('x')
        self._y = loc('y')

    def test_shared_read_locks(self):
        table = LockTable().grant('A', read(self._x)).grant('B', read(self._x))
        self.assertEqual(set(table.r_holders(self._x)), {'A', 'B'})
        self.assertEqual(table.conflicts('C', read(self._x)), frozenset())
        table.check()

    def test_write_lock_is_exclusive(self):
        table = LockTable().grant('A', write(self._x))
        self.assertEqual(table.conflicts('B', read(self._x)), frozenset([(self._x, 'A')]))
        self.assertEqual(table.conflicts('B', write(self._x)), frozenset([(self._x, 'A')]))
        self.assertEqual(table.conflicts('A', read(self._x) | write(self._x)), frozenset())

    def test_read_lock_blocks_foreign_writer(self):
        table = LockTable().grant('A', read(self._x)).grant('B', read(self._x))
        self.assertEqual(table.conflicts('A', write(self._x)), frozenset([(self._x, 'B')]))
        self.assertEqual(LockTable().grant('A', read(self._x)).conflicts('A', write(self._x)), frozenset())

    def test_locked_by(self):
        table = LockTable().grant('A', LockPair(frozenset([self._x]), frozenset([self._x, self._y])))
        self.assertEqual(table.locked_by('A'), LockPair(frozenset([self._x]), frozenset([self._x, self._y])))
        self.assertEqual(table.locked_by('B'), LockPair())
        self.assertTrue(table.is_w_locked(self._y, 'A'))
        self.assertFalse(table.is_r_locked(self._y, 'A'))

    def test_release_is_mode_exact(self):
        table = LockTable().grant('A', read(self._x)).grant('A', write(self._x))
        table = table.release('A', read(self._x))
        self.assertFalse(table.is_r_locked(self._x, 'A'))
        self.assertTrue(table.is_w_locked(self._x, 'A'))
        self.assertEqual(table.release('A', write(self._x)), LockTable())

    def test_edit(self):
        table = LockTable().grant('A', write(self._x))
        table = table.edit(triples('B', read(self._y)), triples('A', write(self._x)))
        self.assertEqual(table.w_locked, frozenset())
        self.assertEqual(table.r_locked, frozenset([(self._y, 'B')]))

    def test_triples(self):
        self.assertEqual(triples('A', LockPair(frozenset([self._x]), frozenset([self._y]))),
                         frozenset([(self._x, 'A', LockMode.Read), (self._y, 'A', LockMode.Write)]))

    def test_check_detects_shared_write_lock(self):
        with self.assertRaises(LockSafetyViolation):
            LockTable().grant('A', write(self._x)).grant('B', write(self._x)).check()
        with self.assertRaises(LockSafetyViolation):
            LockTable().grant('A', write(self._x)).grant('B', read(self._x)).check()

    def test_equality(self):
        self.assertEqual(LockTable().grant('A', read(self._x)), LockTable().grant('A', read(self._x)))
        self.assertEqual(LockTable().grant('A', read(self._x)).release('A', read(self._x)), LockTable())
