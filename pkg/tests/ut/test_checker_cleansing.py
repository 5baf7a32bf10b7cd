from dataclasses import replace

from taserial.checker import cleanse, cleanse_confluent, cleanse_schedule, recovery_units
from taserial.exception import MalformedTrace
from taserial.runtime.types import MachineStep
from taserial.txctl.enum import CtlState, EventKind, WaitMode
from taserial.txctl.types import Event
from tests.ut import base_asm
from tests.ut.base import loc


class TestCheckerCleansing(base_asm.BaseRunTest):

    def _victim(self, trace):
        return next(event.machine for _, event in trace.events(EventKind.Victimize))

    def test_keeps_productive_steps(self):
        trace = self.run_text(base_asm.COUNTER, seed=0)
        for m in ('A', 'B'):
            cleansed = cleanse(trace, m)
            self.assertEqual(len(cleansed), 3)
            for entry in cleansed.entries:
                self.assertTrue(entry.updates)
                self.assertTrue(trace.steps[entry.step].machine(m).proper)

    def test_removes_refusals(self):
        refused = set()
        for seed in range(4):
            trace = self.run_text(base_asm.COUNTER, seed=seed, wait_mode=WaitMode.Retry)
            for m in {event.machine for _, event in trace.events(EventKind.LockRefuse)}:
                refused.add(m)
                kinds = {event.kind for _, event in cleanse(trace, m).removed_events}
                self.assertIn(EventKind.LockRefuse, kinds)
                self.assertEqual(len(cleanse(trace, m)), 3)
        self.assertTrue(refused)

    def test_removes_undone_steps(self):
        for wait_mode in (WaitMode.Retry, WaitMode.Suspend):
            trace = self.run_text(base_asm.DEADLOCK, seed=3, wait_mode=wait_mode)
            victim = self._victim(trace)
            units = recovery_units(trace, victim)
            undone = frozenset().union(*(unit.undone for unit in units))
            self.assertTrue(undone)
            cleansed = cleanse(trace, victim)
            self.assertEqual(len(cleansed), 2)
            self.assertFalse(undone & {entry.step for entry in cleansed.entries})
            kinds = {event.kind for _, event in cleansed.removed_events}
            self.assertTrue({EventKind.Victimize, EventKind.UndoApplied} <= kinds)

    def test_recovery_brackets(self):
        trace = self.run_text(base_asm.DEADLOCK, seed=3, wait_mode=WaitMode.Retry)
        victim = self._victim(trace)
        for unit in recovery_units(trace, victim):
            if unit.entry is not None:
                self.assertEqual(trace.steps[unit.entry].machine(victim).transition,
                                 (CtlState.TACtl, CtlState.WaitForRecovery))
                self.assertIn(unit.entry, unit.steps)

    def test_confluence(self):
        for seed in range(4):
            trace = self.run_text(base_asm.DEADLOCK, seed=seed)
            for m in trace.machines():
                expected = cleanse(trace, m)
                for order_seed in range(8):
                    self.assertEqual(cleanse_confluent(trace, m, order_seed), expected)

    def test_idempotence(self):
        trace = self.run_text(base_asm.DEADLOCK, seed=5)
        for m in trace.machines():
            cleansed = cleanse(trace, m)
            self.assertEqual(cleanse_schedule(cleansed.as_schedule()), cleansed)

    def test_undo_of_unrecorded_step(self):
        trace = self.run_text(base_asm.COUNTER, seed=0)
        last = trace.steps[-1]
        forged = replace(last, events=last.events + (Event(EventKind.UndoApplied, 'A', origin=len(trace.steps) + 5),))
        trace = replace(trace, steps=trace.steps[:-1] + (forged,))
        with self.assertRaises(MalformedTrace):
            cleanse(trace, 'A')

    def test_recovery_exit_without_entry(self):
        trace = self.run_text(base_asm.COUNTER, seed=0)
        step = trace.steps[2]
        exit_ = MachineStep(transition=(CtlState.WaitForRecovery, CtlState.TACtl))
        trace = replace(trace, steps=trace.steps[:2] + (replace(step, machines=step.machines.set('A', exit_)),) +
                        trace.steps[3:])
        with self.assertRaises(MalformedTrace):
            cleanse(trace, 'A')

    def test_cleanse_schedule_drops_empty_updates(self):
        trace = self.run_text(base_asm.COUNTER, seed=0)
        cleansed = cleanse(trace, 'A')
        self.assertTrue(all(loc('n_a') in entry.updates.locations() for entry in cleansed.entries))
