from taserial.exception import InputError
from taserial.lib import SeedStream
from taserial.txctl import policies
from taserial.txctl.enum import PolicyKind
from taserial.txctl.types import VictimCandidate
from tests.ut import base


class TestTxctlPolicies(base.BaseTest):

    def setUp(self):
        super().setUp()
        self._rng = SeedStream(0).fork('policy')
        self._pending = [('A', 4), ('B', 1), ('C', 1)]

    def test_names(self):
        for kind in (PolicyKind.LockRequest, PolicyKind.Commit, PolicyKind.Recovery):
            self.assertEqual(policies.names(kind), ['fifo', 'lowest-id', 'random'])
        self.assertEqual(policies.names(PolicyKind.Victim), ['all', 'random', 'shortest-history'])

    def test_fifo(self):
        self.assertEqual(policies.get(PolicyKind.LockRequest, 'fifo')(self._pending, self._rng), 'B')

    def test_lowest_id(self):
        self.assertEqual(policies.get(PolicyKind.Commit, 'lowest-id')(self._pending, self._rng), 'A')

    def test_random(self):
        select = policies.get(PolicyKind.Recovery, 'random')
        self.assertIn(select(self._pending, self._rng), ('A', 'B', 'C'))
        self.assertEqual(select(self._pending, self._rng), select(self._pending, self._rng))

    def test_shortest_history(self):
        standing = dict(A=VictimCandidate(2), B=VictimCandidate(1), C=VictimCandidate(1), D=VictimCandidate(3))
        victims = policies.get(PolicyKind.Victim, 'shortest-history')([frozenset('AB'), frozenset('CD')],
                                                                      standing, self._rng)
        self.assertEqual(victims, frozenset('B'))

    def test_shortest_history_passes_over_restarted_machines(self):
        standing = dict(A=VictimCandidate(5), B=VictimCandidate(1, restarts=3))
        victims = policies.get(PolicyKind.Victim, 'shortest-history')([frozenset('AB')], standing, self._rng)
        self.assertEqual(victims, frozenset('A'))

    def test_shortest_history_among_starved_picks_latest_registered(self):
        standing = dict(A=VictimCandidate(1, restarts=4, registered=0), B=VictimCandidate(9, restarts=3, registered=2),
                        C=VictimCandidate(1, restarts=3, registered=2))
        victims = policies.get(PolicyKind.Victim, 'shortest-history')([frozenset('ABC')], standing, self._rng)
        self.assertEqual(victims, frozenset('C'))

    def test_shortest_history_restart_limit_from_config(self):
        self.patch_call('taserial.config.controller', new=dict(restart_limit=0))
        standing = dict(A=VictimCandidate(5, registered=0), B=VictimCandidate(1, registered=1))
        victims = policies.get(PolicyKind.Victim, 'shortest-history')([frozenset('AB')], standing, self._rng)
        self.assertEqual(victims, frozenset('B'))

    def test_all_and_random_victims(self):
        cycles = [frozenset('AB')]
        standing = dict(A=VictimCandidate(0), B=VictimCandidate(0))
        self.assertEqual(policies.get(PolicyKind.Victim, 'all')(cycles, standing, self._rng), frozenset('AB'))
        self.assertLessEqual(policies.get(PolicyKind.Victim, 'random')(cycles, standing, self._rng),
                             frozenset('AB'))

    def test_unknown(self):
        with self.assertRaises(InputError):
            policies.get(PolicyKind.Victim, 'oldest')
