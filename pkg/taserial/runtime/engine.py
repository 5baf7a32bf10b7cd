import logging

from pyrsistent import pmap

from .types import MachineStep, Outcome, StepRecord, Trace
from ..asm.state import EMPTY, State
from ..exception import ConfigError, InconsistentGlobalUpdate
from ..lang.printer import format_programs
from ..lib import SeedStream, digest
from ..txctl.controller import NO_DELTA, ControllerState, SignalKind, TransactionController
from ..txctl.enum import ACTIVE, CtlState, EventKind, Scheduling
from ..txctl.types import Event, TxControlBlock
from ..txctl.wrapper import wrapper_step


def initial_state(config):
    """
    Union of the machines' init sections, or the configured override

    :raises taserial.exception.ConfigError: if two machines initialize a location differently
    """
    if config.initial_state is not None:
        return config.initial_state.with_domain(config.domain())
    values = {}
    for program in sorted(config.machines, key=lambda p: p.name):
        for location, value in program.init:
            if location in values and values[location] != value:
                raise ConfigError('Machines initialize a location differently', location=repr(location),
                                  machine=program.name)
            values[location] = value
    return State(values, config.domain())


def config_digest(config):
    """Digest of everything in a configuration except its seed and step budget"""
    override = None
    if config.initial_state is not None:
        override = [(location.key(), repr(value)) for location, value in config.initial_state.items()]
    programs = format_programs(sorted(config.machines, key=lambda p: p.name))
    return digest(programs, config.domain_size, sorted(config.registration.items()), sorted(config.policies.items()),
                  config.wait_mode, config.scheduling, override).hex()


def _apply_signal(tcb, signal):
    if signal.kind == SignalKind.Undone:
        return tcb.evolve(history=tcb.history[:-1])
    if signal.kind == SignalKind.Granted:
        return tcb.evolve(granted=signal.locks, grant_step=signal.step)
    return tcb.evolve(refused=signal.locks)


class Engine:
    """
    Synchronous composition of the wrapped machines and the transaction controller.

    Every global step is computed against a snapshot of the state, the
    controller state and the control blocks; the outputs of all agents are
    merged and must be consistent.
    """

    def __init__(self, config):
        self.config = config
        self.seeds = SeedStream(config.seed)
        self.controller = TransactionController(config.policies, config.wait_mode)
        self.programs = {name: config.program(name) for name in config.names()}
        self._start, self._state, self._records = None, None, []

    def run(self):
        """:rtype: taserial.runtime.types.Trace"""
        state = initial_state(self.config)
        start = state
        cs = ControllerState()
        tcbs = {m: TxControlBlock(m) for m in self.programs}
        records = []
        self._start, self._state, self._records = start, state, records
        outcome = Outcome.BudgetExhausted
        logging.getLogger().debug('Starting run. %s', {'machines': list(self.programs), 'seed': self.config.seed})
        for index in range(self.config.max_steps):
            state, cs, tcbs, record = self.step(index, state, cs, tcbs)
            records.append(record)
            self._state = state
            if all(tcb.ctl_state == CtlState.Done and m not in cs.transact for m, tcb in tcbs.items()):
                outcome = Outcome.Terminated
                break
        logging.getLogger().info('Run finished. %s', {'outcome': outcome, 'steps': len(records), 'seed': self.config.seed})
        return Trace(self.config, config_digest(self.config), start, tuple(records), state, outcome)

    def partial_trace(self):
        """
        Steps completed so far by the last :meth:`run`, for a run that raised

        :return: ``None`` before the first run
        :rtype: taserial.runtime.types.Trace
        """
        if self._start is None:
            return None
        return Trace(self.config, config_digest(self.config), self._start, tuple(self._records), self._state,
                     Outcome.Aborted)

    def _register(self, index, cs, tcbs):
        events = []
        for m in sorted(tcbs):
            if tcbs[m].ctl_state == CtlState.NotRegistered and self.config.registered_at(m) <= index:
                tcbs[m] = TxControlBlock(m, CtlState.TACtl)
                cs = cs.register(m, index)
                events.append(Event(EventKind.Register, m))
                logging.getLogger().debug('Machine registered. %s', {'machine': m, 'step': index})
        return cs, events

    def _agents(self, index, cs, tcbs):
        machines = [m for m in sorted(tcbs) if tcbs[m].ctl_state in ACTIVE]
        if self.config.scheduling == Scheduling.Synchronous:
            return machines, list(TransactionController.COMPONENTS)
        agents = machines + self.controller.busy(cs)
        if not agents:
            return [], []
        agent = self.seeds.fork('schedule').choice(agents, index)
        if agent in tcbs:
            return [agent], []
        return [], [agent]

    def step(self, index, state, cs, tcbs):
        """
        One global step

        :return tuple: state, controller state, control blocks and the :class:`StepRecord`
        """
        tcbs = dict(tcbs)
        cs, events = self._register(index, cs, tcbs)
        machines, components = self._agents(index, cs, tcbs)

        outputs = {m: wrapper_step(tcbs[m], self.programs[m], state, cs, self.seeds, index) for m in machines}
        steps = [self.controller.step(c, cs, tcbs, self.seeds.fork('controller', c, index), index) for c in components]

        delta = NO_DELTA
        for part in [output.delta for output in outputs.values()] + [s.delta for s in steps]:
            delta = delta.merge(part, index)
        controller_updates = EMPTY
        for s in steps:
            controller_updates = controller_updates | s.updates
        updates = controller_updates
        for output in outputs.values():
            updates = updates | output.updates
        clashes = updates.clashes()
        if clashes:
            logging.getLogger().error('Inconsistent global update. %s', {'step': index, 'updates': repr(updates)})
            raise InconsistentGlobalUpdate(index, clashes)

        state = state.apply(updates)
        cs = delta.apply(cs)
        cs.lock_table.check()

        signals = [signal for s in steps for signal in s.signals]
        for signal in signals:
            if signal.kind == SignalKind.Undone:
                tcbs[signal.machine] = _apply_signal(tcbs[signal.machine], signal)
        machine_steps = {}
        for m, output in outputs.items():
            before = tcbs[m].ctl_state
            tcbs[m] = output.apply(tcbs[m])
            machine_steps[m] = MachineStep(
                updates=output.updates,
                reads=output.reads,
                transition=(before, output.ctl_state) if before != output.ctl_state else None,
                proper=output.proper,
                recorded=output.record is not None,
                lock_request=output.lock_request,
                commit_call=output.commit_call
            )
        for signal in signals:
            if signal.kind != SignalKind.Undone:
                tcbs[signal.machine] = _apply_signal(tcbs[signal.machine], signal)

        events.extend(event for s in steps for event in s.events)
        record = StepRecord(index, pmap(machine_steps), tuple(events), controller_updates, state.digest())
        return state, cs, tcbs, record


def run(config, seed=None, max_steps=None):
    """
    Run a configuration

    :param taserial.runtime.types.RunConfig config: Run configuration
    :param int seed: Overrides the configured seed
    :param int max_steps: Overrides the configured step budget
    :rtype: taserial.runtime.types.Trace
    """
    changes = {}
    if seed is not None:
        changes['seed'] = seed
    if max_steps is not None:
        changes['max_steps'] = max_steps
    if changes:
        config = config.evolve(**changes)
    return Engine(config).run()

