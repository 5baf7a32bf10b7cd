from pyrsistent import pmap

from ..asm.state import Location, UpdateSet
from ..lang import parse_programs
from ..runtime.engine import config_digest, initial_state
from ..runtime.types import MachineStep, Outcome, RunConfig, StepRecord, Trace
from ..txctl.enum import CtlState, EventKind
from ..txctl.types import Event

LOST_UPDATE = """
machine A
    shared x/0
    init x := 0, pc_a := 0
    rule: if pc_a = 0 then par {
        x := x + 1
        pc_a := 1
    } else skip
    terminated: pc_a = 1

machine B
    shared x/0
    init x := 0, pc_b := 0
    rule: if pc_b = 0 then par {
        x := x + 1
        pc_b := 1
    } else skip
    terminated: pc_b = 1
"""


def forge_lost_update(seed=0):
    """
    Hand-forged run in which two machines increment ``x`` without locks in the
    same step, so one increment is lost. No serial order explains it.
    """
    config = RunConfig(machines=parse_programs(LOST_UPDATE), seed=seed)
    start = initial_state(config)
    x = Location('x')
    steps, state = [], start

    def increment(pc):
        counter = Location(pc)
        return MachineStep(updates=UpdateSet([(x, 1), (counter, 1)]), reads=frozenset([(x, 0), (counter, 0)]),
                           proper=True, recorded=True)

    commit_call = MachineStep(transition=(CtlState.TACtl, CtlState.Done), commit_call=True)
    plan = [
        (dict(A=increment('pc_a'), B=increment('pc_b')), (Event(EventKind.Register, 'A'), Event(EventKind.Register, 'B'))),
        (dict(A=commit_call, B=commit_call), ()),
        ({}, (Event(EventKind.Commit, 'A'),)),
        ({}, (Event(EventKind.Commit, 'B'),)),
    ]
    for index, (machines, events) in enumerate(plan):
        for step in machines.values():
            state = state.apply(step.updates)
        steps.append(StepRecord(index, pmap(machines), events, state_hash=state.digest()))
    return Trace(config, config_digest(config), start, tuple(steps), state, Outcome.Terminated)
