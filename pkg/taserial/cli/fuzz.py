"""
Random well-formed configurations and the fuzzing loop.

Every generated machine runs through a fixed number of phases driven by a
private phase counter. Each phase reads and writes a shared array ``s``
through one of several rule shapes (plain, guarded, indirect, sequential,
forall and choose writes, private accumulation).
"""
import concurrent.futures
import logging
import os
from dataclasses import dataclass, field

from pyrsistent import pmap

from .manifest import closed_system_violations
from .. import config
from ..asm import syntax
from ..asm.program import MachineProgram
from ..asm.state import Location
from ..checker import brute_force_serializable, check_serializable
from ..convert import tojsonstr
from ..exception import ConfigError, TASerialException
from ..lib import SeedStream
from ..runtime import codec
from ..runtime.engine import Engine
from ..runtime.types import Outcome, RunConfig
from ..txctl.enum import WaitMode

ARRAY = 's'


def lit(n):
    return syntax.Apply(str(n))


def cell(index):
    return syntax.Apply(ARRAY, (index,))


def plus(left, right):
    return syntax.Apply('+', (left, right))


class ProgramGenerator:
    """
    Generator of phase-structured machines

    :ivar random.Random rng: Source of randomness
    :ivar int locations: Size of the shared array
    :ivar int phases: Number of phases per machine
    :ivar int domain_size: Quantifier domain size
    """

    def __init__(self, rng, locations, phases, domain_size):
        self.rng = rng
        self.locations = locations
        self.phases = phases
        self.domain_size = domain_size

    def index(self):
        return lit(self.rng.randrange(self.locations))

    def phase_body(self, accumulator):
        kind = self.rng.choice(('plain', 'guarded', 'indirect', 'seq', 'forall', 'choose', 'private'))
        j, k = self.index(), self.index()
        if kind == 'plain':
            return syntax.Assign(cell(k), plus(cell(j), lit(1)))
        if kind == 'guarded':
            bound = lit(self.rng.randrange(1, 4))
            return syntax.If(syntax.Lt(cell(j), bound), syntax.Assign(cell(k), bound),
                             syntax.Assign(cell(k), plus(cell(k), lit(1))))
        if kind == 'indirect':
            v = syntax.Var('v')
            in_range = syntax.And(syntax.Not(syntax.Lt(v, lit(0))), syntax.Lt(v, lit(self.locations)))
            return syntax.Let('v', cell(j), syntax.If(in_range, syntax.Assign(cell(v), plus(cell(k), lit(1)))))
        if kind == 'seq':
            return syntax.seq(syntax.Assign(cell(k), plus(cell(k), lit(1))), syntax.Assign(cell(j), cell(k)))
        bound = lit(self.rng.randrange(1, min(self.locations, self.domain_size) + 1))
        guard = syntax.Lt(syntax.Var('x'), bound)
        body = syntax.Assign(cell(syntax.Var('x')), plus(cell(syntax.Var('x')), lit(1)))
        if kind == 'forall':
            return syntax.ForallDo('x', guard, body)
        if kind == 'choose':
            return syntax.ChooseDo('x', guard, body)
        return syntax.Assign(accumulator, plus(accumulator, cell(j)))

    def machine(self, name, shared):
        """
        :param str name: Machine identifier
        :param bool shared: Declare the array shared, ``False`` for a machine running alone
        :rtype: taserial.asm.program.MachineProgram
        """
        pc = syntax.Apply('pc_%s' % name)
        accumulator = syntax.Apply('acc_%s' % name)
        rule = syntax.Skip()
        for phase in reversed(range(self.phases)):
            step = syntax.par(self.phase_body(accumulator), syntax.Assign(pc, lit(phase + 1)))
            rule = syntax.If(syntax.Eq(pc, lit(phase)), step, rule)
        init = [(Location(pc.func), 0), (Location(accumulator.func), 0)]
        init.extend((Location(ARRAY, (i,)), 0) for i in range(self.locations))
        return MachineProgram(
            name=name,
            rule=rule,
            terminated=syntax.Eq(pc, lit(self.phases)),
            shared=pmap({ARRAY: 1}) if shared else pmap(),
            init=tuple(sorted(init, key=lambda item: item[0].key()))
        )


def generate_config(seed, machines=None, locations=None, phases=None, wait_mode=WaitMode.Retry, max_steps=None,
                    domain_size=None):
    """
    Random closed configuration of ``machines`` phase-structured machines sharing ``s``

    A generated system with an open external function is drawn again from a
    forked stream, at most ``config.fuzz['attempts']`` times.

    :rtype: taserial.runtime.types.RunConfig
    :raises taserial.exception.ConfigError: if no attempt yields a closed system
    """
    machines = machines or config.fuzz['machines']
    locations = locations or config.fuzz['locations']
    domain_size = domain_size or config.run['domain_size']
    phases = phases or config.fuzz['phases']
    stream = SeedStream(seed)
    for attempt in range(config.fuzz['attempts']):
        rng = stream.random('programs') if attempt == 0 else stream.random('programs', attempt)
        generator = ProgramGenerator(rng, locations, phases, domain_size)
        programs = tuple(generator.machine('m%d' % i, machines > 1) for i in range(1, machines + 1))
        violations = closed_system_violations(programs)
        if not violations:
            return RunConfig(machines=programs, domain_size=domain_size, seed=seed,
                             max_steps=max_steps or config.run['max_steps'], wait_mode=wait_mode)
        logging.getLogger().debug('Regenerating open system. %s', {'seed': seed, 'attempt': attempt,
                                                                   'violations': violations})
    raise ConfigError('Could not generate a closed system', seed=seed, attempts=config.fuzz['attempts'])


def wait_mode_of(mode, index):
    if mode == 'mixed':
        return WaitMode.Retry if index % 2 == 0 else WaitMode.Suspend
    return mode


@dataclass
class FuzzResult:
    """
    :ivar int seed: Repro seed
    :ivar str wait_mode: Wait mode of the run
    :ivar bool serializable: Verdict of the serializability check
    :ivar str outcome: Outcome of the run
    :ivar dict stats: Run statistics
    :ivar str trace: Trace text of a failing run
    :ivar str error: Error of a run that raised
    :ivar bool brute_force: Verdict of the exhaustive oracle, ``None`` when it did not run
    """
    seed: int
    wait_mode: str
    serializable: bool = False
    outcome: str = None
    stats: dict = field(default_factory=dict)
    trace: str = None
    error: str = None
    brute_force: bool = None

    @property
    def failed(self):
        """Raised, ran out of steps or was judged non-serializable"""
        return bool(self.error) or self.outcome != Outcome.Terminated or not self.serializable or \
            self.brute_force is False


def fuzz_one(seed, wait_mode, options):
    """Generate, run and check one configuration; a failing run keeps its trace"""
    result = FuzzResult(seed, wait_mode)
    engine = None
    try:
        run_config = generate_config(seed, options.get('machines'), options.get('locations'), options.get('phases'),
                                     wait_mode, options.get('max_steps'))
        engine = Engine(run_config)
        trace = engine.run()
        result.outcome = trace.outcome
        result.stats = trace.stats()
        result.serializable = check_serializable(trace).serializable
        if options.get('brute_force'):
            result.brute_force = brute_force_serializable(trace).serializable
        if result.failed:
            result.trace = codec.dumps(trace)
    except TASerialException as error:
        result.error = str(error)
        partial = engine.partial_trace() if engine is not None else None
        if partial is not None:
            result.outcome = partial.outcome
            result.trace = codec.dumps(partial)
    return result


def fuzz(runs, seed, mode, jobs=1, **options):
    """
    Fuzz ``runs`` configurations with seeds ``seed, seed + 1, ...``

    :param str mode: ``retry``, ``suspend`` or ``mixed``
    :param int jobs: Worker processes
    :return list: :class:`FuzzResult` objects, by seed
    """
    tasks = [(seed + i, wait_mode_of(mode, i), options) for i in range(runs)]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(fuzz_one, *zip(*tasks)))
    else:
        results = [fuzz_one(*task) for task in tasks]
    for result in results:
        if result.failed:
            logging.getLogger().error('Fuzz run failed. %s', {'seed': result.seed, 'wait_mode': result.wait_mode,
                                                              'outcome': result.outcome, 'error': result.error})
    return results


def dump_failures(results, directory):
    """
    Save the trace of each failing run as ``fuzz-<seed>.jsonl``, or its seed and error
    as ``fuzz-<seed>.json`` when the run raised before producing a step
    """
    os.makedirs(directory, exist_ok=True)
    paths = []
    for result in results:
        if result.trace is not None:
            path, text = os.path.join(directory, 'fuzz-%d.jsonl' % result.seed), result.trace
        elif result.error:
            path = os.path.join(directory, 'fuzz-%d.json' % result.seed)
            text = tojsonstr(dict(seed=result.seed, wait_mode=result.wait_mode, error=result.error))
        else:
            continue
        with open(path, 'w', encoding='utf-8') as fd:
            fd.write(text)
        paths.append(path)
    return paths


def aggregate(results):
    """Totals of the run statistics"""
    totals = {}
    for result in results:
        for key, value in result.stats.items():
            if isinstance(value, int):
                totals[key] = totals.get(key, 0) + value
    totals['runs'] = len(results)
    totals['serializable'] = sum(1 for result in results if result.serializable)
    totals['terminated'] = sum(1 for result in results if result.outcome == Outcome.Terminated)
    totals['errors'] = sum(1 for result in results if result.error)
    return totals
