import logging

from .fuzz import aggregate, dump_failures, fuzz as run_fuzz
from .manifest import load_config
from ..checker import brute_force_serializable, check_serializable, forge_lost_update
from ..common import Object
from ..exception import MalformedTrace, TASerialException
from ..runtime import codec
from ..runtime.engine import Engine
from ..runtime.types import Outcome


class ExitCode:
    """
    :ivar int OK: Run terminated, trace serializable, fuzzing passed
    :ivar int Error: Invalid input, malformed trace or invariant violation
    :ivar int BudgetExhausted: Run hit its step budget
    :ivar int NotSerializable: Trace is not serializable
    """
    OK = 0
    Error = 1
    BudgetExhausted = 2
    NotSerializable = 3


def _print(obj):
    print(str(obj))


def _summary(**fields):
    obj = Object()
    for key, value in fields.items():
        setattr(obj, key, value)
    return obj


def cmd_run(args):
    """Run a configuration and optionally save its trace"""
    try:
        run_config = load_config(args.config, dict(seed=args.seed, max_steps=args.max_steps, wait_mode=args.wait_mode,
                                                   scheduling=args.scheduling), dict(args.policy or []))
        trace = Engine(run_config).run()
        if args.trace:
            codec.dump(trace, args.trace)
    except TASerialException as error:
        logging.getLogger().error('Run failed. %s', {'config': args.config, 'error': error.__class__.__name__})
        _print(error)
        return ExitCode.Error
    except OSError as error:
        logging.getLogger().error('Could not write trace. %s', {'path': args.trace, 'error': str(error)})
        return ExitCode.Error
    _print(_summary(seed=trace.seed, config_digest=trace.config_digest, commit_order=list(trace.commit_order()),
                    **trace.stats()))
    return ExitCode.OK if trace.outcome == Outcome.Terminated else ExitCode.BudgetExhausted


def cmd_check(args):
    """Check a trace file for serializability"""
    try:
        trace = codec.load(args.trace)
        verdict = brute_force_serializable(trace) if args.brute_force else check_serializable(trace)
    except MalformedTrace as error:
        logging.getLogger().error('Malformed trace. %s', {'path': args.trace})
        _print(error)
        return ExitCode.Error
    except (TASerialException, OSError) as error:
        logging.getLogger().error('Check failed. %s', {'path': args.trace, 'error': str(error)})
        return ExitCode.Error
    _print(verdict.summary())
    return ExitCode.OK if verdict.serializable else ExitCode.NotSerializable


def self_test():
    """Both oracles must reject the forged lost-update run"""
    forged = forge_lost_update()
    rejected = not check_serializable(forged).serializable and not brute_force_serializable(forged).serializable
    if not rejected:
        logging.getLogger().error('Forged lost-update run was accepted.')
    return rejected


def cmd_fuzz(args):
    """Fuzz random configurations; passes iff every run is serializable"""
    if args.self_test and not self_test():
        return ExitCode.Error
    results = run_fuzz(args.runs, args.seed, args.wait_mode, args.jobs, machines=args.machines,
                       locations=args.locations, phases=args.phases, max_steps=args.max_steps,
                       brute_force=args.brute_force)
    for result in results:
        _print(_summary(seed=result.seed, wait_mode=result.wait_mode, serializable=result.serializable,
                        error=result.error, **{**result.stats, 'outcome': result.outcome}))
    failed = [result for result in results if result.failed]
    if failed and args.dump_dir:
        for path in dump_failures(failed, args.dump_dir):
            logging.getLogger().info('Saved failing trace. %s', {'path': path})
    _print(_summary(failed=[result.seed for result in failed], **aggregate(results)))
    return ExitCode.OK if not failed else ExitCode.Error
