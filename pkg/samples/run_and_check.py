import logging
import sys

from taserial import config, check_serializable, parse_programs, RunConfig, run
from taserial.checker import conflict_graph


def main(path, seeds=10):
    config.Logging.get().setLevel(logging.WARNING)
    with open(path, 'r', encoding='utf-8') as fd:
        programs = parse_programs(fd.read())
    for seed in range(seeds):
        trace = run(RunConfig(machines=programs, seed=seed, max_steps=500))
        verdict = check_serializable(trace)
        print(seed, trace.outcome, list(trace.commit_order()), verdict.serializable,
              sorted(conflict_graph(trace).edges))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else 'samples/transfer.asm')
