import os
import sys
import logging


class Logging:
    """
    Root logger of the library. Records go to standard error, or to the file named by
    ``TASERIAL_LOG_FILE``, so that standard output carries only command results.
    """

    __instance = None

    @staticmethod
    def get():
        if Logging.__instance is None:
            Logging()
        return Logging.__instance

    def __init__(self):
        if Logging.__instance is not None:
            raise Exception("You must invoke Logging.get()")
        Logging.__instance = self
        target = dict(filename=logconf['filename']) if logconf['filename'] else dict(stream=sys.stderr)
        logging.basicConfig(format=logconf['fmt'], datefmt=logconf['df'], **target)
        logger = logging.getLogger()
        logger.disabled = logconf['disabled']
        logger.setLevel(logconf['level'])

    @staticmethod
    def disable():
        logging.getLogger().disabled = True

    @staticmethod
    def enable():
        logging.getLogger().disabled = False

    @staticmethod
    def setLevel(level):
        logging.getLogger().setLevel(level)


def _default_seed():
    seed = os.environ.get('TASERIAL_SEED')
    return int(seed) if seed else 0


logconf = dict(
    disabled=False,
    level=os.environ.get('TASERIAL_LOG_LEVEL', 'INFO').upper(),
    fmt='%(asctime)s,%(msecs)3d %(levelname)7s [%(filename)s:%(lineno)d] [%(funcName)s] - %(message)s',
    df='%Y-%m-%d %H:%M:%S',
    filename=os.environ.get('TASERIAL_LOG_FILE')
)

run = dict(
    seed=_default_seed(),
    max_steps=200,
    domain_size=8,  # quantifiers range over {0..domain_size-1}
    wait_mode='retry',  # ['retry', 'suspend']
    scheduling='synchronous'  # ['synchronous', 'interleaving']
)

policies = dict(
    lock_request='random',  # ['random', 'fifo', 'lowest-id']
    commit='random',  # ['random', 'fifo', 'lowest-id']
    victim='shortest-history',  # ['shortest-history', 'random', 'all']
    recovery='random'  # ['random', 'fifo', 'lowest-id']
)

controller = dict(
    restart_limit=3  # victimizations after which a machine is only chosen among equally starved ones
)

trace = dict(
    version=1
)

checker = dict(
    brute_force_limit=4  # exhaustive search over all commit orders
)

fuzz = dict(
    runs=100,
    machines=3,
    locations=8,
    phases=4,
    wait_mode='mixed',  # ['retry', 'suspend', 'mixed']
    attempts=8,  # draws of a closed system per seed
    jobs=1
)
