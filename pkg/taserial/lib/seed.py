import hashlib
import random
from dataclasses import dataclass


def digest(*parts, size=8):
    """
    Stable digest of a tuple of parts, independent of the interpreter's hash seed

    :param int size: digest size in bytes
    :return bytes: the digest
    """
    return hashlib.blake2b(repr(parts).encode('utf-8'), digest_size=size).digest()


@dataclass(frozen=True)
class SeedStream:
    """
    Labelled, immutable source of seeded nondeterminism.

    A stream is a master seed plus a tuple of labels. Child streams are derived
    with :func:`fork`, so adding an agent or a label never perturbs the choices
    of any other stream.

    :ivar int seed: Master seed
    :ivar tuple labels: Derivation labels
    """
    seed: int
    labels: tuple = ()

    def fork(self, *labels):
        return SeedStream(self.seed, self.labels + labels)

    def index(self, n, *key):
        """
        Deterministic index in ``range(n)`` for the given key

        :param int n: Number of alternatives, must be positive
        """
        return int.from_bytes(digest(self.seed, self.labels, key), 'big') % n

    def choice(self, candidates, *key):
        return candidates[self.index(len(candidates), *key)]

    def random(self, *key):
        """
        :return random.Random: a generator seeded from this stream and key
        """
        return random.Random(int.from_bytes(digest(self.seed, self.labels, key, size=16), 'big'))
