from .seed import SeedStream, digest  # noqa: E402, F401
from .registry import Registry, register  # noqa: E402, F401
