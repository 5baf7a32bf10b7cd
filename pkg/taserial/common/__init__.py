from .object import Object  # noqa: E402, F401
from .utils import layer  # noqa: E402, F401
