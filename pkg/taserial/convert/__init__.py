from .parse import fromjsonstr  # noqa: E402, F401
from .format import tojsonstr  # noqa: E402, F401
from .exception import ConversionError  # noqa: E402, F401
