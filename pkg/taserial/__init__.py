# pylint: disable=wrong-import-position
from . import config

config.Logging.get()

from .common import Object  # noqa: E402, F401
from .convert import fromjsonstr, tojsonstr  # noqa: E402, F401
from .exception import TASerialException  # noqa: E402, F401
from .asm import State, Location, UpdateSet, MachineProgram  # noqa: E402, F401
from .lang import parse_program, parse_programs, format_program  # noqa: E402, F401
from .runtime import RunConfig, Trace, run, project_schedule  # noqa: E402, F401
from .checker import cleanse, equivalent, build_serial_run, check_serializable, brute_force_serializable  # noqa: E402, F401
