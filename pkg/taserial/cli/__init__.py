from .manifest import load_config, build_config, closed_system_violations  # noqa: E402, F401
from .fuzz import generate_config, ProgramGenerator  # noqa: E402, F401
from .commands import cmd_run, cmd_check, cmd_fuzz, ExitCode  # noqa: E402, F401
