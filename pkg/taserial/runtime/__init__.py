from .types import RunConfig, MachineStep, StepRecord, Trace, Schedule, ScheduleEntry, Outcome  # noqa: E402, F401
from .engine import Engine, run, initial_state, config_digest  # noqa: E402, F401
from .schedule import project_schedule  # noqa: E402, F401
from . import codec  # noqa: E402, F401
