from .types import CleansedEntry, CleansedSchedule, Verdict, Witness  # noqa: E402, F401
from .cleansing import cleanse, cleanse_confluent, cleanse_schedule, recovery_units  # noqa: E402, F401
from .equivalence import equivalent, divergence  # noqa: E402, F401
from .serial import build_serial_run, check_serializable, brute_force_serializable, solo_run  # noqa: E402, F401
from .fixtures import forge_lost_update  # noqa: E402, F401
from .diagnostics import conflict_graph, is_conflict_serializable  # noqa: E402, F401
