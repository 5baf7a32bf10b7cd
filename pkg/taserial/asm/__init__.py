from .values import TRUE, FALSE, UNDEF, Boolean, Symbol, sort_key  # noqa: E402, F401
from .state import Location, State, UpdateSet, EMPTY, apply  # noqa: E402, F401
from .interpreter import Interpreter, eval_term, eval_formula, yields  # noqa: E402, F401
from .rwloc import RwSet, RwAnalyzer, rw_term, rw_formula, rw_rule  # noqa: E402, F401
from .program import MachineProgram, LocationClass  # noqa: E402, F401
