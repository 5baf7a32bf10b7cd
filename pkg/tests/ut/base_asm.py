from taserial.lang import parse_programs
from taserial.runtime import Engine, RunConfig
from tests.ut import base


COUNTER = """
machine A
    shared counter/0
    init counter := 0, n_a := 0
    rule: if n_a < 3 then par {
        counter := counter + 1
        n_a := n_a + 1
    }
    terminated: n_a = 3

machine B
    shared counter/0
    init counter := 0, n_b := 0
    rule: if n_b < 3 then par {
        counter := counter + 1
        n_b := n_b + 1
    }
    terminated: n_b = 3
"""

# A locks x before y, B locks y before x
DEADLOCK = """
machine A
    shared x/0, y/0
    init x := 0, y := 0, pc_a := 0
    rule: if pc_a = 0 then par {
        x := x + 1
        pc_a := 1
    } else if pc_a = 1 then par {
        y := y + 1
        pc_a := 2
    }
    terminated: pc_a = 2

machine B
    shared x/0, y/0
    init x := 0, y := 0, pc_b := 0
    rule: if pc_b = 0 then par {
        y := y + 10
        pc_b := 1
    } else if pc_b = 1 then par {
        x := x + 10
        pc_b := 2
    }
    terminated: pc_b = 2
"""

WRITER = """
machine W
    shared x/0, y/0
    init x := 5, y := 7, pc_w := 0
    rule: if pc_w = 0 then par {
        x := 1
        pc_w := 1
    } else if pc_w = 1 then par {
        y := x + 1
        pc_w := 2
    }
    terminated: pc_w = 2
"""

PRODUCER_CONSUMER = """
machine P
    output flag/0
    init flag := false, pc_p := 0
    rule: if pc_p = 0 then par {
        flag := true
        pc_p := 1
    }
    terminated: pc_p = 1

machine C
    monitored flag/0
    init seen := 0, pc_c := 0
    rule: if pc_c = 0 then par {
        if flag then seen := 1 else seen := 2
        pc_c := 1
    }
    terminated: pc_c = 1
"""

NEVER_DONE = """
machine L
    shared x/0
    init x := 0
    rule: x := x + 1
    terminated: false
"""


class BaseRunTest(base.BaseTest):

    @staticmethod
    def make_config(text, **kwargs):
        return RunConfig(machines=parse_programs(text), **kwargs)

    def run_text(self, text, **kwargs):
        return Engine(self.make_config(text, **kwargs)).run()
