from taserial import tojsonstr
from tests.ut import base


class TestJSON(base.BaseTest):

    @staticmethod
    def _tojsonstr(value, pretty_print=False):
        return tojsonstr(value, pretty_print)
