import json


class Object:  # pylint: disable=too-many-instance-attributes
    """Attribute bag used for trace records and verdict summaries"""

    def __eq__(self, other):
        return isinstance(other, Object) and self.__dict__ == other.__dict__

    def __str__(self):
        return json.dumps(self, default=lambda o: o.__dict__, indent=5, sort_keys=True)
