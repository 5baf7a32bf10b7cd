import json


def tojsonstr(obj, pretty_print=True):
    """
    Convert a Python object to a JSON string.

    Keys are sorted and, unless pretty printing, separators are compact,
    so that equal objects always produce byte-identical strings.

    :param object obj: the Python object
    :param bool pretty_print: Whether to format the JSON string, defaults to ``True``
    :return: JSON string of the object
    :rtype: str
    """
    if pretty_print:
        return json.dumps(obj, default=lambda o: o.__dict__, indent=5, sort_keys=True)
    return json.dumps(obj, default=lambda o: o.__dict__, sort_keys=True, separators=(',', ':'))
