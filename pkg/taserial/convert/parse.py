import json
import queue

from .exception import ConversionError
from ..common import Object


class _Node:

    def __init__(self, node, parent=None, key=None):
        self.node = node
        self.parent = parent
        self.key = key
        self.value = None


def _attach(item, value):
    item.value = value
    if item.parent is None:
        return
    if isinstance(item.parent.value, list):
        item.parent.value.append(value)
    else:
        setattr(item.parent.value, item.key, value)


def fromjsonstr(fromstr):
    """
    Convert a JSON string to a tree of :class:`taserial.common.Object`

    :param str fromstr: JSON text
    :return: ``Object`` for JSON objects, ``list`` for arrays, scalars as-is
    :raises taserial.convert.ConversionError: if the text is not valid JSON
    """
    if not fromstr:
        return fromstr

    try:
        root = _Node(json.loads(fromstr))
    except ValueError as error:
        raise ConversionError(fromstr, str(error))

    q = queue.Queue()
    q.put(root)
    while not q.empty():
        item = q.get()
        if isinstance(item.node, list):
            _attach(item, [])
            for kidnode in item.node:
                q.put(_Node(kidnode, item))
        elif isinstance(item.node, dict):
            _attach(item, Object())
            for key, kidnode in item.node.items():
                q.put(_Node(kidnode, item, key))
        else:
            _attach(item, item.node)

    return root.value
