"""Access to the shipped example corpus."""
from fuscat import io

VALID = [name for name in io.builtin_names() if name != "broken_ring"]


def entities(kind):
    """``(name/id, entity)`` for every entity of ``kind`` across the valid corpus files."""
    out = []
    for name in VALID:
        ws = io.load(name)
        for id in ws.ids(kind):
            out.append((f"{name}/{id}", ws.get(id)))
    return out
