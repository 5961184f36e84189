"""Conjugacies of edge shifts and isomorphisms of graph groupoids.

Graphs, codes, candidates and tables are read from the same text formats as
the command-line tool; rationals are passed as strings such as "3/2".
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401


def load(parse, path, *graphs):
    """Reads a file and hands its text to one of the parse_* functions."""
    with open(path, encoding="utf-8") as f:
        return parse(*graphs, f.read())
