"""Star-free sets of integers: automata, numeration systems, logic and base
change."""

__version__ = "0.1.0"

from . import automata, basechange, numeration, padic, setspec  # noqa: E402

__all__ = ["__version__", "automata", "basechange", "numeration", "padic", "setspec"]
