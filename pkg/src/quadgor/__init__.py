"""Exact graded commutative algebra over QQ and prime fields: Groebner
bases, minimal free resolutions, canonical modules, Nagata idealizations,
and bounded Koszulness probes for quadratic Gorenstein constructions."""

__version__ = "0.1.0"

from quadgor.field import GF, QQ
from quadgor.poly import PolyRing
from quadgor.rings import RingPresentation

__all__ = ["GF", "QQ", "PolyRing", "RingPresentation", "__version__"]
