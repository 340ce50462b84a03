"""skewlab: real cocycles over minimal torus dynamics, at desk scale.

Construction and long-orbit evaluation of trigonometric cocycles over
irrational rotations and linear flows, the skew products and Rokhlin
extensions they drive, qualitative classification (recurrence, essential
range, coboundary testing with transfer recovery), and grid-set geometry
on the truncated hyperspace (orbit closures, prolongations, partition and
Mackey-translation checks).
"""

__version__ = "0.1.0"

from .constants import REGISTRY, lookup
from .torus import FLOW, ROTATION, BaseSystem, TorusPoint, act, distance

__all__ = [
    "REGISTRY", "lookup",
    "FLOW", "ROTATION", "BaseSystem", "TorusPoint", "act", "distance",
    "__version__",
]
