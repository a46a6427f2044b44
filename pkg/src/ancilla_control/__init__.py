"""State and entanglement control through repeated interactions with one ancilla."""

from .qubit_protocol import ProtocolParams, evolve_n, survival_probability, zeno_survival
from .so3_map import AxisAngle, DegenerateRotationError, NotRealRepresentableError
from .cavity_control import CavityParams, CavityState

__all__ = [
    "ProtocolParams",
    "evolve_n",
    "survival_probability",
    "zeno_survival",
    "AxisAngle",
    "DegenerateRotationError",
    "NotRealRepresentableError",
    "CavityParams",
    "CavityState",
]
