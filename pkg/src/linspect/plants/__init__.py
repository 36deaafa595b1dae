from .catalog import bundled_plants, get_plant, plant_names
from .core import (DEFAULT_STEP, ChannelSeries, Constraint, InputSchedule,
                   PlantDescriptor, SimulationTrace, Termination, propagate,
                   read_trace, rk4_step, simulate, write_trace)
from .trim import TRIM_TOL, find_equilibrium

__all__ = [
    "bundled_plants", "get_plant", "plant_names", "DEFAULT_STEP",
    "ChannelSeries", "Constraint", "InputSchedule", "PlantDescriptor",
    "SimulationTrace", "Termination", "propagate", "read_trace", "rk4_step",
    "simulate", "write_trace", "TRIM_TOL", "find_equilibrium",
]
