"""Unique sink orientations of hypercubes and simulated period finding on their outmaps."""

from .cube import Subcube, carrier, contains, enumerate_subcubes, lambda_facets, sym_diff
from .orientation import (
    Outmap,
    combine,
    deserialize,
    example_uso,
    flip,
    is_orientation,
    psi,
    random_uso,
    serialize,
    uniform,
)
from .period import PeriodResult, naive_walk_count, orbit_period, power, sink_via_period
from .qpf import QpfConfig, QpfResult, quantum_find_sink, recover_period
from .verifier import decide, enumerate_usos, global_sink, is_bijection, is_uso, subcube_sinks

__version__ = "0.1.0"
