"""Executable models of the four worked measurement scenarios."""

from .beamsplitter import BeamsplitterSpec, coherent_overlap, run_beamsplitter
from .box import BoxExpansionSpec, box_overlap, run_box_expansion
from .equivalence import EquivalenceSpec, run_equivalence
from .photon import PhotonCountingSpec, build_photon_counter, run_photon_counting

__all__ = [
    "BeamsplitterSpec",
    "BoxExpansionSpec",
    "EquivalenceSpec",
    "PhotonCountingSpec",
    "box_overlap",
    "build_photon_counter",
    "coherent_overlap",
    "run_beamsplitter",
    "run_box_expansion",
    "run_equivalence",
    "run_photon_counting",
]
