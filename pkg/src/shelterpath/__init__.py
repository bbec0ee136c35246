"""Sheltered middle paths of three plane paths, computed exactly."""
from .arrangement import Arrangement, VertexKind, build_arrangement, build_faces
from .geometry import Instance, PLPath, Point, pt, rational, validate_general_position
from .pipeline import PipelineResult, run_pipeline
from .shelter import ShelterClass, classify_all, verify_parity_lemma
from .tracer import TraceResult, sheltered_subgraph, trace
from .winding import LoopPolyline, loop_of, winding_number, winding_number_float

__all__ = [
    "Arrangement",
    "Instance",
    "LoopPolyline",
    "PLPath",
    "PipelineResult",
    "Point",
    "ShelterClass",
    "TraceResult",
    "VertexKind",
    "build_arrangement",
    "build_faces",
    "classify_all",
    "loop_of",
    "pt",
    "rational",
    "run_pipeline",
    "sheltered_subgraph",
    "trace",
    "validate_general_position",
    "verify_parity_lemma",
    "winding_number",
    "winding_number_float",
]
