"""Arrange, classify, check parity and trace in one call."""
from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, build_arrangement
from .geometry import Instance
from .shelter import ParityCheck, ShelterReport, classify_all, verify_parity_lemma
from .tracer import ShelteredSubgraph, TraceResult, sheltered_subgraph, trace


@dataclass
class PipelineResult:
    arrangement: Arrangement
    report: ShelterReport
    parity: ParityCheck
    subgraph: ShelteredSubgraph | None
    trace: TraceResult | None


def run_pipeline(inst: Instance) -> PipelineResult:
    arr = build_arrangement(inst)
    rep = classify_all(arr)
    parity = verify_parity_lemma(rep, arr)
    if not parity.ok:
        return PipelineResult(arr, rep, parity, None, None)
    sub = sheltered_subgraph(rep, arr)
    return PipelineResult(arr, rep, parity, sub, trace(sub))
