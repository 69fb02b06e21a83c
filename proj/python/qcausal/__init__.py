"""Entropic causal inference on density matrices."""

from ._core import (
    Amplitudes,
    DensityMatrix,
    NumericError,
    UpdateRule,
    Verdict,
    VerdictKind,
    bsc2_direct,
    bsc2_latent,
    depolarizing_direct,
    depolarizing_latent,
    gqsc_direct,
    gqsc_latent,
    infer_classical,
    infer_quantum,
    latent_search,
    quantum_mi,
    qcmi,
    read_density,
    rotate_to_pmf,
    vn_entropy,
    write_density,
)

__all__ = [name for name in dir() if not name.startswith("_")]
