"""Observables of an RPTS along a time grid, for the ``evolve`` subcommand"""
from typing import Sequence

import numpy as np
import pandas as pd
from loguru import logger

from entbound.models.hamiltonian import SpectralData
from entbound.models.states import StateVector
from entbound.services.entanglement_measures import (
    number_distribution,
    renyi_from_spectrum,
    sector_schmidt,
    von_neumann_entropy,
)
from entbound.services.quantum_states import energy_expectation, evolve
from entbound.services.sector_combinatorics import closed_system_bound

ENERGY_DRIFT_TOL = 1e-9


def evolution_trace(state: StateVector, spectral: SpectralData, taus: Sequence[float]) -> pd.DataFrame:
    """One row per tau: S1, S2, bound, p_nA per sector and <H>"""
    bound = closed_system_bound(spectral.basis.spec)
    records = []
    for tau in taus:
        psi = evolve(state, spectral, float(tau))
        spectrum = sector_schmidt(psi).spectrum
        record = {
            "tau": float(tau),
            "S1_nats": von_neumann_entropy(spectrum),
            "S2_nats": renyi_from_spectrum(spectrum, 2.0),
            "bound_nats": bound,
        }
        for n_a, p in number_distribution(psi).probabilities:
            record[f"p_nA_{n_a}"] = p
        record["energy"] = energy_expectation(psi, spectral)
        records.append(record)
    frame = pd.DataFrame.from_records(records)
    drift = float(frame["energy"].max() - frame["energy"].min())
    if drift > ENERGY_DRIFT_TOL:
        logger.warning(f"energy drifted by {drift:.3e} along the trace")
    else:
        logger.debug(f"energy drift along the trace: {drift:.3e}")
    return frame
