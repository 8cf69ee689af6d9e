import pytest


def test_entbound_import():
    try:
        import entbound  # noqa: F401
        assert True
    except ImportError:
        pytest.fail("Failed to import 'entbound' module.")


def test_entbound_core_config_import():
    try:
        from entbound.core import config  # noqa: F401
        assert True
    except ImportError:
        pytest.fail("Failed to import 'entbound.core.config' module.")


def test_entbound_services_import():
    try:
        from entbound.services import (  # noqa: F401
            entanglement_measures,
            fock_basis,
            lattice_hamiltonian,
            phase_maximizer,
            quantum_states,
            sector_combinatorics,
        )
        assert True
    except ImportError:
        pytest.fail("Failed to import 'entbound.services' modules.")


def test_entbound_orchestrator_import():
    try:
        from entbound.orchestrator import SweepOrchestrator  # noqa: F401
        assert True
    except ImportError:
        pytest.fail("Failed to import 'entbound.orchestrator' module.")


def test_entbound_main_import():
    try:
        from entbound.main import main, run  # noqa: F401
        assert True
    except ImportError:
        pytest.fail("Failed to import 'entbound.main' module.")
