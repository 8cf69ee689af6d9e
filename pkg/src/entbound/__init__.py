"""Entanglement entropy bounds for particle-number-conserving lattice systems"""
__version__ = "0.1.0"
