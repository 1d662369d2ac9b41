"""Resonator-mediated state transduction between a superconducting qubit and a trapped atom."""

__version__ = "0.1.0"
