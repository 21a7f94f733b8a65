"""Clinic and pharmacy e-prescription services over a simulated GSM link."""

__version__ = "0.1.0"
