"""Cryptanalysis workbench for the simplified DES teaching cipher."""

__version__ = "0.1.0"
