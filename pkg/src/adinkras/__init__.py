"""Exact toolkit for Adinkras: signed edge-colored quotients of hypercubes
by doubly even binary codes, their integer/polynomial spectra, Smith Normal
Forms and critical groups."""

__version__ = "0.1.0"
