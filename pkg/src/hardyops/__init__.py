"""Weighted composition operators W = T_psi C_phi on the Hardy space H^2.

Symbols are parsed from text (``hardyops.expr``), operators are studied on
finite sections (``hardyops.operators``) and checked against closed forms
(``hardyops.spectra``, ``hardyops.classify``).
"""

__version__ = "0.1.0"
