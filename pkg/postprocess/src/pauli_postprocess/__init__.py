"""
Post-processing for the Pauli solver's outputs.

These scripts consume only the solver's file formats (the CSV error tables
and time series, and the legacy VTK structured-points snapshots); they do not
import the solver.
"""

from .tables import ErrorTable, read_error_table, read_series
from .vtk import StructuredPoints, read_structured_points

__version__ = "0.1.0"
