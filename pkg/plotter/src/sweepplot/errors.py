"""Exception types for the plotting tool."""


class PlotError(Exception):
    """Base class for plotting failures."""


class ValidationError(PlotError):
    """Bad plot spec or unusable data: unknown kind, missing or non-numeric
    columns, empty tables."""
