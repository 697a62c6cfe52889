from .aggregate import GroupSeries, SchemaError, aggregate, read_rows
from .render import PlotSpec, render

__version__ = "0.1.0"

__all__ = [
    "GroupSeries",
    "SchemaError",
    "aggregate",
    "read_rows",
    "PlotSpec",
    "render",
    "__version__",
]
