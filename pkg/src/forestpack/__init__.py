"""forestpack - Steiner forest packing toolkit for multigraphs.

Package metadata used for CLI identification and version tracking.
"""

__version__ = "0.3.0"
__prog_name__ = "forestpack"
