"""Link-level simulator of a 60 GHz link with ground-reflection blockage recovery."""

__version__ = "1.0.0"
