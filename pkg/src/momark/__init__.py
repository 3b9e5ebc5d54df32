"""Black-box multi-objective optimizer benchmarking harness."""

__version__ = "0.1.0"
