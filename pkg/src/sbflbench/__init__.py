"""Fault-localization suitability benchmarking for test suites, on an embedded mini-language."""
__version__ = "0.1.0"
