"""Per-module check suites."""
