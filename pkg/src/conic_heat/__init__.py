"""Heat-trace workbench for surfaces of revolution with conic tips."""

__version__ = "0.1.0"

# Bumped whenever the eigenvalue solver changes numerically; part of cache keys.
SOLVER_VERSION = "collocation-pruefer-1"
