# Tests package for the quantum-scissors teleportation simulator
# Unit, integration, edge-case and performance suites

__version__ = "1.0.0"
