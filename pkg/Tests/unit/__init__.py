# Unit tests
# One package of the simulator at a time
