# Integration tests
# Teleportation model against independent oracles, command line end to end
