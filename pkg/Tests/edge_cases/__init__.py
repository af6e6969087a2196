# Edge case tests
# Boundary parameters, error hierarchy and environment handling
