# Performance tests
# Acceptance checks with runtime budgets
