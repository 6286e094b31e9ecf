"""Minimum common string partition solvers: MAX-MIN ant system, greedy baseline, exact oracle."""
