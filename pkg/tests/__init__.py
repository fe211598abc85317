"""
Test package for quasi-arithmetic mean distances.
"""
# This file makes the tests directory a Python package
