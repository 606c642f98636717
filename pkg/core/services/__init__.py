"""
Core services package.
"""