""" Graphs module.
Regular expander graphs, double covers and random walks on them.
"""
