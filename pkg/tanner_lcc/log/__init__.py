""" tanner_lcc logging module
"""
