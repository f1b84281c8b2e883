""" Main tanner_lcc module
"""

__version__ = '0.1'
