""" Local corrector module.
Query trees, the min-max Score dynamic program and the top level
correction of a single codeword symbol.
"""
