""" Codes module.
Place for the algebra: finite fields, linear codes over GF(p), smooth
reconstruction schemes, affine geometry inner codes and the Tanner codes
built from them.
"""
