""" Experiment module.
Noise injection, Monte-Carlo suites and the experiment report.
"""
