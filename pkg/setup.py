from setuptools import setup, find_packages
import sys, os

version = '0.1'

try:
    with open("requirements.txt", "r") as f:
        install_requires = [x.strip() for x in f.readlines()]
except IOError:
    install_requires = []

setup(name='tanner_lcc',
      version=version,
      description="Tanner codes on expander double covers with local correction",
      long_description='This package builds Tanner codes from smooth inner codes '
                       'and random regular expanders, and corrects single codeword '
                       'symbols by reading a small random query tree.',
      keywords='coding-theory locally-correctable-codes expanders',
      license='MIT',
      packages=find_packages(exclude=['ez_setup', 'examples', 'tests']),
      include_package_data=True,
      package_data={'tanner_lcc': ['templates/*.md']},
      zip_safe=False,
      scripts=['scripts/tanner_lcc'],
      install_requires=install_requires
      )
