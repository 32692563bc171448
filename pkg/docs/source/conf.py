# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

import sys
import os
project = 'qsymplectic'
copyright = '2026, qsymplectic developers'
author = 'qsymplectic developers'
release = '0.1.0'

# -- General configuration ---------------------------------------------------

templates_path = ['_templates']
exclude_patterns = []

extensions = ['sphinx_rtd_theme',
              'sphinx.ext.autodoc',
              'sphinx.ext.napoleon',
              'sphinx.ext.viewcode',
              'sphinx.ext.autosummary',
              'myst_parser'
              ]

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

sys.path.insert(0, os.path.abspath('../../src'))
