#!/usr/bin/env python
#
# specpinn documentation build configuration file.
#
# API pages are regenerated with sphinx-apidoc on every build.

import os
import sys

from sphinx.ext.apidoc import main

sys.path.insert(0, os.path.abspath(".."))

import specpinn  # noqa: E402

# -- General configuration ---------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
    "sphinxcontrib.autodoc_pydantic",
]

napoleon_google_docstring = False
autodoc_inherit_docstrings = True
autodoc_preserve_defaults = True
autoclass_content = "both"
autodoc_pydantic_model_show_json = False

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "Specpinn"
copyright = "2024, Specpinn Developers"
author = "Specpinn Developers"
version = specpinn.__version__
release = specpinn.__version__
language = "en"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

# -- Options for HTML output -------------------------------------------

html_theme = "pydata_sphinx_theme"
html_static_path = ["_static"]
htmlhelp_basename = "specpinndoc"

# -- Options for LaTeX and manual pages --------------------------------

latex_documents = [
    (master_doc, "specpinn.tex", "Specpinn Documentation", author, "manual"),
]
man_pages = [
    (master_doc, "specpinn", "Specpinn Documentation", [author], 1),
]

main(["-o", "./", "../specpinn", "--force"])
