# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

# tsdp documentation build configuration file.

import importlib.metadata

import enthought_sphinx_theme

# General configuration ######################################################

needs_sphinx = "3.5"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx_copybutton",
    "traits.util.trait_documenter",
]

source_suffix = ".rst"
master_doc = "index"

project = "tsdp"
copyright = "2024 Enthought, Inc., Austin, TX"
author = "Enthought"

release = importlib.metadata.version("tsdp")
version = release = ".".join(release.split(".")[:2])

language = "en"
exclude_patterns = []
pygments_style = "sphinx"
add_function_parentheses = False

# Warn about all references where the target cannot be found.
nitpicky = True
nitpick_ignore = [
    ("py:class", "scipy.sparse.csr_matrix"),
    ("py:class", "scipy.sparse.csc_matrix"),
    ("py:class", "numpy.ndarray"),
    ("py:class", "array_like"),
    ("py:class", "optional"),
]

copybutton_prompt_text = r">>> |\.\.\. |\$ "
copybutton_prompt_is_regexp = True

napoleon_preprocess_types = True
napoleon_type_aliases = {
    "ColGenOptions": ":class:`~.ColGenOptions`",
    "ColGenTrace": ":class:`~.ColGenTrace`",
    "Distribution": ":class:`~.Distribution`",
    "ILpBackend": ":class:`~.ILpBackend`",
    "IParallelContext": ":class:`~.IParallelContext`",
    "LpProblem": ":class:`~.LpProblem`",
    "LpSolution": ":class:`~.LpSolution`",
    "Perturbation": ":class:`~.Perturbation`",
    "SparseStochasticMatrix": ":class:`~.SparseStochasticMatrix`",
    "SupportSet": ":class:`~.SupportSet`",
    "TrialExecutor": ":class:`~.TrialExecutor`",
}

# Options for HTML output ####################################################

html_theme_path = [enthought_sphinx_theme.theme_path]
html_theme = "enthought"
htmlhelp_basename = "tsdpdoc"

# Options for manual page output #############################################

man_pages = [(master_doc, "tsdp", "tsdp Documentation", [author], 1)]

# Options for intersphinx ####################################################

intersphinx_mapping = {
    "numpy": ("https://numpy.org/doc/stable", None),
    "python": ("https://docs.python.org/3", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "traits": ("https://docs.enthought.com/traits", None),
}


def run_apidoc(app, config):
    """
    Hook to generate API documentation via sphinx-apidoc

    Parameters
    ----------
    app : the Sphinx application
    config : the Sphinx configuration
    """
    import pathlib

    import sphinx.ext.apidoc

    source_dir = pathlib.Path(__file__).parent
    project_root = source_dir.parent.parent
    target_dir = project_root / "tsdp"

    exclude_patterns = [target_dir / "tests" / "*.py"]

    args = [
        "--separate",
        "--no-toc",
        "-o",
        source_dir / "api",
        target_dir,
        *exclude_patterns,
    ]
    sphinx.ext.apidoc.main([str(arg) for arg in args])


def setup(app):
    app.connect("config-inited", run_apidoc)
