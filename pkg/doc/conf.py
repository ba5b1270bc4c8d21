# -*- coding: utf-8 -*-
#
# entlab documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os
from datetime import datetime

# -- Path setup -----------------------------------------------------------

sys.path.insert(0, os.path.abspath('../'))
from entlab import __version__

# -- General configuration ------------------------------------------------

needs_sphinx = '3.0'

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.todo',
              'sphinx.ext.coverage',
              'sphinx.ext.viewcode',
              'sphinx.ext.mathjax',
              'sphinx.ext.napoleon',
              'sphinx.ext.autosectionlabel',
              ]

napoleon_google_docstring = False
napoleon_use_param = False
napoleon_use_ivar = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'entlab'
copyright = f"2026-{datetime.now().year}, the entlab development team"
author = u'the entlab development team'

version = __version__
release = __version__

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = True

autodoc_member_order = 'bysource'
autosummary_generate = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'pydata_sphinx_theme'
html_theme_options = {
    "use_edit_page_button": False,
    "search_bar_position": "sidebar"
}
html_sidebars = {}
html_show_sourcelink = True
html_show_sphinx = True
html_show_copyright = True
html_short_title = "entlab"
htmlhelp_basename = 'entlabdoc'
