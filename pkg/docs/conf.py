# -*- coding: utf-8 -*-
#
# Sphinx configuration of the BALC Reasoner documentation.

import os
import sys

from recommonmark.parser import CommonMarkParser

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

meta = {}
exec(open(os.path.join(project_root, 'balcreasoner', 'version.py')).read(), {}, meta)

project = u'BALC Reasoner'
copyright = u'2024, balcreasoner developers'
version = meta['__version__']
release = meta['__version__']

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']

source_parsers = {
    '.md': CommonMarkParser,
}
source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = ['_build']

pygments_style = 'sphinx'
html_theme = 'sphinx_rtd_theme'
