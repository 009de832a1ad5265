# -*- coding: utf-8 -*-
#
# vertisched documentation build configuration file.

import sys
import os
from datetime import date

from docutils.parsers.rst.directives.admonitions import Important,Danger
from sphinx.locale import admonitionlabels

admonitionlabels['important'] = 'Technical'
admonitionlabels['danger'] = 'Warning'

# Make the package importable as ``vertisched`` without installing it.
sys.path.insert(0, os.path.abspath(os.path.join('..', '..', '..')))


def setup(app):
    app.add_directive('warning', Danger)
    app.add_directive('technical', Important)


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'vertisched'
copyright = u'%i, the vertisched developers'%(date.today().year)
version = '0.1'
release = '0.1'

exclude_patterns = []
add_function_parentheses = True

html_theme = 'classic'
html_theme_options = {
    "collapsiblesidebar": "true",
    "externalrefs": "true"
}
html_title = 'vertisched documentation'
html_show_sourcelink = True
html_show_sphinx = False
htmlhelp_basename = 'vertischeddoc'

add_module_names = False
pygments_style = 'sphinx'
intersphinx_mapping = {'python3': ('http://docs.python.org/3', None)}
autodoc_default_flags = ['members']
autodoc_member_order = 'bysource'
autodoc_typehints = 'none'

rst_epilog = """
.. |init| replace:: :func:`~vertisched.core.functions.init`
.. |log| replace:: :func:`~vertisched.core.functions.log`
.. |finish| replace:: :func:`~vertisched.core.functions.finish`
.. |Settings| replace:: :class:`~vertisched.core.settings.Settings`
.. |VertiError| replace:: :exc:`~vertisched.core.errors.VertiError`
.. |FileError| replace:: :exc:`~vertisched.core.errors.FileError`
.. |BottleneckError| replace:: :exc:`~vertisched.core.errors.BottleneckError`
.. |Ticks| replace:: :class:`~vertisched.tools.ticks.Ticks`
.. |Interval| replace:: :class:`~vertisched.model.interval.Interval`
.. |Network| replace:: :class:`~vertisched.model.network.Network`
.. |Demand| replace:: :class:`~vertisched.model.demand.Demand`
.. |Journey| replace:: :class:`~vertisched.model.demand.Journey`
.. |Schedule| replace:: :class:`~vertisched.model.demand.Schedule`
.. |AuditReport| replace:: :class:`~vertisched.model.audit.AuditReport`
.. |FlowSolution| replace:: :class:`~vertisched.analysis.flow.FlowSolution`
.. |BottleneckResult| replace:: :class:`~vertisched.analysis.bottleneck.BottleneckResult`
.. |Verdict| replace:: :class:`~vertisched.analysis.conditions.Verdict`
.. |BlockTable| replace:: :class:`~vertisched.scheduler.blocktable.BlockTable`
.. |PruningRules| replace:: :class:`~vertisched.scheduler.bnb.PruningRules`
.. |SearchBudget| replace:: :class:`~vertisched.scheduler.bnb.SearchBudget`
.. |SchedulerConfig| replace:: :class:`~vertisched.scheduler.dynamic.SchedulerConfig`
.. |SchedulerState| replace:: :class:`~vertisched.scheduler.dynamic.SchedulerState`
.. |SimConfig| replace:: :class:`~vertisched.simulator.simulation.SimConfig`
.. |SimTrace| replace:: :class:`~vertisched.simulator.trace.SimTrace`
.. |TravelSampler| replace:: :class:`~vertisched.simulator.simulation.TravelSampler`
.. |nbsp| unicode:: 0xA0
   :trim:
"""
