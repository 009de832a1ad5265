import importlib.util
import sys
from os.path import abspath, dirname, join as opj

ROOT = dirname(dirname(abspath(__file__)))

try:
    import vertisched
except ImportError:
    spec = importlib.util.spec_from_file_location('vertisched', opj(ROOT, '__init__.py'), submodule_search_locations=[ROOT])
    vertisched = importlib.util.module_from_spec(spec)
    sys.modules['vertisched'] = vertisched
    spec.loader.exec_module(vertisched)


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long randomized runs')
