from setuptools import setup, find_packages
from os.path import join as opj

packages = ['vertisched'] + ['vertisched.'+i for i in find_packages('.') if not i.startswith(('unit_tests', 'doc'))]

description = "vertisched computes departure schedules for urban air mobility networks whose vertiports and vertistops have a limited number of landing spots. Travel times are only known to lie in intervals, and every schedule it emits keeps each node within capacity under worst-case travel times while minimizing the total slack between deadlines and departures.\n\nBesides the event-triggered scheduler it offers throughput and bottleneck analysis of a network, an exact reference solver for small instances, and a seeded simulator that replays schedules with random travel times."

setup(
    name             = 'vertisched',
    version          = '0.1',
    license          = 'LGPLv3',
    description      = 'Capacity-aware scheduling of urban air mobility flights',
    long_description = description,
    classifiers      = [
            'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
            'Development Status :: 3 - Alpha',
            'Intended Audience :: Science/Research',
            'Operating System :: OS Independent',
            'Programming Language :: Python :: 3.7',
            'Topic :: Scientific/Engineering',
            'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    keywords         = ['urban air mobility', 'scheduling', 'branch and bound', 'discrete event simulation'],
    python_requires  = '>=3.7',
    install_requires = ['dill>=0.2.4', 'numpy', 'networkx'],
    extras_require   = {'test': ['pytest']},
    packages         = packages,
    package_dir      = {'vertisched': '.'},
    package_data     = {'vertisched' : ['vertisched_defaults', 'cases/*.json', 'cases/*.rst']},
    scripts          = [opj('scripts','vertisched')]
)
