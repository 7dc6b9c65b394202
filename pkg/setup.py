#!/usr/bin/env python
# -*- coding: utf-8 -*-

from __future__ import unicode_literals

import distutils
import subprocess
from os.path import dirname, join

from setuptools import setup, find_packages


def read(*args):
    return open(join(dirname(__file__), *args)).read()


class ToxTestCommand(distutils.cmd.Command):
    """Distutils command to run tests via tox with 'python setup.py test'.

    Please note that tox installs the dependencies through poetry, the list of
    dependencies in `tests_require` in `setup.py` is ignored!
    """
    description = "Run tests via 'tox'."
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        self.announce("Running tests with 'tox'...", level=distutils.log.INFO)
        return subprocess.call(['tox'])


exec(read('balcreasoner', 'version.py'))

install_requires = [
    'lark',
    'parmap',
    'pyyaml',
    'tqdm'
]

tests_require = [
    'coverage',
    'flake8',
    'hypothesis',
    'mock',
    'pytest-cov',
    'pytest',
]

setup(
    name='balcreasoner',
    version=__version__,  # noqa
    description='Commandline reasoner for probabilistic ALC knowledge bases with context-annotated axioms',
    long_description=read('README.rst'),
    author='balcreasoner developers',
    license='MIT license',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: POSIX',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Environment :: Console',
        'Topic :: Scientific/Engineering :: Artificial Intelligence'
    ],
    python_requires='>=3.9',
    packages=find_packages(include=['balcreasoner*']),
    include_package_data=True,
    install_requires=install_requires,
    tests_require=tests_require,
    cmdclass={
        'test': ToxTestCommand,
    },
    entry_points={
        'console_scripts': [
            'balc = balcreasoner.__main__:main'
        ]
    }
)
