#! /usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

setup(
    name='hardy-ladder-lab',
    version='0.1.0',
    description='Desk-scale laboratory for Hardy ladder tests with energy-time entangled photons',
    packages=['hardy_lib'],
    python_requires='>=3.8',
    install_requires=['numpy>=1.17'],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['hardy-lab=hardy_lib.cli:main'],
    },
    zip_safe=False
)
