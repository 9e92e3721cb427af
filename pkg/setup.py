#!/usr/bin/env python3
# encoding: utf-8
"""Quantum linear kicked rotor driven by Markovian stochastic kicks."""
from setuptools import find_packages, setup

setup(name='markovrotor',
      version='0.1.0.dev1',
      description='Quantum linear kicked rotor with Markovian kicks',
      long_description='Variance dynamics, dynamical maps and '
                       'non-Markovianity witnesses of the quantum linear '
                       'kicked rotor driven by Markovian stochastic kicks',
      author='markovrotor authors',
      license='MIT',
      packages=find_packages(exclude=['tests']),
      install_requires=[
          'attrs>=20.3.0',
          'numpy>=1.17.0',
          'scipy>=1.4.0'],
      tests_require=['tox'],
      entry_points={
          'console_scripts': ['markovrotor=markovrotor.cli:main']},
      platforms=['any'],
      zip_safe=False,
      python_requires=">=3.8",
      classifiers=[
          "Development Status :: 3 - Alpha",
          "Intended Audience :: Science/Research",
          "License :: OSI Approved :: MIT License",
          "Operating System :: OS Independent",
          "Topic :: Scientific/Engineering :: Physics",
          "Programming Language :: Python :: 3.8",
          "Programming Language :: Python :: 3.9",
          "Programming Language :: Python :: 3.10",
          "Programming Language :: Python :: 3.11"
          ])
