#

from setuptools import setup

setup(name='wildtool',
      version='1.0',
      description='exact barcodes, wild sheaves on the line and their Fourier transform',
      packages=['wildtool'],
      install_requires=['numpy',
                        'scipy',
                        'matplotlib'],
      extras_require={'test': ['pytest', 'pytest-cov', 'coverage']},
      entry_points={'console_scripts': ['wildtool=wildtool.cli:main']}
      )
