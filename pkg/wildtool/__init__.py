## namespaces within wildtool
__all__ = ['helpers', 'wcore', 'plfun', 'persist', 'fourier', 'novikov', 'serial', 'visual_2d', 'verify', 'cli']

from wildtool import helpers
from wildtool import wcore
from wildtool import plfun
from wildtool import persist
from wildtool import fourier
from wildtool import novikov
from wildtool import serial

from wildtool import visual_2d
from wildtool import verify
from wildtool import cli

from wildtool.fourier import WSheaf
from wildtool.helpers import getDistinctColours
