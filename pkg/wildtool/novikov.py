## @package wildtool
#  This module contains the Novikov presentations of bars and the truncated Koszul oracle
#
#  A bar [a, b) in degree d is the cyclic module T^a Lambda / T^b Lambda over the Novikov ring Lambda. The derived tensor product of two such modules is computed here from scratch: the resolution 0 -> Lambda -(T^l1)-> Lambda of Lambda / T^l1 is tensored with Lambda / T^l2, and the homology of the resulting two-term complex is read off weight by weight over a finite grid of exponents. Nothing in this module uses the barcode algebra of wcore.

import logging
from collections import namedtuple

import numpy as np

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

logger = logging.getLogger(__name__)


## NovikovPresentation is the module T^offset Lambda / T^(offset + length) Lambda in a degree
class NovikovPresentation(namedtuple("NovikovPresentation", ["offset", "length", "degree"])):
    __slots__ = ()

    def __new__(cls, offset, length, degree):
        offset = wt.helpers.toRational(offset)
        length = wt.helpers.toExtReal(length)

        if type(degree) is not int:
            raise TypeError("expected integer degree, not {0}".format(type(degree)))

        if not length > 0:
            raise ValueError("expected positive length, not {0}".format(wt.helpers.formatExtReal(length)))

        return super(NovikovPresentation, cls).__new__(cls, offset, length, degree)


## TruncatedGrid is the exponent grid {0, step, 2 step, ..., bound}
class TruncatedGrid(namedtuple("TruncatedGrid", ["step", "bound"])):
    __slots__ = ()

    def __new__(cls, step, bound):
        step = wt.helpers.toRational(step)
        bound = wt.helpers.toRational(bound)

        if step <= 0 or bound <= 0:
            raise ValueError("expected positive step and bound, not {0} and {1}".format(step, bound))

        if (bound / step).denominator != 1:
            raise ValueError("grid too coarse: step {0} does not divide bound {1}".format(step, bound))

        return super(TruncatedGrid, cls).__new__(cls, step, bound)

    ## number of grid points
    def size(self):
        return int(self.bound / self.step) + 1

    ## grid points, ascending
    def points(self):
        return [k * self.step for k in range(self.size())]


## presentation of a bar
# @param bar Bar with finite birth
# @return NovikovPresentation
def barToModule(bar):
    if not isinstance(bar, wt.wcore.Bar):
        raise TypeError("expected Bar, not {0}".format(type(bar)))

    if bar.birth == NEG_INF:
        raise ValueError("expected finite birth, not {0}".format(bar))

    return NovikovPresentation(bar.birth, bar.death - bar.birth, bar.degree)

## bar of a presentation
# @param p NovikovPresentation
# @return Bar
def moduleToBar(p):
    if not isinstance(p, NovikovPresentation):
        raise TypeError("expected NovikovPresentation, not {0}".format(type(p)))

    return wt.wcore.Bar(p.degree, p.offset, p.offset + p.length)

## a length as a number of grid steps, None for +inf
def _steps(l, grid):
    l = wt.helpers.toExtReal(l)

    if l == INF:
        return None

    if l <= 0:
        raise ValueError("expected positive length, not {0}".format(l))

    k = l / grid.step
    if k.denominator != 1:
        raise ValueError("grid too coarse: step {0} does not divide {1}".format(grid.step, l))

    return int(k)

## grid exponents of the monomials spanning Lambda / T^l, k is l in steps or None
def _quotientBasis(k, n):
    return [j for j in range(n + 1) if k is None or j < k]

## homology of Lambda / T^l1 (x) Lambda / T^l2 over the truncated grid
# @param l1 positive rational or INF
# @param l2 positive rational or INF
# @param grid TruncatedGrid
# @return dict {0: numpy int array (Tor_0), -1: numpy int array (Tor_1)} indexed by grid points
def truncatedKoszulHomology(l1, l2, grid):
    if not isinstance(grid, TruncatedGrid):
        raise TypeError("expected TruncatedGrid, not {0}".format(type(grid)))

    k1 = _steps(l1, grid)
    k2 = _steps(l2, grid)
    n = grid.size() - 1

    if sum(k for k in (k1, k2) if k is not None) > n:
        raise ValueError("grid too coarse: l1 + l2 exceeds the bound {0}".format(grid.bound))

    # target Lambda / T^l2: monomials T^j, weight j
    rows = _quotientBasis(k2, n)
    # source T^l1 Lambda / T^l2: monomials e T^k of weight k + l1; T^inf acts by zero
    if k1 is None:
        cols = []
    else:
        cols = [k for k in _quotientBasis(k2, n) if k + k1 <= n]

    D = np.zeros((len(rows), len(cols)), dtype=int)
    for (c, k) in enumerate(cols):
        j = k + k1
        if k2 is None or j < k2:
            D[j, c] = 1

    rowWeights = np.array(rows, dtype=int)
    colWeights = np.array([k + k1 for k in cols], dtype=int)

    tor0 = np.zeros(n + 1, dtype=int)
    tor1 = np.zeros(n + 1, dtype=int)

    for w in range(n + 1):
        r = np.flatnonzero(rowWeights == w)
        c = np.flatnonzero(colWeights == w)
        block = D[np.ix_(r, c)]
        rank = np.linalg.matrix_rank(block) if block.size > 0 else 0
        tor0[w] = len(r) - rank
        tor1[w] = len(c) - rank

    logger.debug("koszul oracle l1=%s l2=%s on %d weights", l1, l2, n + 1)

    return {0: tor0, -1: tor1}

## graded Euler characteristic Tor_0 - Tor_1 of the oracle
def koszulEuler(l1, l2, grid):
    homology = truncatedKoszulHomology(l1, l2, grid)
    return homology[0] - homology[-1]

## inclusion-exclusion count 1 - [w >= l1] - [w >= l2] + [w >= l1 + l2] over the grid
def overlapEuler(l1, l2, grid):
    w = np.array(grid.points(), dtype=object)
    l1 = wt.helpers.toExtReal(l1)
    l2 = wt.helpers.toExtReal(l2)

    count = np.ones(len(w), dtype=int)
    count -= (w >= l1).astype(int)
    count -= (w >= l2).astype(int)
    count += (w >= l1 + l2).astype(int)

    return count

## dimension of a presentation at each grid weight
# @param p NovikovPresentation
# @param grid TruncatedGrid
# @return numpy int array
def presentationDims(p, grid):
    if not isinstance(p, NovikovPresentation):
        raise TypeError("expected NovikovPresentation, not {0}".format(type(p)))

    w = np.array(grid.points(), dtype=object)
    top = p.offset + p.length

    return ((w >= p.offset) & (w < top)).astype(int)

## checks that rescaling by t commutes with the tensor product
# @param t positive rational
# @param pairs list of (Bar, Bar)
# @return bool
def scaleCompatibility(t, pairs):
    for (a, b) in pairs:
        A = wt.wcore.WObject([a])
        B = wt.wcore.WObject([b])
        lhs = wt.wcore.scale(wt.wcore.tensor(A, B), t)
        rhs = wt.wcore.tensor(wt.wcore.scale(A, t), wt.wcore.scale(B, t))
        if not wt.wcore.isoEqual(lhs, rhs):
            return False

    return True
