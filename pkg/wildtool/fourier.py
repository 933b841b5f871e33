## @package wildtool
#  This module contains the WSheaf class and the Fourier transform of wild sheaves on the line
#
#  A WSheaf is a finite sum of cells. Its compactly supported cohomology piShriek is the completed sublevel barcode of its cells. The Fourier transform has kernel S(x y): its stalk at y is piShriek of the sheaf with every potential twisted by x -> x y. fourierTransform describes all stalks at once as a PiecewiseTransform, a partition of the dual line into pieces carrying bar families whose ends are PL in y.

import functools
import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np
from scipy import ndimage

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

logger = logging.getLogger(__name__)


## WSheaf class holds the cells of a constructible wild sheaf on the line
#
#  This class is the container passed to piShriek, fourierStalk and friends; an empty sheaf is the zero sheaf
class WSheaf(object):

    ## initialise WSheaf
    # @param self object pointer
    # @param cells list of Cell
    # @param name sheaf name, used in overview and plots
    def __init__(self, cells=None, name=""):
        # validate name
        if type(name) is not str:
            raise TypeError("expected string, not {0}".format(type(name)))

        ## name of sheaf
        self._name = name
        ## list holding cells
        self._cells = []

        if cells is not None:
            if not isinstance(cells, (list, tuple)):
                raise TypeError("expected list of Cell, not {0}".format(type(cells)))
            for cell in cells:
                self.addCell(cell)

    ## S(f) on the line
    @classmethod
    def sheafOf(cls, f, name=""):
        return cls([wt.persist.Cell.line(f)], name=name)

    ## the exponential local system S(x)
    @classmethod
    def exp(cls):
        return cls.sheafOf(wt.plfun.linear(1), name="exp")

    ## the zero sheaf
    @classmethod
    def zero(cls):
        return cls([], name="zero")

    ## add a cell to the sheaf
    # @param self object pointer
    # @param cell Cell
    def addCell(self, cell):
        if not isinstance(cell, wt.persist.Cell):
            raise TypeError("expected Cell, not {0}".format(type(cell)))

        self._cells.append(cell)

    ## returns a copy of the list of cells
    def getCells(self):
        return list(self._cells)

    ## returns the name of the sheaf
    def getName(self):
        return self._name

    ## prints an overview (text)
    # @param self object pointer
    def overview(self):
        print("*** overview [{0}] ***".format(self._name))

        if not self._cells:
            print("zero sheaf")

        for (i, cell) in enumerate(self._cells):
            print("{0} {1}".format(i, cell))

    def __len__(self):
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells)

    def __eq__(self, other):
        if not isinstance(other, WSheaf):
            return NotImplemented
        return self._cells == other._cells

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "WSheaf({0})".format(self._cells)


## BarFamily is a bar whose ends move with y; death is a PLFunction or INF
class BarFamily(namedtuple("BarFamily", ["degree", "birth", "death"])):
    __slots__ = ()

    def isFree(self):
        return not isinstance(self.death, wt.plfun.PLFunction)

    ## the bar at y
    def at(self, y):
        birth = wt.plfun.evaluate(self.birth, y)
        death = INF if self.isFree() else wt.plfun.evaluate(self.death, y)
        return wt.wcore.Bar(self.degree, birth, death)

    ## (degree, birth, death) at y; the bar may have zero length at a critical value
    def key(self, y):
        birth = wt.plfun.evaluate(self.birth, y)
        death = INF if self.isFree() else wt.plfun.evaluate(self.death, y)
        return (self.degree, birth, death)


## Piece is an interval of the dual line with its bar families
class Piece(namedtuple("Piece", ["left", "right", "families"])):
    __slots__ = ()

    def contains(self, y):
        if y < self.left.position or (y == self.left.position and not self.left.closed):
            return False
        if y > self.right.position or (y == self.right.position and not self.right.closed):
            return False
        return True

    def __repr__(self):
        lb = "[" if self.left.closed else "("
        rb = "]" if self.right.closed else ")"
        return "Piece({0}{1}, {2}{3}, {4} families)".format(
            lb, wt.helpers.formatExtReal(self.left.position),
            wt.helpers.formatExtReal(self.right.position), rb, len(self.families))


## PiecewiseTransform class holds the Fourier transform as pieces of the dual line
class PiecewiseTransform(object):

    ## The constructor of PiecewiseTransform
    # @param self object pointer
    # @param pieces list of Piece, ordered left to right and disjoint
    def __init__(self, pieces=()):
        pieces = list(pieces)

        for (i, piece) in enumerate(pieces):
            if not isinstance(piece, Piece):
                raise TypeError("expected Piece, item {0} is a {1}".format(i, type(piece)))

        for (a, b) in zip(pieces[:-1], pieces[1:]):
            if a.right.position > b.left.position or (
                    a.right.position == b.left.position and a.right.closed and b.left.closed):
                raise ValueError("expected disjoint ordered pieces, not {0} then {1}".format(a, b))

        ## pieces, left to right
        self._pieces = tuple(pieces)

    @property
    def pieces(self):
        return self._pieces

    ## the stalk at y
    # @param self object pointer
    # @param y rational
    # @return WObject
    def evaluate(self, y):
        y = wt.helpers.toRational(y)

        for piece in self._pieces:
            if piece.contains(y):
                return wt.wcore.WObject([family.at(y) for family in piece.families])

        return wt.wcore.WObject([])

    ## prints an overview (text)
    # @param self object pointer
    def overview(self):
        print("*** overview [PiecewiseTransform] ***")

        if not self._pieces:
            print("zero transform")

        for (i, piece) in enumerate(self._pieces):
            print("{0} {1}".format(i, piece))
            for family in piece.families:
                death = "inf" if family.isFree() else family.death
                print("    degree {0} birth {1} death {2}".format(family.degree, family.birth, death))

    def __len__(self):
        return len(self._pieces)

    def __iter__(self):
        return iter(self._pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseTransform):
            return NotImplemented
        return self._pieces == other._pieces

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "PiecewiseTransform({0})".format(list(self._pieces))


def _checkSheaf(s):
    if not isinstance(s, WSheaf):
        raise TypeError("expected WSheaf, not {0}".format(type(s)))

## compactly supported cohomology pi_!
# @param s WSheaf
# @return WObject
def piShriek(s):
    _checkSheaf(s)
    return wt.wcore.completion(wt.persist.sublevelBarcode(s.getCells()))

## the sheaf with every potential f replaced by x -> f(x) + x y
def _twist(s, y):
    return WSheaf([cell.withPotential(wt.plfun.addLinear(cell.potential, y)) for cell in s],
                  name=s.getName())

## stalk of the Fourier transform at y
# @param s WSheaf
# @param y rational
# @return WObject
def fourierStalk(s, y):
    _checkSheaf(s)
    y = wt.helpers.toRational(y)

    return piShriek(_twist(s, y))

## stalk of the kernel S(x y) at (x, y)
def kernelStalk(x, y):
    return wt.wcore.sphere(wt.helpers.toRational(x) * wt.helpers.toRational(y))

## stalk at x of the inverse transform (-1)^* F(s)[1]
def inverseTransformStalk(s, x):
    x = wt.helpers.toRational(x)
    return wt.wcore.shift(fourierStalk(s, -x), 1)

## multiplies every potential by t > 0
# @param s WSheaf
# @param t positive rational
# @return WSheaf
def scaleSheaf(s, t):
    _checkSheaf(s)
    t = wt.helpers.toRational(t)

    if t <= 0:
        raise ValueError("expected positive scale, not {0}".format(t))

    return WSheaf([cell.withPotential(wt.plfun.scaleBy(cell.potential, t)) for cell in s],
                  name=s.getName())

## finite x positions of the sweep nodes of a cell
def _nodePositions(cell):
    if cell.isPoint():
        return [cell.left.position]

    xs = [x for x in cell.potential.xs if cell.left.position < x < cell.right.position]
    for end in (cell.left, cell.right):
        if wt.helpers.isFinite(end.position):
            xs.append(end.position)

    return xs

## dual values where the sweep of some cell changes
# @param s WSheaf
# @return sorted list of rationals
def criticalValues(s):
    _checkSheaf(s)

    ys = set()
    for cell in s:
        f = cell.potential
        lines = [(x, wt.plfun.evaluate(f, x)) for x in _nodePositions(cell)]

        # crossings of the value lines v + x y
        for (i, (xi, vi)) in enumerate(lines):
            for (xj, vj) in lines[i+1:]:
                ys.add((vj - vi) / (xi - xj))

        # tails change kind where the twisted end slope vanishes
        if cell.left.position == NEG_INF:
            ys.add(-f.leftSlope)
        if cell.right.position == INF:
            ys.add(-f.rightSlope)

    return sorted(ys)

## the value line of a node through its value at y0
def _nodeLine(node, y0):
    return wt.plfun.PLFunction([(y0, node.value)], node.lineX, node.lineX)

## completed families of the twisted sheaf at y0, extended along the node lines
def _familiesAt(s, y0):
    families = []

    for cell in _twist(s, y0):
        for bar in wt.persist.annotatedBarcode(cell):
            if bar.birth != NEG_INF:
                death = INF if bar.deathNode is None else _nodeLine(bar.deathNode, y0)
                families.append(BarFamily(bar.degree, _nodeLine(bar.birthNode, y0), death))
            elif bar.deathNode is not None:
                # completion turns (-inf, b)_d into [b, inf)_{d-1}
                families.append(BarFamily(bar.degree - 1, _nodeLine(bar.deathNode, y0), INF))

    return families

## elementary pieces: open gaps between critical values and the critical points themselves
def _elementaryPieces(s):
    ys = criticalValues(s)

    if not ys:
        return [(wt.persist.EndSpec(NEG_INF, False), wt.persist.EndSpec(INF, False), Fraction(0))]

    pieces = [(wt.persist.EndSpec(NEG_INF, False), wt.persist.EndSpec(ys[0], False), ys[0] - 1)]

    for (k, c) in enumerate(ys):
        pieces.append((wt.persist.EndSpec(c, True), wt.persist.EndSpec(c, True), c))
        upper = ys[k+1] if k + 1 < len(ys) else None
        if upper is None:
            pieces.append((wt.persist.EndSpec(c, False), wt.persist.EndSpec(INF, False), c + 1))
        else:
            pieces.append((wt.persist.EndSpec(c, False), wt.persist.EndSpec(upper, False), (c + upper) / 2))

    return pieces

def _boundaryKeys(families, c, slopeOf):
    return sorted(families, key=lambda fam: (fam.key(c), slopeOf(fam.birth),
                                             0 if fam.isFree() else slopeOf(fam.death)))

## glues the families of the current piece to those of the gap starting at c
def _glueFamilies(current, following, c):
    left = _boundaryKeys(current, c, lambda f: f.rightSlope)
    right = _boundaryKeys(following, c, lambda f: f.leftSlope)

    glued = []
    for (a, b) in zip(left, right):
        birth = wt.plfun.glue(a.birth, b.birth, c)
        death = INF if a.isFree() else wt.plfun.glue(a.death, b.death, c)
        glued.append(BarFamily(a.degree, birth, death))

    return glued

def _sameStalk(a, b, c):
    return sorted(fam.key(c) for fam in a) == sorted(fam.key(c) for fam in b)

## Fourier transform as a piecewise description of all stalks
# @param s WSheaf
# @return PiecewiseTransform
def fourierTransform(s):
    _checkSheaf(s)

    merged = []
    current = None

    for (left, right, sample) in _elementaryPieces(s):
        families = _familiesAt(s, sample)

        if not families:
            if current is not None:
                merged.append(current)
            current = None
            continue

        if current is not None:
            c = left.position
            if left.closed and _sameStalk(current.families, families, c):
                # the critical point only closes the current piece
                current = Piece(current.left, right, current.families)
                continue
            if not left.closed and current.right.closed and _sameStalk(current.families, families, c):
                current = Piece(current.left, right, tuple(_glueFamilies(current.families, families, c)))
                continue
            merged.append(current)

        current = Piece(left, right, tuple(families))

    if current is not None:
        merged.append(current)

    logger.debug("fourierTransform: %d pieces", len(merged))

    return PiecewiseTransform(merged)

## the sheaf whose cells are the pieces of a transform
# @param t PiecewiseTransform
# @return WSheaf
#
# every piece must carry exactly one family and it must never die
def toWSheaf(t):
    if not isinstance(t, PiecewiseTransform):
        raise TypeError("expected PiecewiseTransform, not {0}".format(type(t)))

    cells = []
    for piece in t:
        if len(piece.families) != 1 or not piece.families[0].isFree():
            raise ValueError("not cell-representable: {0}".format(piece))

        family = piece.families[0]
        cells.append(wt.persist.Cell(piece.left, piece.right, family.birth, -family.degree))

    return WSheaf(cells, name="transform")

def _checkConvex(f):
    if not isinstance(f, wt.plfun.PLFunction):
        raise TypeError("expected PLFunction, not {0}".format(type(f)))

    if not wt.plfun.isConvex(f):
        raise ValueError("requires convex input; apply convexHull first")

## probes around the anchors of f and their negatives
def _inversionProbes(f):
    xs = f.xs
    return wt.helpers.getProbes(xs + [-x for x in xs])

## checks that transforming twice gives back (-1)^* S(f)[-1]
# @param f convex PLFunction
# @return bool
def checkInversion(f):
    _checkConvex(f)

    back = toWSheaf(fourierTransform(WSheaf.sheafOf(f)))

    for x in _inversionProbes(f):
        expected = wt.wcore.WObject([wt.wcore.Bar(1, wt.plfun.evaluate(f, -x), INF)])
        if fourierStalk(back, x) != expected:
            logger.info("inversion fails at %s", x)
            return False

    return True

## product over t of cellA at t and cellB at x - t
def _productCell(cellA, cellB, x):
    left = wt.persist.EndSpec(x - cellB.right.position, cellB.right.closed)
    right = wt.persist.EndSpec(x - cellB.left.position, cellB.left.closed)

    reflected = wt.plfun.translate(wt.plfun.reflect(cellB.potential), x)
    potential = wt.plfun.add(cellA.potential, reflected)

    product = wt.persist.Cell(left, right, potential, cellA.shiftN + cellB.shiftN)
    return product.intersect(cellA)

## stalk at x of the convolution of two sheaves
# @param a WSheaf
# @param b WSheaf
# @param x rational
# @return WObject
def convolveStalk(a, b, x):
    _checkSheaf(a)
    _checkSheaf(b)
    x = wt.helpers.toRational(x)

    cells = []
    for cellA in a:
        for cellB in b:
            product = _productCell(cellA, cellB, x)
            if product is not None:
                cells.append(product)

    return piShriek(WSheaf(cells))

## checks that the transform turns convolution into tensor product
# @param f convex PLFunction
# @param g convex PLFunction
# @param probes list of rational dual points
# @return bool
def checkIntertwining(f, g, probes):
    _checkConvex(f)
    _checkConvex(g)

    sf = WSheaf.sheafOf(f)
    sg = WSheaf.sheafOf(g)

    try:
        h = wt.plfun.infConv(f, g)
    except ValueError:
        # conjugate domains are disjoint, the convolution vanishes
        convolution = WSheaf.zero()
        for x in wt.helpers.getProbes(f.xs + g.xs):
            if not convolveStalk(sf, sg, x).isZero():
                logger.info("convolution of disjoint conjugate domains is nonzero at %s", x)
                return False
    else:
        convolution = WSheaf([wt.persist.Cell.line(h, -1)])
        for x in wt.helpers.getProbes(h.xs):
            expected = wt.wcore.WObject([wt.wcore.Bar(1, wt.plfun.evaluate(h, x), INF)])
            if convolveStalk(sf, sg, x) != expected:
                logger.info("convolution stalk differs from the infimal convolution at %s", x)
                return False

    for y in probes:
        lhs = fourierStalk(convolution, y)
        rhs = wt.wcore.tensor(fourierStalk(sf, y), fourierStalk(sg, y))
        if lhs != rhs:
            logger.info("intertwining fails at %s", y)
            return False

    return True

## pi_! of an external product: the tensor product of the pi_! of the factors
# @param sheaves list of WSheaf
# @return WObject
def kunneth(sheaves):
    if not isinstance(sheaves, (list, tuple)):
        raise TypeError("expected list of WSheaf, not {0}".format(type(sheaves)))

    return functools.reduce(wt.wcore.tensor, [piShriek(s) for s in sheaves], wt.wcore.unit())

## grid axis: uniform points of [lo, hi] plus the anchors of f inside it
def _gridAxis(f, lo, hi, step):
    n = int((hi - lo) / step)
    points = set(lo + k * step for k in range(n + 1))
    points.update(x for x in f.xs if lo <= x <= hi)
    return sorted(points)

## components of {f(x) + g(y) < r} on a rational grid
# @param f PLFunction in x
# @param g PLFunction in y
# @param r rational level
# @param lo lower grid bound, the square [lo, hi]^2 must contain the sublevel set
# @param hi upper grid bound
# @param step grid step
# @return dict {2: number of components}, empty when there are none
#
# anchors are added to the grid, so f(x) + g(y) is affine on every grid square and the grid components are exactly the components of the sublevel set
def externalGridDims(f, g, r, lo, hi, step):
    r = wt.helpers.toRational(r)
    lo = wt.helpers.toRational(lo)
    hi = wt.helpers.toRational(hi)
    step = wt.helpers.toRational(step)

    if step <= 0 or lo > hi:
        raise ValueError("expected lo <= hi and a positive step, not [{0}, {1}] step {2}".format(lo, hi, step))

    fx = [wt.plfun.evaluate(f, x) for x in _gridAxis(f, lo, hi, step)]
    gy = [wt.plfun.evaluate(g, y) for y in _gridAxis(g, lo, hi, step)]

    # common denominator, then exact integer comparison
    D = int(np.lcm.reduce([v.denominator for v in fx + gy + [r]]))
    fint = np.array([int(v * D) for v in fx], dtype=np.int64)
    gint = np.array([int(v * D) for v in gy], dtype=np.int64)

    mask = np.add.outer(fint, gint) < int(r * D)
    (_, ncomponents) = ndimage.label(mask)

    if ncomponents == 0:
        return {}

    return {2: int(ncomponents)}
