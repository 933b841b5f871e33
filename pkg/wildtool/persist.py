## @package wildtool
#  This module contains the Cell class and the sublevel persistence of compactly supported cohomology
#
#  For a cell (a locally closed interval I with a potential f and a shift) the sets U_r = {x in I : f(x) < r} grow with r. Every component of U_r is an interval whose compactly supported cohomology is read off its end types: an open interval carries one class in degree 1, a compact interval one class in degree 0, a half-open interval nothing. sublevelBarcode tracks these classes with a union-find sweep over the nodes of the cell (its finite endpoints, its interior anchors and its tails). sublevelDims recomputes the dimensions at a single level from an explicit decomposition of U_r and serves as the independent check.

import logging
from collections import namedtuple

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

logger = logging.getLogger(__name__)

## component types
OPEN_OPEN = "openOpen"
CLOSED_OPEN = "closedOpen"
OPEN_CLOSED = "openClosed"
CLOSED_CLOSED = "closedClosed"

## H_c table: degrees carrying one class for each component type
_HC_TABLE = {OPEN_OPEN: (1,),
             CLOSED_OPEN: (),
             OPEN_CLOSED: (),
             CLOSED_CLOSED: (0,)}

## node of the sweep path
#
#  position is the x coordinate (+-inf for tails), value the potential there (-inf for tails running off downwards), lineX the slope of the value line y -> value + lineX (y - y0) under the twist by x y (None when value is -inf)
Node = namedtuple("Node", ["position", "value", "closed", "lineX"])

## bar of the sweep with the nodes responsible for its birth and death (deathNode is None for bars that never die)
AnnotatedBar = namedtuple("AnnotatedBar", ["degree", "birth", "death", "birthNode", "deathNode"])


## EndSpec is the end of a locally closed interval
class EndSpec(namedtuple("EndSpec", ["position", "closed"])):
    __slots__ = ()

    ## The constructor of EndSpec
    #   @param position extended real
    #   @param closed   whether the end point belongs to the interval
    def __new__(cls, position, closed):
        position = wt.helpers.toExtReal(position)

        if type(closed) is not bool:
            raise TypeError("expected bool, not {0}".format(type(closed)))

        if closed and not wt.helpers.isFinite(position):
            raise ValueError("expected an open end at {0}".format(wt.helpers.formatExtReal(position)))

        return super(EndSpec, cls).__new__(cls, position, closed)


## returns the component type of an interval with the given end flags
def componentType(leftClosed, rightClosed):
    if leftClosed and rightClosed:
        return CLOSED_CLOSED
    if leftClosed:
        return CLOSED_OPEN
    if rightClosed:
        return OPEN_CLOSED
    return OPEN_OPEN

## degrees of the compactly supported cohomology of a component type
# @param ctype component type
# @return tuple of degrees, each carrying one class
def hcDegrees(ctype):
    if ctype not in _HC_TABLE:
        raise ValueError("expected a component type, not {0!r}".format(ctype))

    return _HC_TABLE[ctype]


## Cell class holds a locally closed interval with a potential and a shift
#
#  The cell models the extension by zero of S(f) restricted to the interval, shifted by shiftN: a class in degree q lands in degree q - shiftN.
class Cell(object):

    ## The constructor of Cell
    # @param self object pointer
    # @param left EndSpec of the left end
    # @param right EndSpec of the right end
    # @param potential PLFunction, only its values on the closure matter
    # @param shiftN integer shift
    def __init__(self, left, right, potential, shiftN=0):
        if not isinstance(left, EndSpec) or not isinstance(right, EndSpec):
            raise TypeError("expected EndSpec ends, not {0} and {1}".format(type(left), type(right)))

        if not isinstance(potential, wt.plfun.PLFunction):
            raise TypeError("expected PLFunction, not {0}".format(type(potential)))

        if type(shiftN) is not int:
            raise TypeError("expected integer, not {0}".format(type(shiftN)))

        if left.position > right.position:
            raise ValueError("expected left <= right, not {0} > {1}".format(
                wt.helpers.formatExtReal(left.position), wt.helpers.formatExtReal(right.position)))

        if left.position == right.position and not (left.closed and right.closed):
            raise ValueError("a degenerate cell must be a closed point, not {0}".format(
                wt.helpers.formatExtReal(left.position)))

        ## left end
        self._left = left
        ## right end
        self._right = right
        ## potential
        self._potential = potential
        ## shift
        self._shiftN = shiftN

    ## S(f) on the whole line, shifted
    @classmethod
    def line(cls, f, shiftN=0):
        return cls(EndSpec(NEG_INF, False), EndSpec(INF, False), f, shiftN)

    ## skyscraper S(value) at x, shifted
    @classmethod
    def point(cls, x, value, shiftN=0):
        end = EndSpec(x, True)
        return cls(end, end, wt.plfun.constant(value), shiftN)

    ## S(f) on the compact interval [lo, hi], shifted
    @classmethod
    def closed(cls, lo, hi, f, shiftN=0):
        return cls(EndSpec(lo, True), EndSpec(hi, True), f, shiftN)

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def potential(self):
        return self._potential

    @property
    def shiftN(self):
        return self._shiftN

    def isPoint(self):
        return self._left.position == self._right.position

    ## same interval and shift, other potential
    def withPotential(self, g):
        return Cell(self._left, self._right, g, self._shiftN)

    ## whether x lies in the interval
    def contains(self, x):
        x = wt.helpers.toRational(x)

        if x < self._left.position or (x == self._left.position and not self._left.closed):
            return False

        if x > self._right.position or (x == self._right.position and not self._right.closed):
            return False

        return True

    ## intersection of the intervals, keeping this potential and shift
    # @return Cell, or None when the intersection is empty
    def intersect(self, other):
        if not isinstance(other, Cell):
            raise TypeError("expected Cell, not {0}".format(type(other)))

        left = _innerEnd(self._left, other.left, max)
        right = _innerEnd(self._right, other.right, min)

        if left.position > right.position:
            return None

        if left.position == right.position and not (left.closed and right.closed):
            return None

        return Cell(left, right, self._potential, self._shiftN)

    def _key(self):
        return (self._left, self._right, self._potential, self._shiftN)

    def __eq__(self, other):
        if not isinstance(other, Cell):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        lb = "[" if self._left.closed else "("
        rb = "]" if self._right.closed else ")"
        return "Cell({0}{1}, {2}{3}, {4}, shift={5})".format(
            lb, wt.helpers.formatExtReal(self._left.position),
            wt.helpers.formatExtReal(self._right.position), rb,
            self._potential, self._shiftN)


## the end of an intersection: innermost position, closed only if every end at that position is
def _innerEnd(a, b, pick):
    position = pick(a.position, b.position)
    closed = all(end.closed for end in (a, b) if end.position == position)
    return EndSpec(position, closed)

def _checkCells(cells):
    if not isinstance(cells, (list, tuple)):
        raise TypeError("expected list of Cell, not {0}".format(type(cells)))

    for (i, cell) in enumerate(cells):
        if not isinstance(cell, Cell):
            raise TypeError("expected Cell, item {0} is a {1}".format(i, type(cell)))

## the tail node of an infinite end, None when the potential runs off to +inf there
def _tailNode(position, slope, neighbour):
    # outward slope: positive means the potential grows towards the end
    outward = -slope if position == NEG_INF else slope

    if outward > 0:
        return None

    if outward < 0:
        return Node(position, NEG_INF, False, None)

    return Node(position, neighbour.value, False, neighbour.lineX)

## the path of nodes of a cell, left to right
def _buildNodes(cell):
    f = cell.potential
    left = cell.left
    right = cell.right

    if cell.isPoint():
        x = left.position
        return [Node(x, wt.plfun.evaluate(f, x), True, x)]

    finite = []
    if wt.helpers.isFinite(left.position):
        finite.append(Node(left.position, wt.plfun.evaluate(f, left.position), left.closed, left.position))

    for (x, v) in f.anchors:
        if left.position < x < right.position:
            finite.append(Node(x, v, False, x))

    if wt.helpers.isFinite(right.position):
        finite.append(Node(right.position, wt.plfun.evaluate(f, right.position), right.closed, right.position))

    nodes = list(finite)

    if left.position == NEG_INF:
        tail = _tailNode(NEG_INF, f.leftSlope, finite[0])
        if tail is not None:
            nodes.insert(0, tail)

    if right.position == INF:
        tail = _tailNode(INF, f.rightSlope, finite[-1])
        if tail is not None:
            nodes.append(tail)

    return nodes

## tie-break rank of a node: local minima, then closed extremes, then the rest
def _rank(nodes, i):
    neighbours = [nodes[j].value for j in (i - 1, i + 1) if 0 <= j < len(nodes)]

    if all(v >= nodes[i].value for v in neighbours):
        return 0

    if nodes[i].closed:
        return 1

    return 2


## class carried by a component: degree, birth value and the node of birth
_Class = namedtuple("_Class", ["degree", "birth", "node"])

## _Sweep class holds the union-find state of one cell
class _Sweep(object):

    def __init__(self, nodes, leftClosed, rightClosed):
        ## path of nodes
        self._nodes = nodes
        ## whether the first and last nodes are closed ends of the cell
        self._leftClosed = leftClosed
        self._rightClosed = rightClosed
        ## union-find forest
        self._forest = {}
        ## root -> [left, right, class or None]
        self._components = {}
        ## finished bars
        self.bars = []

    def find(self, k):
        root = k
        while root != self._forest[root]:
            root = self._forest[root]

        # path compression
        node = k
        while node != self._forest[node]:
            (self._forest[node], node) = (root, self._forest[node])

        return root

    def entered(self, k):
        return k in self._forest

    def _type(self, left, right):
        last = len(self._nodes) - 1
        return componentType(left == 0 and self._leftClosed, right == last and self._rightClosed)

    def _kill(self, cls, i):
        self.bars.append(AnnotatedBar(cls.degree, cls.birth, self._nodes[i].value,
                                      self._nodes[cls.node], self._nodes[i]))

    ## the class a component of the given type is born with at node i
    def _newClass(self, ctype, i):
        degrees = hcDegrees(ctype)
        if not degrees:
            return None
        return _Class(degrees[0], self._nodes[i].value, i)

    ## node i enters the sublevel set as its own component
    def add(self, i):
        self._forest[i] = i
        self._components[i] = [i, i, self._newClass(self._type(i, i), i)]

    ## merge the components of the adjacent nodes a < b while node i enters
    def union(self, a, b, i):
        rootA = self.find(a)
        rootB = self.find(b)
        (leftA, _, clsA) = self._components.pop(rootA)
        (_, rightB, clsB) = self._components.pop(rootB)

        ctype = self._type(leftA, rightB)
        classes = [cls for cls in (clsA, clsB) if cls is not None]

        survivor = None
        if ctype == OPEN_OPEN:
            # elder rule, the leftmost birth node wins ties
            classes.sort(key=lambda cls: (cls.birth, self._nodes[cls.node].position))
            survivor = classes.pop(0)
        elif ctype == CLOSED_CLOSED:
            survivor = self._newClass(ctype, i)

        for cls in classes:
            self._kill(cls, i)

        self._forest[rootB] = rootA
        self._components[rootA] = [leftA, rightB, survivor]

    ## classes still alive after the sweep
    def survivors(self):
        bars = []
        for (_, _, cls) in self._components.values():
            if cls is not None:
                bars.append(AnnotatedBar(cls.degree, cls.birth, INF, self._nodes[cls.node], None))
        return bars

## sublevel H_c persistence of a single cell with provenance
# @param cell Cell
# @return list of AnnotatedBar, degrees already shifted, zero-length bars removed
def annotatedBarcode(cell):
    if not isinstance(cell, Cell):
        raise TypeError("expected Cell, not {0}".format(type(cell)))

    nodes = _buildNodes(cell)
    order = sorted(range(len(nodes)), key=lambda i: (nodes[i].value, _rank(nodes, i), i))

    # a closed end is finite, so it is always the first or last node
    sweep = _Sweep(nodes, cell.left.closed, cell.right.closed)
    for i in order:
        sweep.add(i)
        for j in (i - 1, i + 1):
            if 0 <= j < len(nodes) and sweep.entered(j):
                (a, b) = (min(i, j), max(i, j))
                sweep.union(a, b, i)

    bars = []
    for bar in sweep.bars + sweep.survivors():
        if bar.birth == bar.death:
            continue
        bars.append(bar._replace(degree=bar.degree - cell.shiftN))

    logger.debug("sweep over %d nodes gave %d bars", len(nodes), len(bars))

    return bars

## barcode of r -> H_c^*({x in cell : f(x) < r}), summed over the cells
# @param cells list of Cell
# @return PreWObject
def sublevelBarcode(cells):
    _checkCells(cells)

    bars = []
    for cell in cells:
        for bar in annotatedBarcode(cell):
            bars.append(wt.wcore.Bar(bar.degree, bar.birth, bar.death))

    return wt.wcore.PreWObject(bars)

## level crossings of f = r strictly inside the cell
def _roots(f, r, lo, hi):
    anchors = f.anchors
    roots = []

    (x0, v0) = anchors[0]
    if f.leftSlope != 0:
        roots.append(x0 + (r - v0) / f.leftSlope)

    for ((xa, va), (xb, vb)) in zip(anchors[:-1], anchors[1:]):
        if va != vb:
            roots.append(xa + (r - va) * (xb - xa) / (vb - va))

    (xn, vn) = anchors[-1]
    if f.rightSlope != 0:
        roots.append(xn + (r - vn) / f.rightSlope)

    return [x for x in roots if lo < x < hi]

## components of {f < r} in one cell as (leftClosed, rightClosed)
def _sublevelComponents(cell, r):
    f = cell.potential
    left = cell.left
    right = cell.right

    if cell.isPoint():
        if wt.plfun.evaluate(f, left.position) < r:
            return [(True, True)]
        return []

    points = set(x for x in f.xs if left.position < x < right.position)
    points.update(_roots(f, r, left.position, right.position))
    for end in (left, right):
        if wt.helpers.isFinite(end.position):
            points.add(end.position)
    points = sorted(points)

    # atoms left to right: (isPoint, inSet)
    atoms = []
    for (k, p) in enumerate(points):
        if k == 0:
            if left.position == NEG_INF:
                atoms.append((False, wt.plfun.evaluate(f, p - 1) < r))
        else:
            atoms.append((False, wt.plfun.evaluate(f, (points[k-1] + p) / 2) < r))

        member = cell.contains(p)
        atoms.append((True, member and wt.plfun.evaluate(f, p) < r))

    if right.position == INF:
        atoms.append((False, wt.plfun.evaluate(f, points[-1] + 1) < r))

    components = []
    run = None
    for (isPoint, inSet) in atoms:
        if inSet:
            if run is None:
                run = [isPoint, isPoint]
            run[1] = isPoint
        elif run is not None:
            components.append(tuple(run))
            run = None

    if run is not None:
        components.append(tuple(run))

    return components

## dimensions of H_c^*({f < r}) from an explicit decomposition of the sublevel sets
# @param cells list of Cell
# @param r rational level
# @return dict degree -> positive integer
def sublevelDims(cells, r):
    _checkCells(cells)
    r = wt.helpers.toRational(r)

    dims = {}
    for cell in cells:
        for (leftClosed, rightClosed) in _sublevelComponents(cell, r):
            for q in hcDegrees(componentType(leftClosed, rightClosed)):
                d = q - cell.shiftN
                dims[d] = dims.get(d, 0) + 1

    return dims
