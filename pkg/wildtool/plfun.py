## @package wildtool
#  This module contains the PLFunction class and the exact piecewise-linear calculus on the real line
#
#  A PLFunction is given by anchors (x, value) with strictly increasing rational x, linear interpolation in between, and two end slopes that extend it to the whole line. The representation is normalized: an anchor is kept only where the slope actually changes; an affine function keeps a single anchor at x = 0.
#
#  The Legendre transform follows the sign convention f*(y) = inf_x (f(x) + x y); the conjugate is concave.

import bisect
import logging
from collections import namedtuple
from fractions import Fraction

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

logger = logging.getLogger(__name__)

## event kinds of a critical profile
LOCAL_MIN = "localMin"
LOCAL_MAX = "localMax"
PLATEAU = "plateau"
TAIL_FINITE = "tailToFiniteLimit"
TAIL_MINUS_INF = "tailToMinusInfinity"
TAIL_PLUS_INF = "tailToPlusInfinity"

## a critical event; plateaus run from x to xEnd, other events have x == xEnd
CriticalEvent = namedtuple("CriticalEvent", ["x", "kind", "value", "xEnd"])

## the Legendre conjugate: finite exactly on [lo, hi], given there by function
Conjugate = namedtuple("Conjugate", ["lo", "hi", "function"])


## PLFunction class holds an exact piecewise-linear function on the real line
class PLFunction(object):

    ## The constructor of PLFunction
    # @param self object pointer
    # @param anchors nonempty list of (x, value) with strictly increasing x
    # @param leftSlope slope on (-inf, first anchor]
    # @param rightSlope slope on [last anchor, +inf)
    def __init__(self, anchors, leftSlope, rightSlope):
        if not isinstance(anchors, (list, tuple)):
            raise TypeError("expected list of anchors, not {0}".format(type(anchors)))

        if len(anchors) == 0:
            raise ValueError("expected at least one anchor")

        points = []
        for (i, anchor) in enumerate(anchors):
            if not isinstance(anchor, (list, tuple)) or len(anchor) != 2:
                raise TypeError("expected (x, value), item {0} is a {1}".format(i, type(anchor)))
            points.append((wt.helpers.toRational(anchor[0]),
                           wt.helpers.toRational(anchor[1])))

        for (a, b) in zip(points[:-1], points[1:]):
            if not a[0] < b[0]:
                raise ValueError("expected strictly increasing anchors, not {0} then {1}".format(a[0], b[0]))

        leftSlope = wt.helpers.toRational(leftSlope)
        rightSlope = wt.helpers.toRational(rightSlope)

        ## normalized anchors
        self._anchors = _normalize(points, leftSlope, rightSlope)
        ## slope on the left tail
        self._leftSlope = leftSlope
        ## slope on the right tail
        self._rightSlope = rightSlope

    @property
    def anchors(self):
        return self._anchors

    @property
    def leftSlope(self):
        return self._leftSlope

    @property
    def rightSlope(self):
        return self._rightSlope

    ## anchor positions
    @property
    def xs(self):
        return [x for (x, _) in self._anchors]

    ## anchor values
    @property
    def values(self):
        return [v for (_, v) in self._anchors]

    def __call__(self, x):
        return evaluate(self, x)

    def _key(self):
        return (self._anchors, self._leftSlope, self._rightSlope)

    def __eq__(self, other):
        if not isinstance(other, PLFunction):
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
        anchors = ", ".join("({0}, {1})".format(x, v) for (x, v) in self._anchors)
        return "PLFunction([{0}], {1}, {2})".format(anchors, self._leftSlope, self._rightSlope)


def _segmentSlope(a, b):
    return (b[1] - a[1]) / (b[0] - a[0])

## drops anchors where the slope does not change
def _normalize(points, leftSlope, rightSlope):
    n = len(points)
    keep = []

    for i in range(n):
        before = leftSlope if i == 0 else _segmentSlope(points[i-1], points[i])
        after = rightSlope if i == n - 1 else _segmentSlope(points[i], points[i+1])
        if before != after:
            keep.append(points[i])

    if not keep:
        # affine: a single anchor at the origin
        (x0, v0) = points[0]
        keep = [(Fraction(0), v0 - leftSlope * x0)]

    return tuple(keep)

def _checkFunction(f):
    if not isinstance(f, PLFunction):
        raise TypeError("expected PLFunction, not {0}".format(type(f)))

## constant function
def constant(c):
    return PLFunction([(0, c)], 0, 0)

## affine function x -> slope x + intercept
def linear(slope, intercept=0):
    return PLFunction([(0, intercept)], slope, slope)

## the absolute value |x|
def absolute():
    return PLFunction([(0, 0)], -1, 1)

## build a PLFunction from points and end slopes, points need not be sorted
def fromPoints(points, leftSlope, rightSlope):
    return PLFunction(sorted((wt.helpers.toRational(x), wt.helpers.toRational(v)) for (x, v) in points),
                      leftSlope, rightSlope)

## exact value of f at x
# @param f PLFunction
# @param x rational
# @return rational
def evaluate(f, x):
    _checkFunction(f)
    x = wt.helpers.toRational(x)

    anchors = f.anchors
    (x0, v0) = anchors[0]
    (xn, vn) = anchors[-1]

    if x <= x0:
        return v0 + f.leftSlope * (x - x0)

    if x >= xn:
        return vn + f.rightSlope * (x - xn)

    i = bisect.bisect_right(f.xs, x)
    (xa, va) = anchors[i-1]
    (xb, vb) = anchors[i]

    return va + (vb - va) * (x - xa) / (xb - xa)

eval = evaluate

## pointwise sum f + g
def add(f, g):
    _checkFunction(f)
    _checkFunction(g)

    xs = sorted(set(f.xs) | set(g.xs))
    anchors = [(x, evaluate(f, x) + evaluate(g, x)) for x in xs]

    return PLFunction(anchors, f.leftSlope + g.leftSlope, f.rightSlope + g.rightSlope)

## pointwise negation -f
def negate(f):
    return scaleBy(f, -1)

## the twist x -> f(x) + x y
# @param f PLFunction
# @param y rational
# @return PLFunction
def addLinear(f, y):
    _checkFunction(f)
    y = wt.helpers.toRational(y)

    anchors = [(x, v + x * y) for (x, v) in f.anchors]
    return PLFunction(anchors, f.leftSlope + y, f.rightSlope + y)

## the pullback along x -> -x
def reflect(f):
    _checkFunction(f)

    anchors = [(-x, v) for (x, v) in reversed(f.anchors)]
    return PLFunction(anchors, -f.rightSlope, -f.leftSlope)

## f + c
def addConstant(f, c):
    _checkFunction(f)
    c = wt.helpers.toRational(c)

    return PLFunction([(x, v + c) for (x, v) in f.anchors], f.leftSlope, f.rightSlope)

## t f for a rational t
def scaleBy(f, t):
    _checkFunction(f)
    t = wt.helpers.toRational(t)

    if t == 0:
        return constant(0)

    return PLFunction([(x, t * v) for (x, v) in f.anchors], t * f.leftSlope, t * f.rightSlope)

## x -> f(x - a)
def translate(f, a):
    _checkFunction(f)
    a = wt.helpers.toRational(a)

    return PLFunction([(x + a, v) for (x, v) in f.anchors], f.leftSlope, f.rightSlope)

## the function equal to f left of at and to g right of it
# @param f PLFunction used on (-inf, at]
# @param g PLFunction used on [at, +inf)
# @param at rational where both agree
# @return PLFunction
def glue(f, g, at):
    _checkFunction(f)
    _checkFunction(g)
    at = wt.helpers.toRational(at)

    value = evaluate(f, at)
    if evaluate(g, at) != value:
        raise ValueError("cannot glue at {0}: values {1} and {2} differ".format(at, value, evaluate(g, at)))

    anchors = [(x, v) for (x, v) in f.anchors if x < at]
    anchors.append((at, value))
    anchors.extend((x, v) for (x, v) in g.anchors if x > at)

    return PLFunction(anchors, f.leftSlope, g.rightSlope)

## the full slope sequence (leftSlope, interior slopes, rightSlope)
def slopes(f):
    _checkFunction(f)

    anchors = f.anchors
    interior = [_segmentSlope(a, b) for (a, b) in zip(anchors[:-1], anchors[1:])]

    return [f.leftSlope] + interior + [f.rightSlope]

## anchor positions of f
def breakpoints(f):
    _checkFunction(f)
    return list(f.xs)

## whether the slope sequence is nondecreasing
def isConvex(f):
    s = slopes(f)
    return all(a <= b for (a, b) in zip(s[:-1], s[1:]))

## infimum of f on the line
# @return rational, or NEG_INF when f is unbounded below
def minimum(f):
    _checkFunction(f)

    if f.leftSlope > 0 or f.rightSlope < 0:
        return NEG_INF

    return min(f.values)

## exact maximum of f on the closed interval [lo, hi]
def supremumOver(f, lo, hi):
    _checkFunction(f)
    lo = wt.helpers.toRational(lo)
    hi = wt.helpers.toRational(hi)

    if lo > hi:
        raise ValueError("expected lo <= hi, not [{0}, {1}]".format(lo, hi))

    candidates = [lo, hi] + [x for x in f.xs if lo < x < hi]

    return max(evaluate(f, x) for x in candidates)

def _sign(value):
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0

def _tailEvent(x, slope, value, outward):
    # outward is +1 on the right end, -1 on the left end
    direction = _sign(slope) * outward
    if direction > 0:
        return CriticalEvent(x, TAIL_PLUS_INF, INF, x)
    if direction < 0:
        return CriticalEvent(x, TAIL_MINUS_INF, NEG_INF, x)
    return CriticalEvent(x, TAIL_FINITE, value, x)

## ordered list of the critical events of f
# @param f PLFunction
# @return list of CriticalEvent, starting and ending with the tail events
def criticalProfile(f):
    _checkFunction(f)

    anchors = f.anchors
    s = slopes(f)
    n = len(anchors)

    events = [_tailEvent(NEG_INF, f.leftSlope, anchors[0][1], -1)]

    i = 0
    while i < n:
        # anchors i..j joined by zero slopes
        j = i
        while j < n - 1 and s[j+1] == 0:
            j += 1

        before = _sign(s[i])
        after = _sign(s[j+1])
        (x, value) = anchors[i]
        xEnd = anchors[j][0]

        if before == 0 and after == 0:
            # constant function
            events.append(CriticalEvent(x, PLATEAU, value, xEnd))
        elif before == 0 or after == 0:
            # flat run belonging to a tail
            pass
        elif before < 0 < after:
            events.append(CriticalEvent(x, LOCAL_MIN, value, xEnd))
        elif before > 0 > after:
            events.append(CriticalEvent(x, LOCAL_MAX, value, xEnd))
        elif i < j:
            events.append(CriticalEvent(x, PLATEAU, value, xEnd))

        i = j + 1

    events.append(_tailEvent(INF, f.rightSlope, anchors[-1][1], 1))

    return events

## min over anchors of v + x y, the conjugate value where the tails do not run off
def _conjugateAt(f, y):
    return min(v + x * y for (x, v) in f.anchors)

## Legendre conjugate f*(y) = inf_x (f(x) + x y)
# @param f convex PLFunction
# @return Conjugate(lo, hi, function) with domain [-rightSlope, -leftSlope]
def legendre(f):
    _checkFunction(f)

    if not isConvex(f):
        raise ValueError("requires convex input; apply convexHull first")

    anchors = f.anchors
    s = slopes(f)

    if len(anchors) == 1:
        (x0, v0) = anchors[0]
        conjugate = PLFunction([(0, v0)], x0, x0)
    else:
        # the minimizer switches from anchor k to anchor k-1 at y = -s[k]
        points = []
        for k in range(1, len(anchors)):
            y = -s[k]
            (x, v) = anchors[k]
            points.append((y, v + x * y))
        points.reverse()
        conjugate = PLFunction(points, anchors[-1][0], anchors[0][0])

    return Conjugate(-f.rightSlope, -f.leftSlope, conjugate)

## value of a conjugate at y
# @return rational, or None outside the domain
def evalConjugate(conj, y):
    y = wt.helpers.toRational(y)

    if y < conj.lo or y > conj.hi:
        return None

    return evaluate(conj.function, y)

## sup over the conjugate domain of f*(y) - x y, which gives back f(x) for convex f
# @param conj Conjugate
# @param x rational
# @return rational
def biconjugate(conj, x):
    x = wt.helpers.toRational(x)
    return supremumOver(addLinear(conj.function, -x), conj.lo, conj.hi)

def _cross(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

## greatest convex PL minorant (lower convex envelope)
# @param f PLFunction with leftSlope <= rightSlope
# @return convex PLFunction
def convexHull(f):
    _checkFunction(f)

    L = f.leftSlope
    R = f.rightSlope

    if L > R:
        raise ValueError("convex minorant is unbounded below: leftSlope {0} > rightSlope {1}".format(L, R))

    anchors = list(f.anchors)

    # supporting rays: leftmost contact for slope L, rightmost contact for slope R
    keysL = [v - L * x for (x, v) in anchors]
    keysR = [v - R * x for (x, v) in anchors]
    kLeft = keysL.index(min(keysL))
    kRight = len(keysR) - 1 - keysR[::-1].index(min(keysR))

    hull = []
    for p in anchors[kLeft:kRight+1]:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)

    return PLFunction(hull, L, R)

## rightmost point where the line of slope s supports the convex f
def _supportPoint(f, s):
    anchors = f.anchors
    slopeSeq = slopes(f)

    for i in range(len(anchors)):
        if slopeSeq[i+1] > s:
            return anchors[i]

    return anchors[-1]

## finite segments of a convex f as (slope, length)
def _segments(f):
    anchors = f.anchors
    return [(_segmentSlope(a, b), b[0] - a[0]) for (a, b) in zip(anchors[:-1], anchors[1:])]

## infimal convolution (f box g)(x) = inf_t f(t) + g(x - t)
# @param f convex PLFunction
# @param g convex PLFunction
# @return convex PLFunction
#
# the epigraph of the result is the Minkowski sum of the epigraphs, so its slope sequence is the merge of both
def infConv(f, g):
    _checkFunction(f)
    _checkFunction(g)

    if not (isConvex(f) and isConvex(g)):
        raise ValueError("requires convex input; apply convexHull first")

    lo = max(f.leftSlope, g.leftSlope)
    hi = min(f.rightSlope, g.rightSlope)

    if lo > hi:
        raise ValueError("infimal convolution is identically -inf: conjugate domains do not meet")

    if lo == hi:
        # affine, its conjugate is the sum of both conjugates at -lo
        c = _conjugateAt(f, -lo) + _conjugateAt(g, -lo)
        return PLFunction([(0, c)], lo, lo)

    (xf, vf) = _supportPoint(f, lo)
    (xg, vg) = _supportPoint(g, lo)

    merged = [seg for seg in _segments(f) + _segments(g) if lo < seg[0] < hi]
    merged.sort(key=lambda seg: seg[0])

    x = xf + xg
    v = vf + vg
    anchors = [(x, v)]
    for (s, length) in merged:
        x = x + length
        v = v + s * length
        anchors.append((x, v))

    logger.debug("infConv: %d merged segments", len(merged))

    return PLFunction(anchors, lo, hi)
