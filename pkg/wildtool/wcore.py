## @package wildtool
#  This module contains the barcode algebra of the wild coefficient category
#
#  A completely and continuously R-filtered object over a field splits into interval objects (bars). A bar [a, b) in cohomological degree d contributes to Fil_r exactly when a <= r < b: births are closed and deaths are open, which is what continuity of the filtration forces. Completeness forbids births at -inf; completion() rewrites the bars that violate it.
#
#  Grading convention: cohomological; M[n] moves degree d to d - n, so S(g)[-1] is the bar [g, +inf) in degree 1.

import logging
from collections import namedtuple

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

logger = logging.getLogger(__name__)


## Bar is an interval object [birth, death) placed in a cohomological degree
class Bar(namedtuple("Bar", ["degree", "birth", "death"])):
    __slots__ = ()

    ## The constructor of Bar
    #   @param degree   cohomological degree (integer)
    #   @param birth    extended real, not +inf
    #   @param death    extended real, not -inf, larger than birth
    def __new__(cls, degree, birth, death):
        if type(degree) is not int:
            raise TypeError("expected integer degree, not {0}".format(type(degree)))

        birth = wt.helpers.toExtReal(birth)
        death = wt.helpers.toExtReal(death)

        if birth == INF:
            raise ValueError("expected birth below +inf")

        if death == NEG_INF:
            raise ValueError("expected death above -inf")

        if not (birth < death):
            raise ValueError("expected birth < death, not [{0}, {1})".format(birth, death))

        return super(Bar, cls).__new__(cls, degree, birth, death)

    ## whether the bar contains r in the right-continuous convention a <= r < b
    def contains(self, r):
        return self.birth <= r < self.death

    ## whether the bar contains r in the left-continuous convention a < r <= b (Fil_{<r})
    def containsStrict(self, r):
        return self.birth < r <= self.death

    def __repr__(self):
        return "[{0}, {1})_{2}".format(wt.helpers.formatExtReal(self.birth),
                                       wt.helpers.formatExtReal(self.death),
                                       self.degree)


## PreWObject is a finite multiset of bars whose births may be -inf
#
#  Instances are immutable; the bars are kept in canonical order (degree, birth, death).
class PreWObject(object):

    ## The constructor of PreWObject
    # @param self object pointer
    # @param bars iterable of Bar, or of (degree, birth, death) tuples
    def __init__(self, bars=()):
        validated = []

        for (i, bar) in enumerate(bars):
            if not isinstance(bar, Bar):
                if not isinstance(bar, (tuple, list)) or len(bar) != 3:
                    raise TypeError("expected Bar, item {0} is a {1}".format(i, type(bar)))
                bar = Bar(*bar)
            validated.append(bar)

        self._validate_bars(validated)

        ## bars in canonical order
        self._bars = tuple(sorted(validated))

    def _validate_bars(self, bars):
        pass

    @property
    def bars(self):
        return self._bars

    ## whether all births are finite
    def isComplete(self):
        return all(bar.birth != NEG_INF for bar in self._bars)

    ## all degrees carrying a bar
    def degrees(self):
        return sorted(set(bar.degree for bar in self._bars))

    def isZero(self):
        return len(self._bars) == 0

    ## prints an overview (text)
    # @param self object pointer
    def overview(self):
        print("*** overview [{0}] ***".format(type(self).__name__))

        if not self._bars:
            print("zero object")

        for (i, bar) in enumerate(self._bars):
            print("{0} {1}".format(i, bar))

    def __len__(self):
        return len(self._bars)

    def __iter__(self):
        return iter(self._bars)

    def __eq__(self, other):
        if not isinstance(other, PreWObject):
            return NotImplemented
        return self._bars == other._bars

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._bars)

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, list(self._bars))


## WObject is a complete barcode: an object of W at desk scale
class WObject(PreWObject):

    def _validate_bars(self, bars):
        for bar in bars:
            if bar.birth == NEG_INF:
                raise ValueError("expected finite birth (completeness), not {0}".format(bar))


## rebuilds an object of the same kind from a list of bars
def _rebuild(a, bars):
    if isinstance(a, WObject):
        return WObject(bars)
    return PreWObject(bars)

def _checkObject(a, kind=PreWObject):
    if not isinstance(a, kind):
        raise TypeError("expected {0}, not {1}".format(kind.__name__, type(a)))

## the unit S(0) = {[0, +inf)_0}
# @return WObject
def unit():
    return WObject([Bar(0, 0, INF)])

## the invertible object S(r) = {[r, +inf)_0}
# @param r rational
# @return WObject
def sphere(r):
    return WObject([Bar(0, wt.helpers.toRational(r), INF)])

## enforce completeness
# @param p PreWObject (or WObject)
# @return WObject
#
# (-inf, +inf)_d is deleted, (-inf, b)_d becomes [b, +inf)_{d-1}; bars with finite birth are kept
def completion(p):
    _checkObject(p)

    bars = []
    for bar in p:
        if bar.birth != NEG_INF:
            bars.append(bar)
        elif bar.death != INF:
            bars.append(Bar(bar.degree - 1, bar.death, INF))
        else:
            logger.debug("completion drops %s", bar)

    return WObject(bars)

## derived tensor product of two bars
def _tensorBars(x, y):
    s = x.birth + y.birth
    cross = (x.birth + y.death, y.birth + x.death)
    degree = x.degree + y.degree

    bars = []
    low = min(cross)
    if low > s:
        bars.append(Bar(degree, s, low))

    # Tor_1 only when both factors are torsion
    if x.death != INF and y.death != INF:
        bars.append(Bar(degree - 1, max(cross), x.death + y.death))

    return bars

## derived tensor product, bilinear over bars
# @param a WObject
# @param b WObject
# @return WObject
def tensor(a, b):
    _checkObject(a, WObject)
    _checkObject(b, WObject)

    bars = []
    for x in a:
        for y in b:
            bars.extend(_tensorBars(x, y))

    logger.debug("tensor of %d and %d bars gave %d", len(a), len(b), len(bars))

    return WObject(bars)

## shift M[n]: degree d becomes d - n
# @param a PreWObject or WObject
# @param n integer
# @return object of the same kind
def shift(a, n):
    _checkObject(a)
    if type(n) is not int:
        raise TypeError("expected integer, not {0}".format(type(n)))

    return _rebuild(a, [Bar(bar.degree - n, bar.birth, bar.death) for bar in a])

## direct sum, the multiset union
# @param a PreWObject or WObject
# @param b PreWObject or WObject
# @return WObject if both are complete objects, PreWObject otherwise
def directSum(a, b):
    _checkObject(a)
    _checkObject(b)

    bars = list(a) + list(b)
    if isinstance(a, WObject) and isinstance(b, WObject):
        return WObject(bars)
    return PreWObject(bars)

## multiplicative rescaling of the filtration, the R_{>0} coaction at t
# @param a PreWObject or WObject
# @param t positive rational
# @return object of the same kind, every bar [a, b) becomes [t a, t b)
def scale(a, t):
    _checkObject(a)
    t = wt.helpers.toRational(t)

    if t <= 0:
        raise ValueError("expected positive scale, not {0}".format(t))

    return _rebuild(a, [Bar(bar.degree, bar.birth * t, bar.death * t) for bar in a])

## isomorphism test (Krull-Schmidt: equality of canonical forms)
# @param a PreWObject
# @param b PreWObject
# @return bool
def isoEqual(a, b):
    _checkObject(a)
    _checkObject(b)

    return a.bars == b.bars

def _countBy(bars):
    dims = {}
    for bar in bars:
        dims[bar.degree] = dims.get(bar.degree, 0) + 1
    return dims

## dimension of Fil_r per degree
# @param a PreWObject
# @param r rational
# @return dict degree -> positive integer
def filDim(a, r):
    _checkObject(a)
    r = wt.helpers.toRational(r)

    return _countBy(bar for bar in a if bar.contains(r))

## dimension of Fil_{<r} = colim_{r' < r} Fil_{r'} per degree
# @param a PreWObject
# @param r rational
# @return dict degree -> positive integer
def filDimStrict(a, r):
    _checkObject(a)
    r = wt.helpers.toRational(r)

    return _countBy(bar for bar in a if bar.containsStrict(r))

## dimension of the underlying object colim_r Fil_r M per degree
# @param a PreWObject
# @return dict degree -> positive integer
def underlying(a):
    _checkObject(a)

    return _countBy(bar for bar in a if bar.death == INF)

## dimension of Fil_0 M per degree (right adjoint of the unit map)
def filZero(a):
    return filDim(a, 0)

## graded Euler characteristic of Fil_r
# @param a PreWObject
# @param r rational
# @return integer
def eulerCharacteristic(a, r):
    dims = filDim(a, r)
    return sum(((-1) ** (d % 2)) * n for (d, n) in dims.items())

## inverse of an invertible object S(r)[n], which is S(-r)[-n]
# @param a WObject
# @return WObject
def inverse(a):
    _checkObject(a, WObject)

    if len(a) != 1 or a.bars[0].death != INF:
        raise ValueError("expected an invertible object S(r)[n], not {0}".format(a))

    bar = a.bars[0]
    return WObject([Bar(-bar.degree, -bar.birth, INF)])
