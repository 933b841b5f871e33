## @package wildtool
#  This module contains the support functions used in the wildtool package
#
#  All these functions are used in multiple modules, hence it was better to create a single point for all these 'general' functions -- exact rational handling, extended reals, colours, and the toy corpora used by the tests and the verify suite

import colorsys
from fractions import Fraction

import numpy as np

import wildtool as wt

## positive infinity of the extended real line
INF = float("inf")
## negative infinity of the extended real line
NEG_INF = -INF

## convert a value to an exact rational
# @param value int, Fraction, or string "p/q"
# @return Fraction
#
# floats are refused, exactness would be lost silently
def toRational(value):
    if type(value) is bool:
        raise TypeError("expected exact rational, not {0}".format(type(value)))

    if isinstance(value, Fraction):
        return value

    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))

    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError("expected rational string p/q, not {0!r}".format(value))

    raise TypeError("expected exact rational, not {0}".format(type(value)))

## convert a value to an extended real (exact rational, or +-inf)
# @param value rational-like, "inf", "-inf", or a float infinity
# @return Fraction, INF or NEG_INF
def toExtReal(value):
    if isinstance(value, float):
        if value == INF:
            return INF
        if value == NEG_INF:
            return NEG_INF
        raise TypeError("expected exact rational or infinity, not float {0}".format(value))

    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "+inf"):
            return INF
        if token == "-inf":
            return NEG_INF

    return toRational(value)

## whether an extended real is finite
# @param value extended real
# @return bool
def isFinite(value):
    return not (value == INF or value == NEG_INF)

## canonical string of a rational, "p/q" in lowest terms ("p" for integers)
# @param value Fraction
# @return string
def formatRational(value):
    return str(toRational(value))

## canonical string of an extended real
# @param value extended real
# @return "inf", "-inf" or a rational string
def formatExtReal(value):
    if value == INF:
        return "inf"
    if value == NEG_INF:
        return "-inf"
    return formatRational(value)

## a function to obtain n distinct colours (based on the colourspace spread into hue space), inspired by https://stackoverflow.com/questions/470690/how-to-automatically-generate-n-distinct-colors
# @param ncolours integer with number of distinct colours
# @param colour when colour is specified, this overrides any distinct colour
# @return rgb_tuples a list of tuples with (R, G, B) in the [0,1] domain
def getDistinctColours(ncolours, colour=None):
    # check
    if type(ncolours) is not int:
        raise TypeError("expected integer, not {0}".format(type(ncolours)))

    if (ncolours < 1):
        raise ValueError("expected integer to be larger than 0, not {0}".format(ncolours))

    if colour is not None:
        return [colour for _ in range(ncolours)]

    # spread equally in hue space
    HSV_tuples = [(x*1.0/ncolours, 0.6, 0.7) for x in range(ncolours)]

    return [colorsys.hsv_to_rgb(*x) for x in HSV_tuples]

## colour used for a cohomological degree, stable across plots
# @param degree integer degree
# @param degrees all degrees present in the plot
# @return (R, G, B) tuple
def getDegreeColour(degree, degrees):
    ordered = sorted(set(degrees))
    colours = getDistinctColours(max(len(ordered), 1))
    return colours[ordered.index(degree)]

## probe points around a set of rationals: the values, their midpoints and two outer points
# @param values iterable of rationals
# @param margin distance of the outer points
# @return sorted list of distinct rationals
def getProbes(values, margin=1):
    margin = toRational(margin)
    points = sorted(set(toRational(v) for v in values))

    if not points:
        return [Fraction(0)]

    probes = set(points)
    for (a, b) in zip(points[:-1], points[1:]):
        probes.add((a + b) / 2)
    probes.add(points[0] - margin)
    probes.add(points[-1] + margin)

    return sorted(probes)

## a random exact rational a/b with |a| <= nmax and 1 <= b <= dmax
# @param rng numpy RandomState
# @param nmax numerator bound
# @param dmax denominator bound
# @return Fraction
def getRandomRational(rng, nmax=20, dmax=4):
    return Fraction(int(rng.randint(-nmax, nmax + 1)), int(rng.randint(1, dmax + 1)))

## the non-convex double well potential with minima 0 and 1 and a barrier at 2
# @return PLFunction
def getDoubleWell():
    return wt.plfun.PLFunction([(-1, 0), (0, 2), (1, 1)], -2, 2)

## function to generate a single random PL potential
# @param rng numpy RandomState
# @param nbreaks number of anchors
# @param convex if True, slopes are strictly increasing
# @param tails "any" for random end slopes, "up" to force both tails to +infinity
# @return PLFunction
def getPotential(rng, nbreaks, convex=False, tails="any"):
    if type(nbreaks) is not int:
        raise TypeError("expected integer, not {0}".format(type(nbreaks)))

    if nbreaks < 1:
        raise ValueError("expected at least one anchor, not {0}".format(nbreaks))

    # distinct sorted positions
    xs = set()
    while len(xs) < nbreaks:
        xs.add(getRandomRational(rng, nmax=30, dmax=4))
    xs = sorted(xs)

    if convex:
        # nondecreasing slopes, end slopes included
        slope = getRandomRational(rng, nmax=6, dmax=2)
        if tails == "up":
            slope = -abs(slope) - 1
        slopes = [slope]
        for _ in range(nbreaks):
            slope = slope + Fraction(int(rng.randint(1, 7)), int(rng.randint(1, 3)))
            slopes.append(slope)
        if tails == "up" and slopes[-1] <= 0:
            slopes[-1] = Fraction(1)
        v = getRandomRational(rng, nmax=10, dmax=3)
        anchors = [(xs[0], v)]
        for i in range(1, nbreaks):
            v = v + slopes[i] * (xs[i] - xs[i-1])
            anchors.append((xs[i], v))
        return wt.plfun.PLFunction(anchors, slopes[0], slopes[-1])

    anchors = [(x, getRandomRational(rng, nmax=12, dmax=3)) for x in xs]

    if tails == "up":
        left = -Fraction(int(rng.randint(1, 5)), int(rng.randint(1, 3)))
        right = Fraction(int(rng.randint(1, 5)), int(rng.randint(1, 3)))
    else:
        # zero slopes are frequent on purpose
        choices = [Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(0), Fraction(1, 3), Fraction(3)]
        left = choices[rng.randint(len(choices))]
        right = choices[rng.randint(len(choices))]

    return wt.plfun.PLFunction(anchors, left, right)

## function to generate a corpus of random PL potentials
# @param npotentials number of potentials desired
# @param maxbreaks maximum number of anchors of each potential
# @param convex if True, only convex potentials are produced
# @param seed seed of the random generator, the corpus is reproducible
# @param tails passed to getPotential
# @return list of PLFunction
def getPotentials(npotentials=50, maxbreaks=10, convex=False, seed=10, tails="any"):
    # remove random effect
    rng = np.random.RandomState(seed=seed)

    potentials = []
    for i in range(npotentials):
        nbreaks = int(rng.randint(1, maxbreaks + 1))
        potentials.append(getPotential(rng, nbreaks, convex=convex, tails=tails))

    return potentials

## function to generate random cells with mixed end types
# @param ncells number of cells desired
# @param seed seed of the random generator
# @return list of Cell
def getCells(ncells=20, seed=10):
    rng = np.random.RandomState(seed=seed)

    cells = []
    for i in range(ncells):
        f = getPotential(rng, int(rng.randint(1, 7)))
        kind = rng.randint(6)
        a = getRandomRational(rng, nmax=20, dmax=2)
        b = a + Fraction(int(rng.randint(1, 20)), int(rng.randint(1, 3)))
        if kind == 0:
            left = wt.persist.EndSpec(NEG_INF, False)
            right = wt.persist.EndSpec(b, bool(rng.randint(2)))
        elif kind == 1:
            left = wt.persist.EndSpec(a, bool(rng.randint(2)))
            right = wt.persist.EndSpec(INF, False)
        elif kind == 2:
            left = wt.persist.EndSpec(a, True)
            right = left
        else:
            left = wt.persist.EndSpec(a, bool(rng.randint(2)))
            right = wt.persist.EndSpec(b, bool(rng.randint(2)))
        shiftN = int(rng.randint(-1, 2))
        cells.append(wt.persist.Cell(left, right, f, shiftN))

    return cells
