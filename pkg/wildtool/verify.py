## @package wildtool
#  This module contains the acceptance suites run by `wildtool verify`
#
#  Every suite checks one identity exactly on a seeded corpus and returns a SuiteResult. runSuites runs them all, in a process pool when settings["jobs"] > 1; results keep the suite order either way.

from __future__ import print_function

import logging
import math
import multiprocessing as mp
import time
from collections import namedtuple
from fractions import Fraction
from functools import partial

import numpy as np

import wildtool as wt
from wildtool.helpers import INF

logger = logging.getLogger(__name__)

## outcome of one suite
SuiteResult = namedtuple("SuiteResult", ["name", "passed", "detail", "seconds"])

## default settings of runSuites
DEFAULT_SETTINGS = {"seed": 10,
                    "probes": 8,
                    "grid_eps": Fraction(1, 8),
                    "ncorpus": 50,
                    "jobs": 1}

## validates settings and fills in the defaults
# @param settings dictionary, or None
# @return new dictionary with every key
def getSettings(settings=None):
    if settings is None:
        settings = {}

    if type(settings) is not dict:
        raise TypeError("expected dict, not {0}".format(type(settings)))

    unknown = sorted(set(settings) - set(DEFAULT_SETTINGS))
    if unknown:
        raise ValueError("unknown settings {0}".format(", ".join(unknown)))

    result = dict(DEFAULT_SETTINGS)
    result.update(settings)

    for key in ("seed", "probes", "ncorpus", "jobs"):
        if type(result[key]) is not int:
            raise TypeError("expected int for {0}, not {1}".format(key, type(result[key])))

    result["grid_eps"] = wt.helpers.toRational(result["grid_eps"])

    if result["grid_eps"] <= 0:
        raise ValueError("expected positive grid_eps, not {0}".format(result["grid_eps"]))

    for key in ("probes", "ncorpus", "jobs"):
        if result[key] < 1:
            raise ValueError("expected {0} larger than 0, not {1}".format(key, result[key]))

    return result

## random rationals strictly inside (lo, hi)
def _interiorProbes(rng, lo, hi, nprobes):
    probes = []
    for _ in range(nprobes):
        t = Fraction(int(rng.randint(1, 64)), 64)
        probes.append(lo + (hi - lo) * t)
    return probes

## anchor values of a list of functions, with offsets and midpoints
def _levels(values, offset=Fraction(1, 7)):
    values = sorted(set(values))
    levels = set()
    for v in values:
        levels.update([v - offset, v, v + offset])
    for (a, b) in zip(values[:-1], values[1:]):
        levels.add((a + b) / 2)
    return sorted(levels)

def suiteExpVanishes(settings):
    exp = wt.fourier.WSheaf.exp()

    if not wt.fourier.piShriek(exp).isZero():
        return (False, "piShriek(exp) is not zero")

    rng = np.random.RandomState(seed=settings["seed"])
    checked = 1
    for _ in range(settings["ncorpus"]):
        a = wt.helpers.getRandomRational(rng)
        if a == 0:
            continue
        c = wt.helpers.getRandomRational(rng)
        twisted = wt.fourier.WSheaf.sheafOf(wt.plfun.linear(a, c))
        if not wt.fourier.piShriek(twisted).isZero():
            return (False, "twisted exp with slope {0} does not vanish".format(a))
        checked += 1

    other = wt.fourier.WSheaf.sheafOf(wt.plfun.absolute())
    if not wt.fourier.kunneth([exp, other]).isZero():
        return (False, "kunneth with exp does not vanish")

    return (True, "{0} linear potentials".format(checked))

def suiteFourierLegendre(settings):
    corpus = wt.helpers.getPotentials(settings["ncorpus"], maxbreaks=10, convex=True, seed=settings["seed"])
    rng = np.random.RandomState(seed=settings["seed"] + 1)

    nprobes = 0
    for f in corpus:
        conj = wt.plfun.legendre(f)
        sheaf = wt.fourier.WSheaf.sheafOf(f)

        probes = [y for y in wt.helpers.getProbes(conj.function.xs + [conj.lo, conj.hi])
                  if conj.lo < y < conj.hi]
        probes += _interiorProbes(rng, conj.lo, conj.hi, settings["probes"])

        for y in probes:
            expected = wt.wcore.WObject([wt.wcore.Bar(1, wt.plfun.evalConjugate(conj, y), INF)])
            if wt.fourier.fourierStalk(sheaf, y) != expected:
                return (False, "{0} at y = {1}".format(f, y))
            nprobes += 1

        # the conjugate determines f back
        for x in wt.helpers.getProbes(f.xs):
            if wt.plfun.biconjugate(conj, x) != wt.plfun.evaluate(f, x):
                return (False, "biconjugate of {0} at x = {1}".format(f, x))

    return (True, "{0} functions, {1} probes".format(len(corpus), nprobes))

def suiteInversion(settings):
    corpus = wt.helpers.getPotentials(settings["ncorpus"], maxbreaks=10, convex=True, seed=settings["seed"])

    for f in corpus:
        if not wt.fourier.checkInversion(f):
            return (False, "inversion fails for {0}".format(f))

    return (True, "{0} functions".format(len(corpus)))

def suiteKoszul(settings):
    rng = np.random.RandomState(seed=settings["seed"])
    qmax = max(1, int(1 / settings["grid_eps"]))
    bound = Fraction(16)

    npairs = 100
    for i in range(npairs):
        eps = Fraction(1, int(rng.randint(1, qmax + 1)))
        grid = wt.novikov.TruncatedGrid(eps, bound)
        half = int(bound / eps) // 2

        l1 = eps * int(rng.randint(1, half + 1))
        l2 = INF if i % 10 == 0 else eps * int(rng.randint(1, half + 1))

        homology = wt.novikov.truncatedKoszulHomology(l1, l2, grid)
        product = wt.wcore.tensor(wt.wcore.WObject([(0, 0, l1)]), wt.wcore.WObject([(0, 0, l2)]))
        euler = wt.novikov.koszulEuler(l1, l2, grid)
        overlap = wt.novikov.overlapEuler(l1, l2, grid)

        # Tor_0 is Lambda / T^min(l1, l2), Tor_1 is T^max(l1, l2) Lambda / T^(l1 + l2)
        tor0 = wt.novikov.NovikovPresentation(0, min(l1, l2), 0)
        if not np.array_equal(homology[0], wt.novikov.presentationDims(tor0, grid)):
            return (False, "Tor_0 of l1 = {0}, l2 = {1}".format(l1, l2))
        if l2 != INF:
            tor1 = wt.novikov.NovikovPresentation(max(l1, l2), min(l1, l2), -1)
            if not np.array_equal(homology[-1], wt.novikov.presentationDims(tor1, grid)):
                return (False, "Tor_1 of l1 = {0}, l2 = {1}".format(l1, l2))

        for (k, w) in enumerate(grid.points()):
            dims = wt.wcore.filDim(product, w)
            if dims.get(0, 0) != homology[0][k] or dims.get(-1, 0) != homology[-1][k]:
                return (False, "l1 = {0}, l2 = {1} at weight {2}".format(l1, l2, w))
            if wt.wcore.eulerCharacteristic(product, w) != euler[k] or euler[k] != overlap[k]:
                return (False, "euler characteristic l1 = {0}, l2 = {1} at weight {2}".format(l1, l2, w))

    return (True, "{0} pairs".format(npairs))

def _checkCellsAgainstOracle(cells):
    barcode = wt.persist.sublevelBarcode(cells)

    values = []
    for cell in cells:
        f = cell.potential
        values.extend(f.values)
        for end in (cell.left, cell.right):
            if wt.helpers.isFinite(end.position):
                values.append(wt.plfun.evaluate(f, end.position))

    for r in _levels(values):
        if wt.wcore.filDimStrict(barcode, r) != wt.persist.sublevelDims(cells, r):
            return r

    return None

def suitePersistence(settings):
    potentials = wt.helpers.getPotentials(max(4 * settings["ncorpus"], 200), maxbreaks=12, seed=settings["seed"])
    cells = wt.helpers.getCells(20, seed=settings["seed"])

    for f in potentials:
        r = _checkCellsAgainstOracle([wt.persist.Cell.line(f)])
        if r is not None:
            return (False, "{0} at r = {1}".format(f, r))

    for cell in cells:
        r = _checkCellsAgainstOracle([cell])
        if r is not None:
            return (False, "{0} at r = {1}".format(cell, r))

    r = _checkCellsAgainstOracle(cells)
    if r is not None:
        return (False, "mixed cells at r = {0}".format(r))

    return (True, "{0} potentials, {1} cells".format(len(potentials), len(cells)))

def suiteAdditivity(settings):
    corpus = wt.helpers.getPotentials(200, maxbreaks=6, seed=settings["seed"] + 2)
    rng = np.random.RandomState(seed=settings["seed"] + 2)

    npairs = 100
    for i in range(npairs):
        (f, g) = (corpus[2 * i], corpus[2 * i + 1])
        h = wt.plfun.add(f, g)

        # stalks: S(f(x)) (x) S(g(x)) = S((f + g)(x))
        for x in wt.helpers.getProbes(f.xs + g.xs):
            lhs = wt.wcore.tensor(wt.wcore.sphere(wt.plfun.evaluate(f, x)), wt.wcore.sphere(wt.plfun.evaluate(g, x)))
            if lhs != wt.wcore.sphere(wt.plfun.evaluate(h, x)):
                return (False, "stalks differ at x = {0}".format(x))

            # the kernel stalk twists the stalk of S(f)
            y = wt.helpers.getRandomRational(rng, nmax=8, dmax=3)
            twist = wt.wcore.tensor(wt.wcore.sphere(wt.plfun.evaluate(f, x)), wt.fourier.kernelStalk(x, y))
            if twist != wt.wcore.sphere(wt.plfun.evaluate(wt.plfun.addLinear(f, y), x)):
                return (False, "kernel twist at x = {0}, y = {1}".format(x, y))

        # transform stalks of S(f + g) against the oracle on the twisted sum
        for _ in range(3):
            y = wt.helpers.getRandomRational(rng, nmax=8, dmax=3)
            twisted = wt.plfun.add(wt.plfun.addLinear(f, y), g)
            barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.plfun.addLinear(h, y))])
            stalk = wt.fourier.fourierStalk(wt.fourier.WSheaf.sheafOf(h), y)
            if stalk != wt.wcore.completion(barcode):
                return (False, "stalk of the sum at y = {0}".format(y))
            for r in _levels(twisted.values):
                if wt.wcore.filDimStrict(barcode, r) != wt.persist.sublevelDims([wt.persist.Cell.line(twisted)], r):
                    return (False, "pair {0} at y = {1}, r = {2}".format(i, y, r))

    return (True, "{0} pairs".format(npairs))

## conjugate-domain probes of two convex functions
def _dualProbes(f, g):
    values = []
    for h in (f, g):
        conj = wt.plfun.legendre(h)
        values.extend([conj.lo, conj.hi] + [y for y in conj.function.xs if conj.lo < y < conj.hi])
    return wt.helpers.getProbes(values)

def suiteIntertwining(settings):
    corpus = wt.helpers.getPotentials(50, maxbreaks=6, convex=True, seed=settings["seed"] + 3)

    npairs = 25
    for i in range(npairs):
        (f, g) = (corpus[2 * i], corpus[2 * i + 1])
        if not wt.fourier.checkIntertwining(f, g, _dualProbes(f, g)):
            return (False, "pair {0}".format(i))

    return (True, "{0} pairs".format(npairs))

## a box [lo, hi] containing {f < level} for f with both tails up
def _sublevelBox(f, level):
    (x0, v0) = f.anchors[0]
    (xn, vn) = f.anchors[-1]

    lo = x0 + min(0, (level - v0) / f.leftSlope)
    hi = xn + max(0, (level - vn) / f.rightSlope)

    return (math.floor(lo) - 1, math.ceil(hi) + 1)

def suiteKunneth(settings):
    corpus = wt.helpers.getPotentials(20, maxbreaks=5, seed=settings["seed"] + 4, tails="up")

    npairs = 10
    nlevels = 10
    for i in range(npairs):
        (f, g) = (corpus[2 * i], corpus[2 * i + 1])
        product = wt.fourier.kunneth([wt.fourier.WSheaf.sheafOf(f), wt.fourier.WSheaf.sheafOf(g)])

        sums = sorted(set(a + b for a in f.values for b in g.values))
        candidates = [(a + b) / 2 for (a, b) in zip(sums[:-1], sums[1:])] + [sums[-1] + 1, sums[-1] + 3]
        picks = np.linspace(0, len(candidates) - 1, nlevels).round().astype(int)
        levels = sorted(set(candidates[k] for k in picks))

        for r in levels:
            (flo, fhi) = _sublevelBox(f, r - wt.plfun.minimum(g))
            (glo, ghi) = _sublevelBox(g, r - wt.plfun.minimum(f))
            grid = wt.fourier.externalGridDims(f, g, r, min(flo, glo), max(fhi, ghi), 1)
            dims = wt.wcore.filDimStrict(product, r)
            if dims.get(2, 0) != grid.get(2, 0):
                return (False, "pair {0} at r = {1}".format(i, r))

    return (True, "{0} pairs, {1} levels each".format(npairs, nlevels))

def suiteScaling(settings):
    corpus = wt.helpers.getPotentials(settings["ncorpus"], maxbreaks=8, seed=settings["seed"] + 5)
    rng = np.random.RandomState(seed=settings["seed"] + 5)
    factors = [Fraction(1, 2), Fraction(2), Fraction(7, 3)]

    pairs = []
    for _ in range(100):
        a = wt.helpers.getRandomRational(rng)
        b = wt.helpers.getRandomRational(rng)
        pairs.append((wt.wcore.Bar(0, a, a + Fraction(int(rng.randint(1, 9)), 2)),
                      wt.wcore.Bar(int(rng.randint(-1, 2)), b, INF if rng.randint(3) == 0 else b + 1)))

    for t in factors:
        if not wt.novikov.scaleCompatibility(t, pairs):
            return (False, "tensor at t = {0}".format(t))

        # the unit is fixed and S(eps) never reaches Fil_0 of it
        unit = wt.wcore.scale(wt.wcore.unit(), t)
        if unit != wt.wcore.unit() or wt.wcore.filZero(unit) != {0: 1}:
            return (False, "unit at t = {0}".format(t))
        if wt.wcore.filZero(wt.wcore.scale(wt.wcore.sphere(Fraction(1, 64)), t)):
            return (False, "S(1/64) at t = {0}".format(t))

        for f in corpus:
            s = wt.fourier.WSheaf.sheafOf(f)
            scaled = wt.fourier.scaleSheaf(s, t)
            if wt.fourier.piShriek(scaled) != wt.wcore.scale(wt.fourier.piShriek(s), t):
                return (False, "piShriek of {0} at t = {1}".format(f, t))
            for y in wt.helpers.getProbes([-f.leftSlope, -f.rightSlope]):
                lhs = wt.fourier.fourierStalk(scaled, t * y)
                if lhs != wt.wcore.scale(wt.fourier.fourierStalk(s, y), t):
                    return (False, "fourierStalk of {0} at t = {1}, y = {2}".format(f, t, y))

    return (True, "{0} factors, {1} functions".format(len(factors), len(corpus)))

def suiteDoubleWell(settings):
    f = wt.helpers.getDoubleWell()
    sheaf = wt.fourier.WSheaf.sheafOf(f)
    expected = wt.wcore.WObject([(1, 0, INF), (1, 1, 2)])

    if wt.fourier.piShriek(sheaf) != expected:
        return (False, "piShriek {0}".format(wt.fourier.piShriek(sheaf)))

    transform = wt.fourier.fourierTransform(sheaf)
    if transform.evaluate(0) != expected:
        return (False, "transform at y = 0 is {0}".format(transform.evaluate(0)))

    try:
        wt.fourier.toWSheaf(transform)
    except ValueError:
        return (True, "two local minima contribute")

    return (False, "transform is cell-representable")

## suite name -> function, in table order
SUITES = [("prop-pi-shriek-exp-vanishes", suiteExpVanishes),
          ("prop-fourier-legendre", suiteFourierLegendre),
          ("thm-fourier-inversion-d1", suiteInversion),
          ("tensor-koszul-oracle", suiteKoszul),
          ("persistence-dimension-oracle", suitePersistence),
          ("cor-additivity", suiteAdditivity),
          ("convolution-intertwining", suiteIntertwining),
          ("kunneth-grid-oracle", suiteKunneth),
          ("scaling-coaction", suiteScaling),
          ("nonconvex-double-well", suiteDoubleWell)]

## runs one suite by name
# @param name suite name
# @param settings validated settings
# @return SuiteResult
def runSuite(name, settings):
    functions = dict(SUITES)
    if name not in functions:
        raise ValueError("unknown suite {0}".format(name))

    start = time.time()
    try:
        (passed, detail) = functions[name](settings)
    except (TypeError, ValueError) as err:
        (passed, detail) = (False, "{0}: {1}".format(type(err).__name__, err))
    seconds = time.time() - start

    logger.debug("suite %s: %s in %.2f s", name, passed, seconds)

    return SuiteResult(name, passed, detail, seconds)

## runs all suites
# @param settings dictionary, see getSettings
# @param names optional subset of suite names
# @return list of SuiteResult in suite order
def runSuites(settings=None, names=None):
    settings = getSettings(settings)

    if names is None:
        names = [name for (name, _) in SUITES]

    func = partial(runSuite, settings=settings)

    if settings["jobs"] == 1:
        return [func(name) for name in names]

    # parallel processing
    p = mp.Pool(processes=settings["jobs"])

    # output - extract results
    results = p.map(func, names)

    # cleanup
    p.close()
    p.join()

    return results

## prints the pass/fail table
# @param results list of SuiteResult
# @return True if every suite passed
def printTable(results):
    width = max([len(result.name) for result in results] + [5])

    print("{0}  {1}  {2}".format("suite".ljust(width), "result", "detail"))
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print("{0}  {1}    {2}".format(result.name.ljust(width), status, result.detail))

    return all(result.passed for result in results)
