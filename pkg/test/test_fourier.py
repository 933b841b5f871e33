"""
tests of wild sheaves, pi_! and the Fourier transform
"""

import os
from fractions import Fraction

import numpy as np
import pytest as pt

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def test_init():
    """
    sheaf container
    """

    s = wt.WSheaf(name="Hello world!")
    assert (s.getName() == "Hello world!")
    assert (len(s) == 0)

    with pt.raises(TypeError) as testException:
        _ = wt.WSheaf(name=5)

    with pt.raises(TypeError) as testException:
        _ = wt.WSheaf(cells="cells")

    with pt.raises(TypeError) as testException:
        s.addCell("cell")

    s.addCell(wt.persist.Cell.point(0, 1))
    assert (len(s) == 1)
    assert (s.getCells() == [wt.persist.Cell.point(0, 1)])

    assert (wt.WSheaf.sheafOf(wt.plfun.absolute()) == wt.WSheaf([wt.persist.Cell.line(wt.plfun.absolute())]))


def test_pi_shriek():
    """
    compactly supported cohomology of basic sheaves
    """

    assert wt.fourier.piShriek(wt.WSheaf.exp()).isZero()
    assert wt.fourier.piShriek(wt.WSheaf.zero()).isZero()

    for a in ["1/3", -2, 5]:
        twisted = wt.WSheaf.sheafOf(wt.plfun.linear(a, 7))
        assert wt.fourier.piShriek(twisted).isZero()

    s = wt.WSheaf.sheafOf(wt.plfun.absolute())
    assert (wt.fourier.piShriek(s) == wt.wcore.WObject([(1, 0, INF)]))

    with pt.raises(TypeError) as testException:
        _ = wt.fourier.piShriek(wt.plfun.absolute())


def test_double_well_golden():
    """
    the double well gives the golden barcode
    """

    with open(os.path.join(FIXTURES, "double_well.json")) as handle:
        text = handle.read()

    s = wt.WSheaf.sheafOf(wt.helpers.getDoubleWell())
    barcode = wt.fourier.piShriek(s)

    assert (barcode == wt.serial.decodeWObject(wt.serial.loads(text)))
    assert (wt.serial.dumps(wt.serial.encodeWObject(barcode)) == text.strip())


def test_fourier_stalk():
    """
    stalks of the transform of convex potentials are spheres at the conjugate
    """

    s = wt.WSheaf.sheafOf(wt.plfun.absolute())

    for y in [-1, "-1/2", 0, 1]:
        assert (wt.fourier.fourierStalk(s, y) == wt.wcore.WObject([(1, 0, INF)]))

    for y in [-2, "3/2"]:
        assert wt.fourier.fourierStalk(s, y).isZero()

    for f in wt.helpers.getPotentials(20, convex=True):
        conj = wt.plfun.legendre(f)
        y = (conj.lo + conj.hi) / 2
        expected = wt.wcore.WObject([(1, wt.plfun.evalConjugate(conj, y), INF)])
        assert (wt.fourier.fourierStalk(wt.WSheaf.sheafOf(f), y) == expected)

    assert (wt.fourier.kernelStalk(2, 3) == wt.wcore.sphere(6))


def test_critical_values():
    """
    dual values where the sweep changes
    """

    s = wt.WSheaf.sheafOf(wt.helpers.getDoubleWell())
    assert (wt.fourier.criticalValues(s) == [-2, Fraction(-1, 2), 1, 2])

    assert (wt.fourier.criticalValues(wt.WSheaf.exp()) == [-1])
    assert (wt.fourier.criticalValues(wt.WSheaf.zero()) == [])


def test_transform_absolute():
    """
    the transform of |x| is one closed piece [-1, 1] with birth 0 in degree 1
    """

    t = wt.fourier.fourierTransform(wt.WSheaf.sheafOf(wt.plfun.absolute()))

    assert (len(t) == 1)
    piece = t.pieces[0]
    assert (piece.left == wt.persist.EndSpec(-1, True))
    assert (piece.right == wt.persist.EndSpec(1, True))
    assert (piece.families == (wt.fourier.BarFamily(1, wt.plfun.constant(0), INF),))

    assert (t.evaluate(0) == wt.wcore.WObject([(1, 0, INF)]))
    assert t.evaluate(2).isZero()


def test_transform_exp():
    """
    the transform of exp lives at the single point y = -1
    """

    t = wt.fourier.fourierTransform(wt.WSheaf.exp())

    assert (len(t) == 1)
    assert (t.pieces[0].left == wt.persist.EndSpec(-1, True))
    assert (t.pieces[0].right == wt.persist.EndSpec(-1, True))
    assert (t.evaluate(-1) == wt.wcore.WObject([(1, 0, INF)]))
    assert t.evaluate(0).isZero()


def _offMidpoints(values):
    points = sorted(set(values))
    probes = [points[0] - 50, points[-1] + 50] if points else [Fraction(-50), Fraction(50)]
    for (a, b) in zip(points[:-1], points[1:]):
        probes.extend([a + (b - a) / 3, a + 2 * (b - a) / 3])
    return probes


def test_transform_matches_stalks():
    """
    the piecewise transform agrees with fourierStalk at critical values, inside the gaps and at random y
    """

    sheaves = [wt.WSheaf.sheafOf(wt.helpers.getDoubleWell()),
               wt.WSheaf.sheafOf(wt.plfun.absolute()),
               wt.WSheaf([wt.persist.Cell.closed(0, 1, wt.plfun.constant(0)),
                          wt.persist.Cell.point(2, 1)])]
    sheaves += [wt.WSheaf.sheafOf(f) for f in wt.helpers.getPotentials(10, maxbreaks=4, seed=4)]
    sheaves += [wt.WSheaf([cell]) for cell in wt.helpers.getCells(8, seed=1)]
    sheaves += [wt.WSheaf(wt.helpers.getCells(4, seed=seed)) for seed in (6, 7)]

    rng = np.random.RandomState(seed=10)

    for s in sheaves:
        t = wt.fourier.fourierTransform(s)
        critical = wt.fourier.criticalValues(s)

        probes = wt.helpers.getProbes(critical) + _offMidpoints(critical)
        probes += [wt.helpers.getRandomRational(rng, nmax=40, dmax=7) for _ in range(25)]

        for y in probes:
            assert (t.evaluate(y) == wt.fourier.fourierStalk(s, y)), (s, y)


def test_double_well_transform():
    """
    a nonconvex potential has a transform with several families
    """

    s = wt.WSheaf.sheafOf(wt.helpers.getDoubleWell())
    t = wt.fourier.fourierTransform(s)

    assert (t.evaluate(0) == wt.wcore.WObject([(1, 0, INF), (1, 1, 2)]))

    with pt.raises(ValueError) as testException:
        _ = wt.fourier.toWSheaf(t)


def test_piecewise_transform():
    """
    pieces must be ordered and disjoint
    """

    a = wt.fourier.Piece(wt.persist.EndSpec(0, True), wt.persist.EndSpec(1, True), ())
    b = wt.fourier.Piece(wt.persist.EndSpec(1, True), wt.persist.EndSpec(2, False), ())
    c = wt.fourier.Piece(wt.persist.EndSpec(1, False), wt.persist.EndSpec(2, False), ())

    with pt.raises(ValueError) as testException:
        _ = wt.fourier.PiecewiseTransform([a, b])

    with pt.raises(TypeError) as testException:
        _ = wt.fourier.PiecewiseTransform(["piece"])

    t = wt.fourier.PiecewiseTransform([a, c])
    assert (len(t) == 2)
    assert a.contains(1)
    assert not c.contains(1)


def test_inversion():
    """
    transforming twice returns the reflected sheaf
    """

    f = wt.plfun.absolute()
    assert wt.fourier.checkInversion(f)

    back = wt.fourier.toWSheaf(wt.fourier.fourierTransform(wt.WSheaf.sheafOf(f)))
    for x in [-2, -1, 0, "1/2", 3]:
        expected = wt.wcore.sphere(wt.plfun.evaluate(f, x))
        assert (wt.fourier.inverseTransformStalk(back, x) == expected)

    for f in wt.helpers.getPotentials(10, maxbreaks=5, convex=True):
        assert wt.fourier.checkInversion(f)

    with pt.raises(ValueError) as testException:
        _ = wt.fourier.checkInversion(wt.helpers.getDoubleWell())


def test_convolution():
    """
    convolution stalks and the intertwining with tensor products
    """

    s = wt.WSheaf.sheafOf(wt.plfun.absolute())

    assert (wt.fourier.convolveStalk(s, s, 3) == wt.wcore.WObject([(1, 3, INF)]))
    assert wt.fourier.checkIntertwining(wt.plfun.absolute(), wt.plfun.absolute(), [-2, -1, 0, 1, 2])

    # disjoint conjugate domains
    f = wt.plfun.PLFunction([(0, 0)], 1, 2)
    g = wt.plfun.PLFunction([(0, 0)], -2, -1)
    assert wt.fourier.checkIntertwining(f, g, [-3, 0, 3])

    corpus = wt.helpers.getPotentials(10, maxbreaks=4, convex=True, seed=7)
    for (f, g) in zip(corpus[0::2], corpus[1::2]):
        assert wt.fourier.checkIntertwining(f, g, wt.helpers.getProbes(f.xs + g.xs))


def test_convolution_unit():
    """
    the skyscraper S(0) at 0 is a unit for convolution, a skyscraper elsewhere translates
    """

    unit = wt.WSheaf([wt.persist.Cell.point(0, 0)])

    for f in [wt.helpers.getDoubleWell()] + wt.helpers.getPotentials(10, maxbreaks=5, seed=8):
        s = wt.WSheaf.sheafOf(f)
        for x in wt.helpers.getProbes(f.xs):
            stalk = wt.wcore.sphere(wt.plfun.evaluate(f, x))
            assert (wt.fourier.convolveStalk(unit, s, x) == stalk)
            assert (wt.fourier.convolveStalk(s, unit, x) == stalk)

            moved = wt.WSheaf([wt.persist.Cell.point(2, "1/2")])
            expected = wt.wcore.sphere(wt.plfun.evaluate(f, x - 2) + Fraction(1, 2))
            assert (wt.fourier.convolveStalk(moved, s, x) == expected)


def test_kunneth():
    """
    Kunneth formula against the components of a 2-d sublevel grid
    """

    exp = wt.WSheaf.exp()
    s = wt.WSheaf.sheafOf(wt.plfun.absolute())
    w = wt.WSheaf.sheafOf(wt.helpers.getDoubleWell())

    assert (wt.fourier.kunneth([]) == wt.wcore.unit())
    assert wt.fourier.kunneth([exp, s]).isZero()

    product = wt.fourier.kunneth([w, s])
    assert (product == wt.wcore.WObject([(2, 0, INF), (2, 1, 2)]))

    absx = wt.plfun.absolute()
    assert (wt.fourier.externalGridDims(absx, absx, 1, -2, 2, 1) == {2: 1})
    assert (wt.fourier.externalGridDims(absx, absx, 0, -2, 2, 1) == {})

    dw = wt.helpers.getDoubleWell()
    for r in [Fraction(1, 2), Fraction(3, 2), 3]:
        grid = wt.fourier.externalGridDims(dw, absx, r, -5, 5, 1)
        assert (grid.get(2, 0) == wt.wcore.filDimStrict(product, r).get(2, 0))

    with pt.raises(ValueError) as testException:
        _ = wt.fourier.externalGridDims(absx, absx, 1, 2, -2, 1)


def test_scale_sheaf():
    """
    rescaling the potentials rescales pi_! and the stalks
    """

    s = wt.WSheaf.sheafOf(wt.helpers.getDoubleWell())

    for t in [Fraction(1, 2), 2, Fraction(7, 3)]:
        scaled = wt.fourier.scaleSheaf(s, t)
        assert (wt.fourier.piShriek(scaled) == wt.wcore.scale(wt.fourier.piShriek(s), t))
        for y in [-1, 0, "1/2"]:
            y = wt.helpers.toRational(y)
            assert (wt.fourier.fourierStalk(scaled, t * y) == wt.wcore.scale(wt.fourier.fourierStalk(s, y), t))

    with pt.raises(ValueError) as testException:
        _ = wt.fourier.scaleSheaf(s, 0)


def test_overview(capsys):
    """
    overviews print the cells and pieces
    """

    wt.WSheaf.sheafOf(wt.plfun.absolute(), name="absx").overview()
    wt.fourier.fourierTransform(wt.WSheaf.exp()).overview()
    wt.fourier.PiecewiseTransform().overview()

    out = capsys.readouterr().out
    assert ("absx" in out)
    assert ("zero transform" in out)
