"""
tests of sublevel persistence on cells
"""

from fractions import Fraction

import pytest as pt

import wildtool as wt
from wildtool.helpers import INF, NEG_INF


def _levels(cells):
    values = set()
    for cell in cells:
        values.update(cell.potential.values)
        for end in (cell.left, cell.right):
            if wt.helpers.isFinite(end.position):
                values.add(cell.potential(end.position))

    values = sorted(values)
    levels = set()
    for v in values:
        levels.update([v - Fraction(1, 7), v, v + Fraction(1, 7)])
    for (a, b) in zip(values[:-1], values[1:]):
        levels.add((a + b) / 2)

    return sorted(levels)


def test_endspec():
    """
    ends of locally closed intervals
    """

    end = wt.persist.EndSpec("1/2", True)
    assert (end.position == Fraction(1, 2))

    with pt.raises(ValueError) as testException:
        _ = wt.persist.EndSpec(INF, True)

    with pt.raises(TypeError) as testException:
        _ = wt.persist.EndSpec(0, 1)


def test_component_types():
    """
    H_c of the four interval types
    """

    assert (wt.persist.componentType(False, False) == wt.persist.OPEN_OPEN)
    assert (wt.persist.componentType(True, False) == wt.persist.CLOSED_OPEN)
    assert (wt.persist.componentType(False, True) == wt.persist.OPEN_CLOSED)
    assert (wt.persist.componentType(True, True) == wt.persist.CLOSED_CLOSED)

    assert (wt.persist.hcDegrees(wt.persist.OPEN_OPEN) == (1,))
    assert (wt.persist.hcDegrees(wt.persist.CLOSED_CLOSED) == (0,))
    assert (wt.persist.hcDegrees(wt.persist.CLOSED_OPEN) == ())

    with pt.raises(ValueError) as testException:
        _ = wt.persist.hcDegrees("halfOpen")


def test_cell():
    """
    cell validation, membership and intersection
    """

    f = wt.plfun.absolute()

    with pt.raises(ValueError) as testException:
        _ = wt.persist.Cell(wt.persist.EndSpec(1, True), wt.persist.EndSpec(0, True), f)

    with pt.raises(ValueError) as testException:
        _ = wt.persist.Cell(wt.persist.EndSpec(0, False), wt.persist.EndSpec(0, True), f)

    with pt.raises(TypeError) as testException:
        _ = wt.persist.Cell(wt.persist.EndSpec(0, True), wt.persist.EndSpec(1, True), "f")

    with pt.raises(TypeError) as testException:
        _ = wt.persist.Cell.line(f, shiftN=0.5)

    cell = wt.persist.Cell(wt.persist.EndSpec(0, True), wt.persist.EndSpec(1, False), f)
    assert cell.contains(0)
    assert not cell.contains(1)
    assert not cell.isPoint()
    assert wt.persist.Cell.point(2, 3).isPoint()

    meet = wt.persist.Cell.line(f).intersect(wt.persist.Cell.closed(0, 1, wt.plfun.constant(5)))
    assert (meet == wt.persist.Cell.closed(0, 1, f))

    assert (wt.persist.Cell.closed(0, 1, f).intersect(wt.persist.Cell.closed(2, 3, f)) is None)

    other = wt.persist.Cell(wt.persist.EndSpec(1, True), wt.persist.EndSpec(2, True), f)
    assert (cell.intersect(other) is None)

    touch = wt.persist.Cell.closed(0, 1, f).intersect(other)
    assert (touch == wt.persist.Cell.point(1, 0).withPotential(f))


def test_line_barcodes():
    """
    sublevel barcodes of potentials on the line
    """

    # |x|
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.plfun.absolute())])
    assert (barcode == wt.wcore.PreWObject([(1, 0, INF)]))

    # double well: the second minimum dies at the barrier
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.helpers.getDoubleWell())])
    assert (barcode == wt.wcore.PreWObject([(1, 0, INF), (1, 1, 2)]))

    # exp: one bar over the whole line
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.plfun.linear(1))])
    assert (barcode == wt.wcore.PreWObject([(1, NEG_INF, INF)]))

    # constant
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.plfun.constant(3))])
    assert (barcode == wt.wcore.PreWObject([(1, 3, INF)]))

    # shifted
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.line(wt.plfun.absolute(), 1)])
    assert (barcode == wt.wcore.PreWObject([(0, 0, INF)]))


def test_cell_barcodes():
    """
    sublevel barcodes of bounded and half-bounded cells
    """

    # a compact interval becomes a class in degree 0 once it is entirely below r
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.closed(0, 1, wt.plfun.linear(1))])
    assert (barcode == wt.wcore.PreWObject([(0, 1, INF)]))

    # skyscraper
    barcode = wt.persist.sublevelBarcode([wt.persist.Cell.point(2, 3)])
    assert (barcode == wt.wcore.PreWObject([(0, 3, INF)]))

    # half-open interval: nothing
    cell = wt.persist.Cell(wt.persist.EndSpec(0, True), wt.persist.EndSpec(1, False), wt.plfun.constant(0))
    assert wt.persist.sublevelBarcode([cell]).isZero()

    # cells add up
    cells = [wt.persist.Cell.point(2, 3), wt.persist.Cell.line(wt.plfun.absolute())]
    assert (wt.persist.sublevelBarcode(cells) == wt.wcore.PreWObject([(0, 3, INF), (1, 0, INF)]))

    with pt.raises(TypeError) as testException:
        _ = wt.persist.sublevelBarcode(wt.persist.Cell.point(2, 3))


def test_annotated():
    """
    bars carry the nodes of their birth and death
    """

    bars = wt.persist.annotatedBarcode(wt.persist.Cell.line(wt.helpers.getDoubleWell()))
    bars = sorted(bars, key=lambda bar: bar.birth)

    assert (bars[0].birthNode.position == -1)
    assert (bars[0].deathNode is None)
    assert (bars[1].birthNode.position == 1)
    assert (bars[1].deathNode.position == 0)


def test_sublevel_dims():
    """
    explicit decomposition of the sublevel sets
    """

    cells = [wt.persist.Cell.line(wt.helpers.getDoubleWell())]

    assert (wt.persist.sublevelDims(cells, 0) == {})
    assert (wt.persist.sublevelDims(cells, Fraction(3, 2)) == {1: 2})
    assert (wt.persist.sublevelDims(cells, 3) == {1: 1})

    assert (wt.persist.sublevelDims([wt.persist.Cell.closed(0, 1, wt.plfun.linear(1))], "1/2") == {})
    assert (wt.persist.sublevelDims([wt.persist.Cell.closed(0, 1, wt.plfun.linear(1))], 2) == {0: 1})


def test_oracle_random():
    """
    sweep barcodes match the explicit decomposition on random potentials and cells
    """

    for f in wt.helpers.getPotentials(200, maxbreaks=12):
        cells = [wt.persist.Cell.line(f)]
        barcode = wt.persist.sublevelBarcode(cells)
        for r in _levels(cells):
            assert (wt.wcore.filDimStrict(barcode, r) == wt.persist.sublevelDims(cells, r))

    cells = wt.helpers.getCells(20)
    for cell in cells:
        barcode = wt.persist.sublevelBarcode([cell])
        for r in _levels([cell]):
            assert (wt.wcore.filDimStrict(barcode, r) == wt.persist.sublevelDims([cell], r))

    barcode = wt.persist.sublevelBarcode(cells)
    for r in _levels(cells):
        assert (wt.wcore.filDimStrict(barcode, r) == wt.persist.sublevelDims(cells, r))


def test_half_lines():
    """
    half-lines with a rising tail carry no class, open half-lines one class in degree 1
    """

    up = wt.plfun.linear(1)
    down = wt.plfun.linear(-1)

    right = wt.persist.Cell(wt.persist.EndSpec(0, True), wt.persist.EndSpec(INF, False), up)
    left = wt.persist.Cell(wt.persist.EndSpec(NEG_INF, False), wt.persist.EndSpec(0, True), down)

    for cell in [right, left]:
        assert wt.persist.sublevelBarcode([cell]).isZero()
        assert (wt.persist.sublevelDims([cell], 1) == {})

    opened = wt.persist.Cell(wt.persist.EndSpec(0, False), wt.persist.EndSpec(INF, False), up)
    assert (wt.persist.sublevelBarcode([opened]) == wt.wcore.PreWObject([(1, 0, INF)]))
    assert (wt.persist.sublevelDims([opened], 1) == {1: 1})

    # a falling tail runs into the closed end: (-inf, 0) in degree 1
    falling = wt.persist.Cell(wt.persist.EndSpec(0, True), wt.persist.EndSpec(INF, False), down)
    assert (wt.persist.sublevelBarcode([falling]) == wt.wcore.PreWObject([(1, NEG_INF, 0)]))
    assert (wt.persist.sublevelDims([falling], -1) == {1: 1})
    assert (wt.persist.sublevelDims([falling], 1) == {})

    # the constant on [0, inf) twisted by y
    s = wt.WSheaf([right.withPotential(wt.plfun.constant(0))])
    assert wt.fourier.fourierStalk(s, 1).isZero()
    assert (wt.fourier.fourierStalk(s, -1) == wt.wcore.WObject([(0, 0, INF)]))


def test_oracle_seeds():
    """
    sweep barcodes match the explicit decomposition on mixed cells over many seeds
    """

    for seed in range(40):
        cells = wt.helpers.getCells(20, seed=seed)
        for cell in cells:
            barcode = wt.persist.sublevelBarcode([cell])
            for r in _levels([cell]):
                assert (wt.wcore.filDimStrict(barcode, r) == wt.persist.sublevelDims([cell], r)), (seed, cell, r)

    for f in wt.helpers.getPotentials(50, maxbreaks=6, seed=2):
        for (left, right) in [((0, True), (INF, False)), ((NEG_INF, False), (0, True)),
                              ((0, False), (INF, False)), ((NEG_INF, False), (0, False))]:
            cell = wt.persist.Cell(wt.persist.EndSpec(*left), wt.persist.EndSpec(*right), f)
            barcode = wt.persist.sublevelBarcode([cell])
            for r in _levels([cell]):
                assert (wt.wcore.filDimStrict(barcode, r) == wt.persist.sublevelDims([cell], r)), (cell, r)


def test_equivariance():
    """
    f + c translates the barcode, t f rescales it
    """

    cells = wt.helpers.getCells(20, seed=3) + [wt.persist.Cell.line(f) for f in wt.helpers.getPotentials(20, seed=3)]

    for cell in cells:
        barcode = wt.persist.sublevelBarcode([cell])

        for c in [Fraction(-5, 2), 3]:
            moved = wt.persist.sublevelBarcode([cell.withPotential(wt.plfun.addConstant(cell.potential, c))])
            assert (moved == wt.wcore.PreWObject([(bar.degree, bar.birth + c, bar.death + c) for bar in barcode]))

        for t in [Fraction(1, 3), 2]:
            scaled = wt.persist.sublevelBarcode([cell.withPotential(wt.plfun.scaleBy(cell.potential, t))])
            assert (scaled == wt.wcore.scale(barcode, t))


def test_additivity():
    """
    disjoint unions of cells give direct sums, degree 0 bars never die
    """

    a = wt.helpers.getCells(10, seed=4)
    b = wt.helpers.getCells(10, seed=5)

    total = wt.wcore.directSum(wt.persist.sublevelBarcode(a), wt.persist.sublevelBarcode(b))
    assert (wt.persist.sublevelBarcode(a + b) == total)

    for cell in a + b:
        unshifted = wt.persist.Cell(cell.left, cell.right, cell.potential)
        for bar in wt.persist.sublevelBarcode([unshifted]):
            if bar.degree == 0:
                assert (bar.death == INF)
