## @package wildtool
#  This module contains the Visual_2d class
#
#  See Visual_2d class for more details

import io

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

import wildtool as wt
from wildtool.helpers import INF, NEG_INF

# stable ids in the SVG output
matplotlib.rcParams["svg.hashsalt"] = "wildtool"


## Visual_2d class generates the 2d output using Matplotlib
#
#  Barcodes are drawn as horizontal segments (one row per bar), transforms as filled (y, r) regions, sheaves as their potentials over the cells
class Visual_2d(object):

    ## Constructor for Visual_2d
    # @param self object pointer
    # @param name title of the figure
    # @param rmax if specified, infinite deaths are clipped here
    # @param ywindow if specified, (lo, hi) window of the dual line for transforms
    # @param kwargs additional parameters for plt.figure()
    def __init__(self, name="", rmax=None, ywindow=None, **kwargs):
        ## figure object
        self._fig = plt.figure(facecolor="white", **kwargs)
        ## axis object
        self._ax = self._fig.gca()
        ## title
        self._name = name
        ## clip level for infinite deaths
        self._rmax = rmax
        ## window on the dual line
        self._ywindow = ywindow

        if name:
            self._ax.set_title(name)

    ## finite ends of a list of intervals, with a margin
    def _range(self, values, default=(0, 1)):
        finite = [float(v) for v in values if wt.helpers.isFinite(v)]

        if not finite:
            (lo, hi) = default
        else:
            (lo, hi) = (min(finite), max(finite))

        margin = max((hi - lo) * 0.2, 1.0)
        hi = hi + margin if self._rmax is None else float(self._rmax)

        return (lo - margin, hi)

    ## Plot a barcode
    # @param self object pointer
    # @param a WObject or PreWObject
    # @param colour if specified, overwrites degree colours
    # @param kwargs additional parameters for plotting
    def plotBarcode(self, a, colour=None, **kwargs):
        if not isinstance(a, wt.wcore.PreWObject):
            raise TypeError("expected PreWObject, not {0}".format(type(a)))

        if a.isZero():
            self._ax.text(0.5, 0.5, "zero object", ha="center", va="center",
                          transform=self._ax.transAxes)
            self._ax.set_yticks([])
            return

        ends = [bar.birth for bar in a] + [bar.death for bar in a]
        (lo, hi) = self._range(ends)
        degrees = a.degrees()

        ticks = set()
        for (row, bar) in enumerate(a):
            c = colour if colour is not None else wt.helpers.getDegreeColour(bar.degree, degrees)

            x0 = lo if bar.birth == NEG_INF else float(bar.birth)
            x1 = hi if bar.death == INF else float(bar.death)
            self._ax.plot([x0, x1], [row, row], color=c, linewidth=3, **kwargs)

            # arrowheads where a bar is clipped
            if bar.death == INF:
                self._ax.plot([x1], [row], marker=">", color=c)
            if bar.birth == NEG_INF:
                self._ax.plot([x0], [row], marker="<", color=c)

            ticks.update(v for v in (bar.birth, bar.death) if wt.helpers.isFinite(v))

        ticks = sorted(ticks)
        self._ax.set_xticks([float(v) for v in ticks])
        self._ax.set_xticklabels([wt.helpers.formatRational(v) for v in ticks])
        self._ax.set_yticks(range(len(a)))
        self._ax.set_yticklabels(["deg {0}".format(bar.degree) for bar in a])
        self._ax.set_xlabel("r")
        self._ax.set_xlim(lo, hi)
        self._ax.set_ylim(-1, len(a))

    ## y samples of a piece inside the window: its ends and the breakpoints of its families
    def _pieceSamples(self, piece, lo, hi):
        left = max(piece.left.position, lo)
        right = min(piece.right.position, hi)

        ys = set([left, right])
        for family in piece.families:
            ys.update(y for y in family.birth.xs if left < y < right)
            if not family.isFree():
                ys.update(y for y in family.death.xs if left < y < right)

        return sorted(ys)

    ## Plot a transform as regions of the (y, r) plane
    # @param self object pointer
    # @param t PiecewiseTransform
    # @param alpha opacity of the regions
    def plotTransform(self, t, alpha=.4):
        if not isinstance(t, wt.fourier.PiecewiseTransform):
            raise TypeError("expected PiecewiseTransform, not {0}".format(type(t)))

        if len(t) == 0:
            self._ax.text(0.5, 0.5, "zero object", ha="center", va="center",
                          transform=self._ax.transAxes)
            return

        finite = [p.left.position for p in t] + [p.right.position for p in t]
        finite = [y for y in finite if wt.helpers.isFinite(y)]

        # a single piece over the whole line: centre on the breakpoints of its families
        if not finite:
            finite = [y for p in t for fam in p.families for y in fam.birth.xs] or [0]

        if self._ywindow is not None:
            (lo, hi) = [wt.helpers.toRational(v) for v in self._ywindow]
        else:
            (lo, hi) = (min(finite) - 1, max(finite) + 1)

        degrees = sorted(set(fam.degree for p in t for fam in p.families))

        values = []
        regions = []
        for piece in t:
            if piece.right.position < lo or piece.left.position > hi:
                continue
            ys = self._pieceSamples(piece, lo, hi)
            for family in piece.families:
                births = [wt.plfun.evaluate(family.birth, y) for y in ys]
                deaths = [INF if family.isFree() else wt.plfun.evaluate(family.death, y) for y in ys]
                values.extend(births + deaths)
                regions.append((family.degree, ys, births, deaths))

        (_, rtop) = self._range(values)

        for (degree, ys, births, deaths) in regions:
            c = wt.helpers.getDegreeColour(degree, degrees)
            fy = [float(y) for y in ys]
            fb = [float(b) for b in births]
            fd = [rtop if d == INF else float(d) for d in deaths]

            if len(fy) == 1 or fy[0] == fy[-1]:
                # point piece
                self._ax.plot([fy[0], fy[0]], [fb[0], fd[0]], color=c, linewidth=2)
            else:
                self._ax.fill_between(fy, fb, fd, color=c, alpha=alpha)
                self._ax.plot(fy, fb, color=c)

        self._ax.set_xlabel("y")
        self._ax.set_ylabel("r")

    ## Plot the potentials of a sheaf over its cells
    # @param self object pointer
    # @param s WSheaf
    # @param colour if specified, overwrites distinct colours
    # @param kwargs additional parameters for plotting
    def plotSheaf(self, s, colour=None, **kwargs):
        if not isinstance(s, wt.fourier.WSheaf):
            raise TypeError("expected WSheaf, not {0}".format(type(s)))

        cells = s.getCells()
        if not cells:
            self._ax.text(0.5, 0.5, "zero object", ha="center", va="center",
                          transform=self._ax.transAxes)
            return

        colours = wt.helpers.getDistinctColours(len(cells), colour)

        for (i, cell) in enumerate(cells):
            f = cell.potential
            lo = cell.left.position if wt.helpers.isFinite(cell.left.position) else f.xs[0] - 2
            hi = cell.right.position if wt.helpers.isFinite(cell.right.position) else f.xs[-1] + 2
            xs = sorted(set([lo, hi] + [x for x in f.xs if lo < x < hi]))

            self._ax.plot([float(x) for x in xs],
                          [float(wt.plfun.evaluate(f, x)) for x in xs],
                          color=colours[i], marker="." if len(xs) == 1 else None, **kwargs)

        self._ax.set_xlabel("x")

    ## the figure as SVG text
    # @param self object pointer
    def toSVG(self):
        buffer = io.StringIO()
        self._fig.savefig(buffer, format="svg", metadata={"Date": None})
        return buffer.getvalue()

    ## saves the figure as SVG
    # @param self object pointer
    # @param path output file
    def save(self, path):
        with open(path, "w") as handle:
            handle.write(self.toSVG())

    ## closes the figure
    # @param self object pointer
    def close(self):
        plt.close(self._fig)


## renders a barcode, transform or sheaf to an SVG document
# @param obj PreWObject, PiecewiseTransform or WSheaf
# @param kwargs passed to Visual_2d
# @return SVG text
def renderBarcodeSVG(obj, **kwargs):
    visual = Visual_2d(**kwargs)

    try:
        if isinstance(obj, wt.wcore.PreWObject):
            visual.plotBarcode(obj)
        elif isinstance(obj, wt.fourier.PiecewiseTransform):
            visual.plotTransform(obj)
        elif isinstance(obj, wt.fourier.WSheaf):
            visual.plotSheaf(obj)
        else:
            raise NotImplementedError("cannot render {0}".format(type(obj)))

        return visual.toSVG()
    finally:
        visual.close()
