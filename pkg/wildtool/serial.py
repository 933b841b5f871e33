## @package wildtool
#  This module contains the JSON codec for every wildtool value
#
#  Rationals are written as strings "p/q" in lowest terms ("p" for integers), infinities as "inf" and "-inf". dumps() sorts keys and uses fixed separators, so equal values always give equal bytes.

import json

import wildtool as wt
from wildtool.helpers import INF


## raised when a JSON value does not match the expected schema
class SchemaError(TypeError):
    pass


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise SchemaError("expected {0} object, not {1}".format(what, type(obj).__name__))

    missing = [key for key in keys if key not in obj]
    if missing:
        raise SchemaError("{0} is missing {1}".format(what, ", ".join(missing)))

def _rational(value):
    if type(value) is bool or isinstance(value, float):
        raise SchemaError("expected rational string p/q, not {0!r}".format(value))

    try:
        return wt.helpers.toRational(value)
    except (TypeError, ValueError) as err:
        raise SchemaError(str(err))

def _extReal(value):
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "-inf"):
        return wt.helpers.toExtReal(value)
    return _rational(value)

def _integer(value, what):
    if type(value) is not int:
        raise SchemaError("expected integer {0}, not {1!r}".format(what, value))
    return value

def _boolean(value, what):
    if type(value) is not bool:
        raise SchemaError("expected boolean {0}, not {1!r}".format(what, value))
    return value

def _list(value, what):
    if not isinstance(value, list):
        raise SchemaError("expected list of {0}, not {1}".format(what, type(value).__name__))
    return value

## canonical JSON text of an encoded value
def dumps(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))

## JSON text to a plain payload
def loads(text):
    try:
        return json.loads(text)
    except ValueError as err:
        raise SchemaError("invalid JSON: {0}".format(err))

## encoders

def encodeBar(bar):
    return {"degree": bar.degree,
            "birth": wt.helpers.formatExtReal(bar.birth),
            "death": wt.helpers.formatExtReal(bar.death)}

def encodeWObject(a):
    return [encodeBar(bar) for bar in a]

def encodePLFunction(f):
    return {"anchors": [[wt.helpers.formatRational(x), wt.helpers.formatRational(v)] for (x, v) in f.anchors],
            "leftSlope": wt.helpers.formatRational(f.leftSlope),
            "rightSlope": wt.helpers.formatRational(f.rightSlope)}

def encodeEndSpec(end):
    return {"pos": wt.helpers.formatExtReal(end.position), "closed": end.closed}

def encodeCell(cell):
    return {"left": encodeEndSpec(cell.left),
            "right": encodeEndSpec(cell.right),
            "potential": encodePLFunction(cell.potential),
            "shift": cell.shiftN}

def encodeSheaf(s):
    return {"cells": [encodeCell(cell) for cell in s]}

def encodeConjugate(conj):
    return {"domain": [wt.helpers.formatRational(conj.lo), wt.helpers.formatRational(conj.hi)],
            "conjugate": encodePLFunction(conj.function)}

def encodeTransform(t):
    pieces = []
    for piece in t:
        families = []
        for family in piece.families:
            death = "inf" if family.isFree() else encodePLFunction(family.death)
            families.append({"degree": family.degree,
                             "birth": encodePLFunction(family.birth),
                             "death": death})
        pieces.append({"left": encodeEndSpec(piece.left),
                       "right": encodeEndSpec(piece.right),
                       "families": families})
    return {"pieces": pieces}

## decoders

def decodeBar(obj):
    _require(obj, ("degree", "birth", "death"), "bar")
    return wt.wcore.Bar(_integer(obj["degree"], "degree"), _extReal(obj["birth"]), _extReal(obj["death"]))

## a barcode: a list of bars, or {"bars": [...]}
# @param obj payload
# @param complete if True a WObject is built, else a PreWObject
def decodeWObject(obj, complete=True):
    if isinstance(obj, dict) and "bars" in obj:
        obj = obj["bars"]

    bars = [decodeBar(item) for item in _list(obj, "bars")]

    if complete:
        return wt.wcore.WObject(bars)
    return wt.wcore.PreWObject(bars)

def decodePLFunction(obj):
    _require(obj, ("anchors", "leftSlope", "rightSlope"), "PLFunction")

    anchors = []
    for item in _list(obj["anchors"], "anchors"):
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError("expected anchor [x, value], not {0!r}".format(item))
        anchors.append((_rational(item[0]), _rational(item[1])))

    return wt.plfun.PLFunction(anchors, _rational(obj["leftSlope"]), _rational(obj["rightSlope"]))

def decodeEndSpec(obj):
    _require(obj, ("pos", "closed"), "end")
    return wt.persist.EndSpec(_extReal(obj["pos"]), _boolean(obj["closed"], "closed"))

def decodeCell(obj):
    _require(obj, ("left", "right", "potential"), "cell")
    shiftN = _integer(obj.get("shift", 0), "shift")
    return wt.persist.Cell(decodeEndSpec(obj["left"]), decodeEndSpec(obj["right"]),
                           decodePLFunction(obj["potential"]), shiftN)

## a sheaf: a list of cells, {"cells": [...]}, or a bare PLFunction for S(f) on the line
def decodeSheaf(obj):
    if isinstance(obj, dict) and "anchors" in obj:
        return wt.fourier.WSheaf.sheafOf(decodePLFunction(obj))

    if isinstance(obj, dict) and "cells" in obj:
        obj = obj["cells"]

    return wt.fourier.WSheaf([decodeCell(item) for item in _list(obj, "cells")])

def decodeConjugate(obj):
    _require(obj, ("domain", "conjugate"), "conjugate")

    domain = _list(obj["domain"], "domain bounds")
    if len(domain) != 2:
        raise SchemaError("expected domain [lo, hi], not {0!r}".format(domain))

    return wt.plfun.Conjugate(_rational(domain[0]), _rational(domain[1]),
                              decodePLFunction(obj["conjugate"]))

def decodeTransform(obj):
    _require(obj, ("pieces",), "transform")

    pieces = []
    for item in _list(obj["pieces"], "pieces"):
        _require(item, ("left", "right", "families"), "piece")
        families = []
        for fam in _list(item["families"], "families"):
            _require(fam, ("degree", "birth", "death"), "family")
            if fam["death"] == "inf":
                death = INF
            else:
                death = decodePLFunction(fam["death"])
            families.append(wt.fourier.BarFamily(_integer(fam["degree"], "degree"),
                                                 decodePLFunction(fam["birth"]), death))
        pieces.append(wt.fourier.Piece(decodeEndSpec(item["left"]), decodeEndSpec(item["right"]),
                                       tuple(families)))

    return wt.fourier.PiecewiseTransform(pieces)
