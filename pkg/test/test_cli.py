"""
tests of the command line
"""

import json
import os

import pytest as pt

import wildtool as wt

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def _write(tmpdir, name, payload):
    path = os.path.join(str(tmpdir), name)
    with open(path, "w") as handle:
        handle.write(payload if isinstance(payload, str) else json.dumps(payload))
    return path


def test_pishriek(capsys):
    """
    pi_! of exp is the empty barcode, of the double well the golden one
    """

    code = wt.cli.main(["pishriek", "--input", os.path.join(FIXTURES, "exp.json")])
    assert (code == 0)
    assert (capsys.readouterr().out == "[]\n")

    code = wt.cli.main(["pishriek", "--input", os.path.join(FIXTURES, "double_well_potential.json")])
    assert (code == 0)

    with open(os.path.join(FIXTURES, "double_well.json")) as handle:
        assert (capsys.readouterr().out == handle.read())


def test_fourier(capsys):
    """
    the transform of |x| is one closed piece
    """

    code = wt.cli.main(["fourier", "--input", os.path.join(FIXTURES, "absx.json")])
    assert (code == 0)

    payload = json.loads(capsys.readouterr().out)
    assert (len(payload["pieces"]) == 1)

    piece = payload["pieces"][0]
    assert (piece["left"] == {"pos": "-1", "closed": True})
    assert (piece["right"] == {"pos": "1", "closed": True})
    assert (piece["families"] == [{"degree": 1, "death": "inf",
                                   "birth": {"anchors": [["0", "0"]], "leftSlope": "0", "rightSlope": "0"}}])


def test_commands(tmpdir, capsys):
    """
    legendre, stalk, tensor, convolve and invert-check
    """

    absx = wt.serial.encodePLFunction(wt.plfun.absolute())

    code = wt.cli.main(["legendre", "--input", os.path.join(FIXTURES, "absx.json")])
    assert (code == 0)
    assert (json.loads(capsys.readouterr().out)["domain"] == ["-1", "1"])

    path = _write(tmpdir, "stalk.json", {"sheaf": absx, "y": "1/2"})
    assert (wt.cli.main(["stalk", "--input", path]) == 0)
    assert (capsys.readouterr().out == '[{"birth":"0","death":"inf","degree":1}]\n')

    path = _write(tmpdir, "tensor.json", {"a": [{"degree": 0, "birth": "0", "death": "1"}],
                                          "b": [{"degree": 0, "birth": "0", "death": "2"}]})
    assert (wt.cli.main(["tensor", "--input", path]) == 0)
    assert (capsys.readouterr().out ==
            '[{"birth":"2","death":"3","degree":-1},{"birth":"0","death":"1","degree":0}]\n')

    path = _write(tmpdir, "convolve.json", {"a": absx, "b": absx, "x": "3"})
    assert (wt.cli.main(["convolve", "--input", path]) == 0)
    assert (capsys.readouterr().out == '[{"birth":"3","death":"inf","degree":1}]\n')

    output = os.path.join(str(tmpdir), "inverts.json")
    assert (wt.cli.main(["invert-check", "--input", os.path.join(FIXTURES, "absx.json"), "--output", output]) == 0)
    with open(output) as handle:
        assert (handle.read() == '{"inverts":true}\n')


def test_plot(tmpdir):
    """
    plots are written as SVG
    """

    output = os.path.join(str(tmpdir), "barcode.svg")
    code = wt.cli.main(["plot", "--input", os.path.join(FIXTURES, "double_well.json"), "--output", output])
    assert (code == 0)

    with open(output) as handle:
        assert ("<svg" in handle.read())

    path = _write(tmpdir, "plot.json", {"kind": "sheaf", "value": wt.serial.encodePLFunction(wt.plfun.absolute())})
    assert (wt.cli.main(["plot", "--input", path, "--output", output]) == 0)

    # a single piece over the whole line
    t = wt.fourier.fourierTransform(wt.WSheaf([wt.persist.Cell.point(0, 1)]))
    path = _write(tmpdir, "whole.json", wt.serial.encodeTransform(t))
    assert (wt.cli.main(["plot", "--input", path, "--output", output]) == 0)


def test_errors(tmpdir, capsys):
    """
    schema errors exit with 2, computation errors with 1
    """

    path = _write(tmpdir, "bogus.json", {"bogus": 1})
    assert (wt.cli.main(["legendre", "--input", path]) == 2)
    assert (json.loads(capsys.readouterr().err)["error"] == "schema")

    path = _write(tmpdir, "broken.json", "{")
    assert (wt.cli.main(["pishriek", "--input", path]) == 2)

    path = _write(tmpdir, "kind.json", {"kind": "surface", "value": []})
    assert (wt.cli.main(["plot", "--input", path]) == 2)

    assert (wt.cli.main(["pishriek", "--input", os.path.join(str(tmpdir), "missing.json")]) == 2)

    path = _write(tmpdir, "stalk.json", {"sheaf": wt.serial.encodePLFunction(wt.plfun.absolute()), "y": 0.5})
    assert (wt.cli.main(["stalk", "--input", path]) == 2)
    capsys.readouterr()

    code = wt.cli.main(["legendre", "--input", os.path.join(FIXTURES, "double_well_potential.json")])
    assert (code == 1)
    error = json.loads(capsys.readouterr().err)
    assert (error["error"] == "computation")
    assert ("convex" in error["message"])

    with pt.raises(SystemExit) as testException:
        wt.cli.main(["transform"])

    assert (wt.cli.main(["verify", "--grid-eps", "0"]) == 2)
