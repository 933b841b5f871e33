## @package wildtool
#  This module contains the command line of wildtool
#
#  wildtool <command> [--input PATH] [--output PATH] [--seed N] [--probes N] [--grid-eps p/q] [--jobs N] [--verbose]
#
#  Inputs and outputs are the JSON payloads of wildtool.serial. Exit codes: 0 success, 1 computation error, 2 usage or schema error.

from __future__ import print_function

import argparse
import logging
import sys

import wildtool as wt

logger = logging.getLogger(__name__)

COMMANDS = ["legendre", "pishriek", "fourier", "stalk", "tensor", "convolve",
            "invert-check", "verify", "plot"]

## plot kinds and their decoders
PLOT_KINDS = {"barcode": lambda obj: wt.serial.decodeWObject(obj, complete=False),
              "transform": lambda obj: wt.serial.decodeTransform(obj),
              "sheaf": lambda obj: wt.serial.decodeSheaf(obj)}


def parseArgs(argv=None):
    parser = argparse.ArgumentParser(prog="wildtool",
                                     description="Exact barcodes, wild sheaves and their Fourier transform.")
    parser.add_argument("command", choices=COMMANDS, help="computation to run")
    parser.add_argument("--input", default=None, help="JSON input file (default: stdin)")
    parser.add_argument("--output", default=None, help="output file (default: stdout)")
    parser.add_argument("--seed", type=int, default=wt.verify.DEFAULT_SETTINGS["seed"],
                        help="seed of the verify corpora")
    parser.add_argument("--probes", type=int, default=wt.verify.DEFAULT_SETTINGS["probes"],
                        help="random probes per function in verify")
    parser.add_argument("--grid-eps", default=str(wt.verify.DEFAULT_SETTINGS["grid_eps"]),
                        help="finest Koszul grid step p/q in verify")
    parser.add_argument("--jobs", type=int, default=wt.verify.DEFAULT_SETTINGS["jobs"],
                        help="processes used by verify")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    return parser.parse_args(argv)

def _readPayload(path):
    if path is None:
        text = sys.stdin.read()
    else:
        with open(path) as handle:
            text = handle.read()
    return wt.serial.loads(text)

def _writeText(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)

def _field(payload, key):
    if not isinstance(payload, dict) or key not in payload:
        raise wt.serial.SchemaError("expected object with key {0!r}".format(key))
    return payload[key]

def _rationalField(payload, key):
    value = _field(payload, key)
    if not isinstance(value, (str, int)) or type(value) is bool:
        raise wt.serial.SchemaError("expected rational string for {0!r}, not {1!r}".format(key, value))
    try:
        return wt.helpers.toRational(value)
    except ValueError as err:
        raise wt.serial.SchemaError(str(err))

## decodes a plot payload, {"kind": ..., "value": ...} or a bare value
def _plotObject(payload):
    if isinstance(payload, dict) and "kind" in payload:
        kind = payload["kind"]
        if kind not in PLOT_KINDS:
            raise NotImplementedError("unknown plot kind {0!r}".format(kind))
        return PLOT_KINDS[kind](_field(payload, "value"))

    if isinstance(payload, dict) and "pieces" in payload:
        return wt.serial.decodeTransform(payload)

    if isinstance(payload, dict) and ("cells" in payload or "anchors" in payload):
        return wt.serial.decodeSheaf(payload)

    if isinstance(payload, list) and payload and isinstance(payload[0], dict) and "potential" in payload[0]:
        return wt.serial.decodeSheaf(payload)

    return wt.serial.decodeWObject(payload, complete=False)

## runs a computation command on its decoded payload
# @param command one of COMMANDS except verify
# @param payload decoded JSON input
# @return text to write
def runCommand(command, payload):
    if command == "legendre":
        f = wt.serial.decodePLFunction(payload)
        return wt.serial.dumps(wt.serial.encodeConjugate(wt.plfun.legendre(f)))

    if command == "pishriek":
        s = wt.serial.decodeSheaf(payload)
        return wt.serial.dumps(wt.serial.encodeWObject(wt.fourier.piShriek(s)))

    if command == "fourier":
        s = wt.serial.decodeSheaf(payload)
        return wt.serial.dumps(wt.serial.encodeTransform(wt.fourier.fourierTransform(s)))

    if command == "stalk":
        s = wt.serial.decodeSheaf(_field(payload, "sheaf"))
        y = _rationalField(payload, "y")
        return wt.serial.dumps(wt.serial.encodeWObject(wt.fourier.fourierStalk(s, y)))

    if command == "tensor":
        a = wt.serial.decodeWObject(_field(payload, "a"))
        b = wt.serial.decodeWObject(_field(payload, "b"))
        return wt.serial.dumps(wt.serial.encodeWObject(wt.wcore.tensor(a, b)))

    if command == "convolve":
        a = wt.serial.decodeSheaf(_field(payload, "a"))
        b = wt.serial.decodeSheaf(_field(payload, "b"))
        x = _rationalField(payload, "x")
        return wt.serial.dumps(wt.serial.encodeWObject(wt.fourier.convolveStalk(a, b, x)))

    if command == "invert-check":
        f = wt.serial.decodePLFunction(payload)
        return wt.serial.dumps({"inverts": wt.fourier.checkInversion(f)})

    if command == "plot":
        return wt.visual_2d.renderBarcodeSVG(_plotObject(payload))

    raise NotImplementedError("unknown command {0!r}".format(command))

def _runVerify(args):
    settings = {"seed": args.seed,
                "probes": args.probes,
                "grid_eps": args.grid_eps,
                "jobs": args.jobs}

    try:
        settings = wt.verify.getSettings(settings)
    except ValueError as err:
        raise wt.serial.SchemaError(str(err))

    results = wt.verify.runSuites(settings)
    passed = wt.verify.printTable(results)

    if args.output is not None:
        report = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _writeText(wt.serial.dumps(report) + "\n", args.output)

    return 0 if passed else 1

def _fail(kind, err, code):
    sys.stderr.write(wt.serial.dumps({"error": kind, "message": str(err)}) + "\n")
    return code

## entry point of the wildtool script
# @param argv argument list, sys.argv[1:] when None
# @return exit code
def main(argv=None):
    args = parseArgs(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    try:
        if args.command == "verify":
            return _runVerify(args)

        payload = _readPayload(args.input)
        text = runCommand(args.command, payload)
        if args.command != "plot":
            text = text + "\n"
        _writeText(text, args.output)
    except (wt.serial.SchemaError, TypeError, NotImplementedError, IOError) as err:
        return _fail("schema" if isinstance(err, TypeError) else "usage", err, 2)
    except ValueError as err:
        return _fail("computation", err, 1)

    return 0


if __name__ == "__main__":
    sys.exit(main())
