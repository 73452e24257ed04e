"""
Collection of SCMA detection helper methods.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import logging
import logging.handlers
import sys
from argparse import ArgumentParser
from math import ceil
from os import getenv

import numpy as np

from pyscmadetect.globals import (
    LOGFORMAT,
    LOGGING_LEVELS,
    LOGLIMIT,
    VERBOSITY_CRITICAL,
    VERBOSITY_DEBUG,
    VERBOSITY_HIGH,
    VERBOSITY_LOW,
    VERBOSITY_MEDIUM,
)

TRUTHY = ("true", "yes", "on")
FALSY = ("false", "no", "off")


def parse_config(configfile: str) -> dict:
    """
    Parse config file.

    :param str configfile: fully qualified path to config file
    :returns: config as kwargs, or None if file not found
    :rtype: dict
    :raises: FileNotFoundError
    :raises: ValueError
    """

    config = {}
    try:
        with open(configfile, "r", encoding="utf-8") as infile:
            for cf in infile:
                if cf.strip() == "" or cf[0] == "#":  # comment
                    continue
                key, val = cf.split("=", 1)
                config[key.strip()] = val.strip()
        return config
    except FileNotFoundError as err:
        raise FileNotFoundError(f"Configuration file not found: {configfile}") from err
    except ValueError as err:
        raise ValueError(f"Configuration file invalid: {configfile}, {err}") from err


def config2args(config: dict) -> list:
    """
    Convert parsed config into command line tokens.

    Keys are long option names without the leading dashes. Boolean
    flags are given as true/false values.

    :param dict config: parsed config
    :returns: list of argument tokens
    :rtype: list
    """

    args = []
    for key, val in config.items():
        opt = f"--{key.replace('_', '-')}"
        if val.lower() in TRUTHY:
            args.append(opt)
        elif val.lower() in FALSY:
            continue
        else:
            args += [opt, val]
    return args


def common_args(name: str, logdefault: int = VERBOSITY_MEDIUM) -> ArgumentParser:
    """
    Create parent argument parser holding config and logging args.

    :param str name: name of CLI utility e.g. "scmadetect"
    :param int logdefault: default logger verbosity level
    :returns: parent argument parser
    :rtype: ArgumentParser
    """

    ap = ArgumentParser(add_help=False)
    ap.add_argument(
        "-C",
        "--config",
        required=False,
        help=(
            "Fully qualified path to CLI configuration file "
            f"(will use environment variable {name.upper()}_CONF where set)"
        ),
        default=getenv(f"{name.upper()}_CONF", None),
    )
    ap.add_argument(
        "--verbosity",
        required=False,
        help=(
            f"Log message verbosity "
            f"{VERBOSITY_CRITICAL} = critical, "
            f"{VERBOSITY_LOW} = low (error), "
            f"{VERBOSITY_MEDIUM} = medium (warning), "
            f"{VERBOSITY_HIGH} = high (info), {VERBOSITY_DEBUG} = debug"
        ),
        type=int,
        choices=[
            VERBOSITY_CRITICAL,
            VERBOSITY_LOW,
            VERBOSITY_MEDIUM,
            VERBOSITY_HIGH,
            VERBOSITY_DEBUG,
        ],
        default=logdefault,
    )
    ap.add_argument(
        "--logtofile",
        required=False,
        help="fully qualified log file name, or '' for no log file",
        type=str,
        default="",
    )
    return ap


def set_common_args(
    name: str,
    ap: ArgumentParser,
    logname: str = "pyscmadetect",
    logdefault: int = VERBOSITY_MEDIUM,
    argv: list = None,
) -> dict:
    """
    Parse arguments, merging any config file, and set up logging.

    Config file settings are inserted ahead of the command line arguments
    (after the subcommand, if any), so explicit flags take precedence.

    :param str name: name of CLI utility e.g. "scmadetect"
    :param ArgumentParser ap: argument parser instance
    :param str logname: logger name
    :param int logdefault: default logger verbosity level
    :param list argv: argument tokens (sys.argv[1:])
    :returns: parsed arguments as kwargs
    :rtype: dict
    """

    args = list(sys.argv[1:] if argv is None else argv)
    known, _ = common_args(name, logdefault).parse_known_args(args)
    if known.config is not None:
        pos = 1 if args and not args[0].startswith("-") else 0
        args = args[:pos] + config2args(parse_config(known.config)) + args[pos:]

    kwargs = vars(ap.parse_args(args))
    kwargs.pop("config", None)

    logger = logging.getLogger(logname)
    set_logging(
        logger, kwargs.get("verbosity", logdefault), kwargs.get("logtofile", "")
    )

    return kwargs


def set_logging(
    logger: logging.Logger,
    verbosity: int = VERBOSITY_MEDIUM,
    logtofile: str = "",
    logform: str = LOGFORMAT,
    limit: int = LOGLIMIT,
):
    """
    Set logging format and level.

    :param logging.Logger logger: module log handler
    :param int verbosity: verbosity level -1,0,1,2,3 (2 - MEDIUM)
    :param str logtofile: fully qualified log file name ("")
    :param str logform: logging format (datetime - level - name)
    :param int limit: maximum logfile size in bytes (10MB)
    """

    try:
        level = LOGGING_LEVELS[int(verbosity)]
    except (KeyError, ValueError):
        level = logging.WARNING

    logger.setLevel(logging.DEBUG)
    for handler in list(logger.handlers):  # repeated CLI invocations
        logger.removeHandler(handler)
    logformat = logging.Formatter(
        logform,
        datefmt="%Y-%m-%d %H:%M:%S",
        style="{",
    )
    if logtofile == "":
        loghandler = logging.StreamHandler()
    else:
        loghandler = logging.handlers.RotatingFileHandler(
            logtofile, mode="a", maxBytes=limit, backupCount=10, encoding="utf-8"
        )
    loghandler.setFormatter(logformat)
    loghandler.setLevel(level)
    logger.addHandler(loghandler)


def progbar(i: int, lim: int, inc: int = 50):
    """
    Display progress bar on console.
    """

    i = min(i, lim)
    pct = int(i * inc / lim)
    if not i % max(int(lim / inc), 1):
        print(
            f"{int(pct*100/inc):02}% " + "▓" * pct + "░" * (inc - pct),
            end="\r",
        )


def floatlist(val: str) -> tuple:
    """
    Parse comma-separated list of floats e.g. "0.002,0.004".

    :param str val: comma-separated values
    :return: tuple of floats
    :rtype: tuple
    """

    return tuple(float(v) for v in str(val).split(",") if v.strip() != "")


def intlist(val: str) -> tuple:
    """
    Parse comma-separated list of integers e.g. "2,3,4,5".

    :param str val: comma-separated values
    :return: tuple of integers
    :rtype: tuple
    """

    return tuple(int(v) for v in str(val).split(",") if v.strip() != "")


def strlist(val: str) -> tuple:
    """
    Parse comma-separated list of names e.g. "mpa,dmpa".

    :param str val: comma-separated values
    :return: tuple of stripped strings
    :rtype: tuple
    """

    return tuple(v.strip() for v in str(val).split(",") if v.strip() != "")


def is_power_of_two(n: int) -> bool:
    """
    Check if integer is a (positive) power of two.

    :param int n: value
    :return: True if n = 2**k for some k >= 0
    :rtype: bool
    """

    return n >= 1 and (n & (n - 1)) == 0


def next_power_of_two(n: int) -> int:
    """
    Smallest power of two >= n.

    :param int n: value (>= 1)
    :return: power of two
    :rtype: int
    """

    return 1 << max(int(n) - 1, 0).bit_length()


def round_half_away(x):
    """
    Round to nearest integer, halves rounded away from zero.

    e.g. 0.5 -> 1, -0.5 -> -1, 2.5 -> 3

    :param x: scalar or array
    :return: rounded integer value(s)
    """

    x = np.asarray(x, dtype=float)
    rounded = (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype(np.int64)
    return rounded if rounded.ndim else int(rounded)


def grid_steps(val: float, w: float) -> int:
    """
    Number of sampling intervals w needed to cover val, snapped up.

    Values within floating round-off of an exact multiple are not
    bumped to the next step e.g. (1.0, 0.05) -> 20, (1.01, 0.05) -> 21.

    :param float val: half-width to cover
    :param float w: sampling interval
    :return: integer step count
    :rtype: int
    """

    ratio = val / w
    nearest = round(ratio)
    if abs(ratio - nearest) <= 1e-9 * max(1.0, abs(ratio)):
        return int(nearest)
    return int(ceil(ratio))
