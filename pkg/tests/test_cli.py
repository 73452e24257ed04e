"""
Command line utility tests for pyscmadetect

Created on 17 Oct 2026

@author: pyscmadetect contributors
"""

# pylint: disable=line-too-long, invalid-name, missing-docstring, no-member

import os
import sys
import tempfile
import unittest
from io import StringIO
from unittest.mock import patch

from pyscmadetect._version import __version__ as VERSION
from pyscmadetect.exceptions import ParameterError
from pyscmadetect.globals import BLER_COLUMNS, DIVERGENCE_COLUMNS, TIMING_COLUMNS
from pyscmadetect.helpers import parse_config
from pyscmadetect.scmadetect_cli import ExperimentRunner, main

FIXTURE = os.path.join(os.path.dirname(__file__), "scma_k3_m4.txt")


class CLITest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self._tmpdir = tempfile.TemporaryDirectory()
        self.tmpdir = self._tmpdir.name

    def tearDown(self):
        self._tmpdir.cleanup()

    def catchio(self):
        """
        Capture stdout as string.
        """

        self._saved_stdout = sys.stdout
        self._strout = StringIO()
        sys.stdout = self._strout

    def restoreio(self) -> str:
        """
        Return captured output and restore stdout.
        """

        sys.stdout = self._saved_stdout
        return self._strout.getvalue().strip()

    def tmp(self, name: str) -> str:
        return os.path.join(self.tmpdir, name)

    def readfile(self, name: str) -> str:
        with open(self.tmp(name), "r", encoding="utf-8") as f:
            return f.read()

    def bounds(self, *args) -> tuple:
        self.catchio()
        try:
            rc = main(["bounds", "--verbosity", "0", *args])
        finally:
            output = self.restoreio()
        self.assertEqual(rc, 0)
        lines = output.splitlines()
        res = dict(line.split("=", 1) for line in lines[1:])
        return lines[0], res

    def testboundsreal(self):
        header, res = self.bounds("--df", "3", "--w", "0.05", "--sigma2", "0.1", "--suggest-w", "0.01")
        self.assertEqual(header, "d_f=3 w=0.05 nwid=5.0 wid=1.0 M=16")
        self.assertEqual((res["field"], res["sigma2"]), ("real", "0.1"))
        self.assertAlmostEqual(float(res["abs_error_bound"]), 0.18148, places=4)
        self.assertAlmostEqual(float(res["rel_error_bound"]), 3.75, places=12)
        self.assertAlmostEqual(float(res["suggested_w"]), 1.3333e-4, places=8)
        self.assertEqual(res["ops_mpa"], "12288")
        self.assertEqual(res["ops_mpa-split"], "192")
        self.assertEqual((res["N_dmpa-1d"], res["N_dmpa-2d"]), ("512", "512"))
        self.assertEqual(res["ops_dmpa-1d"], "36864")

    def testboundscomplex(self):
        _, res = self.bounds("--n0", "0.2")
        self.assertEqual((res["field"], res["N0"]), ("complex", "0.2"))
        self.assertAlmostEqual(float(res["abs_error_bound"]), 0.3237, places=3)
        self.assertAlmostEqual(float(res["rel_error_bound"]), 13.43, places=2)
        self.assertNotIn("suggested_w", res)

    def testboundsbad(self):
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit) as cm:
                main(["bounds", "--df", "3"])
            self.assertEqual(cm.exception.code, 2)
            with self.assertRaises(SystemExit) as cm:
                main(["bounds", "--sigma2", "0.1", "--n0", "0.2"])
            self.assertEqual(cm.exception.code, 2)
        self.assertEqual(main(["bounds", "--verbosity", "-1", "--sigma2", "0.1", "--w", "-1"]), 1)

    def testversion(self):
        self.catchio()
        try:
            with self.assertRaises(SystemExit) as cm:
                main(["-V"])
        finally:
            output = self.restoreio()
        self.assertEqual(cm.exception.code, 0)
        self.assertEqual(output, f"scmadetect {VERSION}")

    def testbler(self):
        args = ["bler", "--codebook", FIXTURE, "--n0", "0.000001", "--blocks", "10", "--iters", "3", "--verbosity", "0"]
        self.assertEqual(main(args + ["--out", self.tmp("bler.csv")]), 0)
        table = self.readfile("bler.csv")
        lines = table.splitlines()
        self.assertEqual(lines[0], ",".join(BLER_COLUMNS))
        self.assertEqual(lines[1], "mpa,1e-06,,30,0,0.0,0.0," + lines[1].split(",")[-1])
        stanza = parse_config(self.tmp("bler.cfg"))
        self.assertEqual(stanza["blocks"], "10")
        self.assertEqual(stanza["codebook"], FIXTURE)
        self.assertEqual(stanza["detector"], "mpa")
        self.assertNotIn("out", stanza)
        # replay from the reproducibility stanza
        rc = main(["bler", "-C", self.tmp("bler.cfg"), "--verbosity", "0", "--out", self.tmp("replay.csv")])
        self.assertEqual(rc, 0)
        self.assertEqual(self.readfile("replay.csv"), table)

    def testblerdmpa(self):
        args = ["bler", "--codebook", FIXTURE, "--detector", "dmpa", "--n0", "0.000001", "--w", "0.05,0.1", "--blocks", "5", "--iters", "3", "--verbosity", "0", "--out", self.tmp("dmpa.csv")]
        self.assertEqual(main(args), 0)
        lines = self.readfile("dmpa.csv").splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith("dmpa,1e-06,0.05,15,0,"))
        self.assertTrue(lines[2].startswith("dmpa,1e-06,0.1,15,"))
        self.assertEqual(parse_config(self.tmp("dmpa.cfg"))["w"], "0.05,0.1")

    def testenvconfig(self):
        with open(self.tmp("env.cfg"), "w", encoding="utf-8") as f:
            f.write(f"# test config\ncodebook={FIXTURE}\nn0=0.000001\nblocks=4\niters=2\nverbosity=0\n")
        with patch.dict(os.environ, {"SCMADETECT_CONF": self.tmp("env.cfg")}):
            rc = main(["bler", "--out", self.tmp("env.csv"), "--blocks", "7"])
        self.assertEqual(rc, 0)
        lines = self.readfile("env.csv").splitlines()
        self.assertTrue(lines[1].startswith("mpa,1e-06,,21,0,"))

    def testfailures(self):
        out = self.tmp("x.csv")
        self.assertEqual(main(["bler", "--k", "2", "--verbosity", "-1", "--out", out]), 1)
        self.assertEqual(main(["bler", "-C", self.tmp("missing.cfg"), "--verbosity", "-1", "--out", out]), 1)
        self.assertEqual(main(["bler", "--codebook", self.tmp("missing.txt"), "--verbosity", "-1", "--out", out]), 1)
        self.assertEqual(main(["bler", "--blocks", "0", "--verbosity", "-1", "--out", out]), 1)
        self.assertFalse(os.path.exists(out))
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit) as cm:
                main(["bler", "--detector", "bogus"])
        self.assertEqual(cm.exception.code, 2)
        with self.assertRaisesRegex(ParameterError, "Unknown command"):
            ExperimentRunner(command="plot")

    def testtiming(self):
        args = ["timing", "--m", "4", "--df", "2", "--detectors", "mpa,dmpa", "--trials", "2", "--iters", "2", "--verbosity", "0", "--out", self.tmp("timing.csv")]
        self.assertEqual(main(args), 0)
        lines = self.readfile("timing.csv").splitlines()
        self.assertEqual(lines[0], ",".join(TIMING_COLUMNS))
        self.assertEqual([line.split(",")[:3] for line in lines[1:]], [["mpa", "2", "2"], ["dmpa", "2", "2"]])
        stanza = parse_config(self.tmp("timing.cfg"))
        self.assertEqual(stanza["detectors"], "mpa,dmpa")
        self.assertNotIn("complex2d", stanza)

    def testcompare(self):
        args = ["compare", "--k", "3", "--m", "4", "--w", "0.1", "--n0", "0.2", "--trials", "5", "--verbosity", "0", "--out", self.tmp("div.csv")]
        self.assertEqual(main(args), 0)
        lines = self.readfile("div.csv").splitlines()
        self.assertEqual(lines[0], ",".join(DIVERGENCE_COLUMNS))
        row = dict(zip(DIVERGENCE_COLUMNS, lines[1].split(",")))
        self.assertEqual((row["field"], row["N0"], row["w"], row["trials"]), ("real", "0.2", "0.1", "5"))
        self.assertLessEqual(float(row["max_abs"]), float(row["abs_bound"]))


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
