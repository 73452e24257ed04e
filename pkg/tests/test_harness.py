"""
Experiment harness tests for pyscmadetect

Created on 17 Oct 2026

@author: pyscmadetect contributors
"""

# pylint: disable=line-too-long, invalid-name, missing-docstring, no-member

import os
import tempfile
import unittest
from math import isnan

import numpy as np

from pyscmadetect.exceptions import ParameterError
from pyscmadetect.globals import (
    BLER_COLUMNS,
    DET_DMPA,
    DET_LLR,
    DET_MPA,
    DET_SPLIT_MPA,
    DETECTORS,
    FIELD_COMPLEX,
)
from pyscmadetect.harness import (
    BlerRecord,
    SimConfig,
    emit_results,
    run_bler,
    run_divergence,
    run_timing,
    snap_to_grid,
    wilson_interval,
)
from pyscmadetect.helpers import parse_config

FIXTURE = os.path.join(os.path.dirname(__file__), "scma_k3_m4.txt")


class HarnessTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self._tmpdir = tempfile.TemporaryDirectory()
        self.tmpdir = self._tmpdir.name

    def tearDown(self):
        self._tmpdir.cleanup()

    def readfile(self, name: str) -> str:
        with open(os.path.join(self.tmpdir, name), "r", encoding="utf-8") as f:
            return f.read()

    def testwilson(self):
        lo, hi = wilson_interval(50, 100)
        self.assertAlmostEqual(lo, 0.40383, places=4)
        self.assertAlmostEqual(hi, 0.59617, places=4)
        lo, hi = wilson_interval(0, 100)
        self.assertEqual(lo, 0.0)
        self.assertAlmostEqual(hi, 0.037, places=3)
        lo, hi = wilson_interval(100, 100)
        self.assertEqual(hi, 1.0)
        self.assertAlmostEqual(lo, 0.963, places=3)
        for errors, n in ((1, 10), (3, 7), (999, 1000), (0, 1)):
            lo, hi = wilson_interval(errors, n)
            self.assertLessEqual(lo, errors / n)
            self.assertGreaterEqual(hi, errors / n)
        with self.assertRaisesRegex(ParameterError, "Trial count must be >= 1"):
            wilson_interval(0, 0)

    def testsimconfig(self):
        cfg = SimConfig(n0=0.1, w=0.05)
        self.assertEqual((cfg.n0, cfg.w), ((0.1,), (0.05,)))
        with self.assertRaisesRegex(ParameterError, "Unknown detector"):
            SimConfig(detector="bogus")
        with self.assertRaisesRegex(ParameterError, "Unknown mode"):
            SimConfig(mode="bogus")
        with self.assertRaisesRegex(ParameterError, "blocks must be >= 1"):
            SimConfig(blocks=0)
        with self.assertRaisesRegex(ParameterError, "N0 values must be > 0"):
            SimConfig(n0=(0.1, -0.1))
        with self.assertRaisesRegex(ParameterError, "w values must be > 0"):
            SimConfig(w=(0.0,))

    def testblernoiseless(self):
        for det in DETECTORS:
            cfg = SimConfig(
                detector=det,
                n0=(1e-6,),
                w=(0.05,),
                blocks=20,
                iterations=3,
                codebook=FIXTURE,
            )
            (rec,) = run_bler(cfg)
            self.assertEqual((rec.detector, rec.N0, rec.blocks), (det, 1e-6, 60))
            self.assertEqual((rec.block_errors, rec.bler, rec.ci_lo), (0, 0.0, 0.0))
            self.assertGreater(rec.ci_hi, 0.0)
            if det == DET_DMPA:
                self.assertEqual(rec.w, 0.05)
            else:
                self.assertTrue(isnan(rec.w))

    def testblerworkers(self):
        tables = []
        for workers in (1, 3):
            cfg = SimConfig(
                detector=DET_LLR,
                n0=(0.1, 0.2),
                blocks=150,
                iterations=3,
                codebook=FIXTURE,
                workers=workers,
            )
            calls = []
            records = run_bler(cfg, lambda done, total: calls.append((done, total)))
            self.assertEqual(calls[-1], (6, 6))
            path = os.path.join(self.tmpdir, f"bler{workers}.csv")
            emit_results(records, path)
            tables.append(self.readfile(f"bler{workers}.csv"))
        self.assertEqual(tables[0], tables[1])
        self.assertTrue(tables[0].startswith(",".join(BLER_COLUMNS) + "\n"))
        self.assertIn("llr,0.1,,450,", tables[0])

    def testblersweeporder(self):
        cfg = SimConfig(
            detector=DET_DMPA,
            n0=(0.2, 0.02),
            w=(0.1, 0.05),
            blocks=5,
            iterations=2,
            codebook=FIXTURE,
        )
        records = run_bler(cfg)
        self.assertEqual(
            [(r.N0, r.w) for r in records],
            [(0.2, 0.1), (0.2, 0.05), (0.02, 0.1), (0.02, 0.05)],
        )
        for r in records:
            self.assertLessEqual(r.ci_lo, r.bler)
            self.assertGreaterEqual(r.ci_hi, r.bler)

    def testemitresults(self):
        path = os.path.join(self.tmpdir, "empty.csv")
        emit_results([], path, BLER_COLUMNS)
        self.assertEqual(self.readfile("empty.csv"), ",".join(BLER_COLUMNS) + "\n")
        with self.assertRaisesRegex(ParameterError, "Column names required"):
            emit_results([], path)
        rec = BlerRecord(DET_MPA, 0.02, float("nan"), 3000, 15, 0.005, 0.003, 0.008)
        path = os.path.join(self.tmpdir, "bler.csv")
        emit_results(
            [rec],
            path,
            stanza={"k": 4, "n0": (0.02, 0.2), "aligned": True, "codebook": None},
        )
        lines = self.readfile("bler.csv").splitlines()
        self.assertEqual(lines[1], "mpa,0.02,,3000,15,0.005,0.003,0.008")
        stanza = self.readfile("bler.cfg")
        self.assertTrue(stanza.startswith("# pyscmadetect "))
        self.assertIn("# table bler.csv\n", stanza)
        self.assertEqual(
            parse_config(os.path.join(self.tmpdir, "bler.cfg")),
            {"k": "4", "n0": "0.02,0.2", "aligned": "true"},
        )
        with self.assertRaisesRegex(ParameterError, "Unable to write results"):
            emit_results([rec], os.path.join(self.tmpdir, "nodir", "bler.csv"))

    def testtiming(self):
        cfg = SimConfig(M=4, n0=(0.02,), w=(0.1,), iterations=2)
        calls = []
        records = run_timing(
            cfg,
            (2, 3),
            (DET_MPA, DET_LLR, DET_DMPA),
            3,
            progress=lambda done, total: calls.append((done, total)),
        )
        self.assertEqual(
            [(r.d_f, r.detector) for r in records],
            [(2, "mpa"), (2, "llr"), (2, "dmpa"), (3, "mpa"), (3, "llr"), (3, "dmpa")],
        )
        self.assertEqual(calls[-1], (6, 6))
        for r in records:
            self.assertEqual(r.trials, 3)
            self.assertGreater(r.mean_s, 0.0)
            self.assertGreaterEqual(r.std_s, 0.0)
        (rec,) = run_timing(cfg, (2,), (DET_DMPA,), 2, complex2d=True)
        self.assertEqual((rec.detector, rec.d_f), (DET_DMPA, 2))
        with self.assertRaisesRegex(ParameterError, "Unknown detector"):
            run_timing(cfg, (2,), ("bogus",), 2)
        with self.assertRaisesRegex(ParameterError, "Trials must be >= 1"):
            run_timing(cfg, (2,), (DET_MPA,), 0)

    def testtimingtrend(self):
        cfg = SimConfig(M=16, n0=(0.02,), w=(0.05,))
        records = run_timing(cfg, (2, 4, 5), (DET_MPA, DET_DMPA), 3)
        t = {(r.detector, r.d_f): r.mean_s for r in records}
        for d_f in (4, 5):
            self.assertLess(t[(DET_DMPA, d_f)], t[(DET_MPA, d_f)])
        self.assertLess(t[(DET_DMPA, 5)] / t[(DET_MPA, 5)], 0.1)
        self.assertLess(t[(DET_MPA, 2)], t[(DET_MPA, 4)])
        self.assertLess(t[(DET_MPA, 4)], t[(DET_MPA, 5)])
        # exhaustive cost grows at least ten times faster from d_f 2 to 5
        mpa_growth = t[(DET_MPA, 5)] / t[(DET_MPA, 2)]
        dmpa_growth = t[(DET_DMPA, 5)] / t[(DET_DMPA, 2)]
        self.assertLessEqual(10 * dmpa_growth, mpa_growth)

    def testblerparity(self):
        # lowest noise level: sigma (about 0.032) is below w = 0.05, nearest
        # point lookup shifts the likelihood by up to 2.4 sigma
        cfg = SimConfig(detector=DET_SPLIT_MPA, n0=(0.002,), blocks=1000)
        (mpa,) = run_bler(cfg)
        coarse, fine = run_bler(
            SimConfig(detector=DET_DMPA, n0=(0.002,), w=(0.05, 0.005), blocks=1000)
        )
        self.assertGreater(coarse.ci_lo, mpa.ci_hi)
        self.assertLessEqual(fine.ci_lo, mpa.ci_hi)
        self.assertLessEqual(mpa.ci_lo, fine.ci_hi)
        # sigma well above w
        cfg = SimConfig(detector=DET_SPLIT_MPA, n0=(0.2,), blocks=300)
        (mpa,) = run_bler(cfg)
        (dmpa,) = run_bler(
            SimConfig(detector=DET_DMPA, n0=(0.2,), w=(0.05,), blocks=300)
        )
        self.assertLessEqual(dmpa.ci_lo, mpa.ci_hi)
        self.assertLessEqual(mpa.ci_lo, dmpa.ci_hi)

    def testcoarsefloor(self):
        (mpa,) = run_bler(SimConfig(detector=DET_SPLIT_MPA, n0=(0.002,), blocks=200))
        low, high = run_bler(
            SimConfig(detector=DET_DMPA, n0=(0.002, 0.004), w=(0.3,), blocks=200)
        )
        self.assertEqual((low.N0, high.N0), (0.002, 0.004))
        self.assertGreater(low.ci_lo, mpa.ci_hi)
        self.assertGreater(low.bler, 0.5)
        # error floor: less noise does not help a coarse grid
        self.assertGreater(low.ci_lo, high.ci_hi)

    def testdivergencealigned(self):
        cfg = SimConfig(codebook=FIXTURE, n0=(0.2,), w=(0.05,))
        (rec,) = run_divergence(cfg, trials=10, aligned=True)
        self.assertEqual((rec.field, rec.trials, rec.entries), ("real", 10, 120))
        self.assertLess(rec.max_abs, 1e-8)
        (rec,) = run_divergence(cfg, trials=2, field_=FIELD_COMPLEX, aligned=True)
        self.assertEqual((rec.field, rec.entries), ("complex", 48))
        self.assertLess(rec.max_abs, 1e-8)

    def testdivergencebounds(self):
        cfg = SimConfig(n0=(0.2,), w=(0.1, 0.05))
        coarse, fine = run_divergence(cfg, trials=10)
        self.assertEqual((coarse.w, fine.w), (0.1, 0.05))
        self.assertEqual(coarse.entries, 10 * 12 * 4)
        for rec in (coarse, fine):
            self.assertLessEqual(rec.max_abs, rec.abs_bound)
            self.assertLessEqual(rec.mean_abs, rec.max_abs)
            self.assertFalse(rec.abs_exceeded)
        self.assertAlmostEqual(fine.abs_bound * 2, coarse.abs_bound, places=12)
        with self.assertRaisesRegex(ParameterError, "Unknown field"):
            run_divergence(cfg, field_="quaternion")

    def testdivergenceexceeded(self):
        cfg = SimConfig(n0=(0.02,), w=(0.1,))
        with self.assertLogs("pyscmadetect.harness", level="WARNING") as logs:
            (rec,) = run_divergence(cfg, trials=200)
        self.assertTrue(rec.rel_exceeded)
        self.assertGreater(rec.max_rel, rec.rel_bound)
        self.assertIn("exceeds its bound", logs.output[0])

    def testsnaptogrid(self):
        np.testing.assert_allclose(snap_to_grid(np.array([0.124, -0.126]), 0.05), [0.1, -0.15])
        np.testing.assert_allclose(snap_to_grid(np.array([0.31 - 0.07j]), 0.1), [0.3 - 0.1j])


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
