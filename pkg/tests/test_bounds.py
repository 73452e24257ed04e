"""
Error bound and complexity estimate tests for pyscmadetect

Created on 17 Oct 2026

@author: pyscmadetect contributors
"""

# pylint: disable=line-too-long, invalid-name, missing-docstring, no-member

import unittest

from pyscmadetect.bounds import (
    BoundInputs,
    abs_error_bound,
    abs_error_bound_complex,
    estimate_complexity,
    rel_error_bound,
    rel_error_bound_complex,
    snap_w,
    suggest_w,
)
from pyscmadetect.dmpa import DiscretizationParams
from pyscmadetect.exceptions import ParameterError
from pyscmadetect.globals import (
    FIELD_COMPLEX,
    PATH_DMPA_1D,
    PATH_DMPA_2D,
    PATH_MPA,
    PATH_MPA_SPLIT,
)


class BoundsTest(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None

    def tearDown(self):
        pass

    def testrealbounds(self):
        inp = BoundInputs(3, 0.05, 5.0, sigma2=0.1)
        self.assertAlmostEqual(abs_error_bound(inp), 0.18148, places=4)
        self.assertAlmostEqual(rel_error_bound(inp), 3.75, places=12)

    def testcomplexbounds(self):
        inp = BoundInputs(3, 0.05, 5.0, n0=0.2)
        self.assertAlmostEqual(abs_error_bound_complex(inp), 0.3237, places=3)
        self.assertAlmostEqual(rel_error_bound_complex(inp), 13.43, places=2)

    def testlinearity(self):
        for fn in (abs_error_bound, rel_error_bound, abs_error_bound_complex, rel_error_bound_complex):
            base = fn(BoundInputs(3, 0.05, sigma2=0.05, n0=0.1))
            self.assertAlmostEqual(fn(BoundInputs(3, 0.1, sigma2=0.05, n0=0.1)) / base, 2.0, places=12)
            self.assertAlmostEqual(fn(BoundInputs(6, 0.05, sigma2=0.05, n0=0.1)) / base, 2.0, places=12)

    def testmonotonic(self):
        for fn in (abs_error_bound, rel_error_bound, abs_error_bound_complex, rel_error_bound_complex):
            for d_f in (2, 3, 4, 5):
                for w in (0.01, 0.05, 0.1):
                    prev = float("inf")
                    for N0 in (0.002, 0.02, 0.2):
                        val = fn(BoundInputs(d_f, w, sigma2=N0 / 2, n0=N0))
                        self.assertLess(val, prev)
                        self.assertLess(val, fn(BoundInputs(d_f + 1, w, sigma2=N0 / 2, n0=N0)))
                        self.assertLess(val, fn(BoundInputs(d_f, 2 * w, sigma2=N0 / 2, n0=N0)))
                        prev = val

    def testinputs(self):
        with self.assertRaisesRegex(ParameterError, "missing sigma2"):
            abs_error_bound(BoundInputs(3, 0.05))
        with self.assertRaisesRegex(ParameterError, "missing n0"):
            rel_error_bound_complex(BoundInputs(3, 0.05, sigma2=0.1))
        with self.assertRaisesRegex(ParameterError, "w must be > 0"):
            BoundInputs(3, -0.05)
        with self.assertRaisesRegex(ParameterError, "d_f must be > 0"):
            BoundInputs(0, 0.05)

    def testsnapw(self):
        self.assertAlmostEqual(snap_w(0.3, 5.0, 1.0), 0.25, places=15)
        self.assertAlmostEqual(snap_w(0.05, 5.0, 1.0), 0.05, places=15)
        w = snap_w(0.033, 5.0, 0.7)
        self.assertLessEqual(w, 0.033)
        self.assertAlmostEqual(5.0 / w, round(5.0 / w), places=6)
        self.assertAlmostEqual(0.7 / w, round(0.7 / w), places=6)

    def testsuggestreal(self):
        inp = BoundInputs(3, nwid=5.0, sigma2=0.1, wid=1.0)
        raw = 0.01 * 2 * 0.1 / 15
        w = suggest_w(0.01, inp)
        self.assertLessEqual(w, raw * (1 + 1e-12))
        self.assertAlmostEqual(w, 1.3333e-4, places=8)
        self.assertAlmostEqual(5.0 / w, round(5.0 / w), places=6)
        self.assertAlmostEqual(1.0 / w, round(1.0 / w), places=6)
        target = rel_error_bound(BoundInputs(3, 0.05, 5.0, sigma2=0.1))
        self.assertLessEqual(suggest_w(target, inp), 0.05 + 1e-15)

    def testsuggestcomplex(self):
        inp = BoundInputs(3, nwid=5.0, n0=0.2, wid=1.0)
        w = suggest_w(0.1, inp, FIELD_COMPLEX)
        self.assertLessEqual(w, 3.7221e-4)
        self.assertGreater(w, 3.7e-4)
        self.assertLessEqual(rel_error_bound_complex(BoundInputs(3, w, 5.0, n0=0.2)), 0.1 + 1e-12)

    def testsuggestbad(self):
        inp = BoundInputs(3, nwid=5.0, sigma2=0.1)
        with self.assertRaisesRegex(ParameterError, "Target must be > 0"):
            suggest_w(0.0, inp)
        with self.assertRaisesRegex(ParameterError, "Unknown field"):
            suggest_w(0.1, inp, "quaternion")
        with self.assertRaisesRegex(ParameterError, "missing n0"):
            suggest_w(0.1, inp, FIELD_COMPLEX)

    def testcomplexitympa(self):
        est = estimate_complexity(5, 16)
        self.assertEqual((est.path, est.operations, est.transform_length), (PATH_MPA, 5242880, 0))
        self.assertEqual(estimate_complexity(5, 16, path=PATH_MPA_SPLIT).operations, 5120)
        self.assertEqual(estimate_complexity(2, 16).operations, 512)
        self.assertEqual(estimate_complexity(2, 16, path=PATH_MPA_SPLIT).operations, 32)

    def testcomplexitydmpa(self):
        params = DiscretizationParams(0.05, wid=1.0, nwid=5.0)
        est = estimate_complexity(3, 16, params, PATH_DMPA_1D)
        self.assertEqual((est.transform_length, est.operations), (512, 36864))
        est = estimate_complexity(3, 16, params, PATH_DMPA_2D)
        self.assertEqual((est.transform_length, est.operations), (512, 35389440))
        est = estimate_complexity(3, 16, DiscretizationParams(0.05), PATH_DMPA_1D)
        self.assertEqual(est.operations, 36864)  # wid defaults to the amplitude bound
        with self.assertRaisesRegex(ParameterError, "needs discretization params"):
            estimate_complexity(3, 16, None, PATH_DMPA_1D)
        with self.assertRaisesRegex(ParameterError, "Unknown complexity path"):
            estimate_complexity(3, 16, params, "dmpa-3d")


if __name__ == "__main__":
    # import sys;sys.argv = ['', 'Test.testName']
    unittest.main()
