"""
When does the complex projection stay quasi-Hermitian?
======================================================

For a complex metric the complex part of every generalized density matrix is
again eta-pseudo-Hermitian. A metric with a genuine j-part breaks this.
"""

import numpy as np

from qqdyn import Metric, proposition1_check
from qqdyn.sampling import random_complex_metric, random_quaternionic_metric

rng = np.random.default_rng(7)

complex_eta = Metric(random_complex_metric(rng, 3))
report = proposition1_check(complex_eta, trials=200, seed=1)
print(f"complex metric: {report.violations} violations, worst residual {report.residuals.max():.1e}")

quat_eta = Metric(random_quaternionic_metric(rng, 3))
report = proposition1_check(quat_eta, trials=200, seed=1)
print(f"quaternionic metric: {report.violations}/200 violations, smallest {report.min_violation:.2e}")
