"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

VERSION = "0.1"

# tolerances
CONVEXITY_TOL = 1e-9
INVARIANCE_TOL = 1e-8
CONTACT_TOL = 1e-12

# largest log-scale for which a raw product is still representable
MAX_LOG_SCALE = 700.0

# domination threshold on the ratio ||A^l|F|| / m(A^l|G)
DOMINATION_THRESHOLD = 0.5

# JSON float formatting (17 significant digits)
FLOAT_FORMAT = ".17g"

# environment variable capping the worker pool
THREADS_ENV = "COCYCLE_FORGE_THREADS"

GENERATOR_KINDS = [
    "random_bounded",
    "dominated",
    "cancellation",
    "elliptic",
    "near_isometry",
    "switching",
]

SUITES = [
    "core",
    "majorization",
    "domination",
    "perturb",
    "separation",
    "end_to_end",
]
