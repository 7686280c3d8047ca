"""Python face of the sphere-flow analyzer.

The heavy lifting lives in the _sphereflow extension; JSON-returning entry
points are wrapped here so callers get plain dicts.
"""

import json as _json

from _sphereflow import (  # noqa: F401
    count_nc_tree_classes,
    count_nc_trees_labeled,
    count_plane_trees,
    enumerate_nc_tree_classes,
    enumerate_plane_trees,
    render_svg,
)
import _sphereflow as _core


def _c(values):
    return [complex(v) for v in values]


def analyze(zeros, poles=(), a=1.0, stride=8):
    return _json.loads(_core.analyze_json(_c(zeros), _c(poles), complex(a), stride))


def classify(zeros, poles=(), a=1.0):
    return _json.loads(_core.classify_json(_c(zeros), _c(poles), complex(a)))


def check_nondegeneracy(zeros, poles=(), a=1.0):
    return _json.loads(_core.nondeg_json(_c(zeros), _c(poles), complex(a)))


def realize_polynomial(nbr):
    return _json.loads(_core.realize_polynomial_json(list(map(list, nbr))))


def realize_antipolynomial(n, chords):
    return _json.loads(_core.realize_antipolynomial_json(n, [tuple(c) for c in chords]))


def realize_rational(blue_rotation, blue_twin, red_rotation, red_twin):
    return _json.loads(
        _core.realize_rational_json(blue_rotation, blue_twin, red_rotation, red_twin)
    )
