#!/usr/bin/env python3
"""
Golden Value Validation Script
Recomputes the reference values of the toolkit and compares them with known results
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from services.cone_cpn import delta  # noqa: E402
from services.cone_general import ConeSpec, delta_general  # noqa: E402
from services.contraction import gap_certifier  # noqa: E402
from services.gauge_compare import gauge_comparator  # noqa: E402

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)
SYMMETRIC = np.array([[2, 1], [1, 2]], dtype=np.complex128)


def _close(value, expected, tol=1e-9):
    return value is not None and math.isclose(value, expected, rel_tol=tol, abs_tol=tol)


def validate_metric():
    """δ on small pairs"""
    print("\n✓ Validating projective metric...")
    checks = {
        "δ((1,1),(2,1)) = log 2": _close(delta([1, 1], [2, 1]), LOG2),
        "δ((2,1),(1,2)) = log 4": _close(delta([2, 1], [1, 2]), LOG4),
        "δ((1,0),(0,1)) = inf": math.isinf(delta([1, 0], [0, 1])),
        "general cone example = log 1.5": _close(
            delta_general(ConeSpec(np.array([[1, 1], [1, -1]])), [2, 1], [3, 1]), math.log(1.5)
        ),
    }
    return _report("metric", checks)


def validate_certificate():
    """Condition, θσ, diameter sandwich and gap for [[2,1],[1,2]]"""
    print("\n✓ Validating certificate of [[2,1],[1,2]]...")
    cert = gap_certifier.certify(SYMMETRIC, samples=64, oracle=True)
    ts = cert.theta_sigma
    checks = {
        "condition margin = 2": _close(cert.condition.margin, 2.0),
        "θ = 0.6": ts is not None and _close(ts.theta, 0.6),
        "σ = 2": ts is not None and _close(ts.sigma, 2.0),
        "θσ bound = 18 log 2": ts is not None and _close(ts.diam_bound, 18 * LOG2),
        "Δ₁ = log 4": cert.diameter is not None and _close(cert.diameter.delta1, LOG4),
        "sandwich upper = 3 log 4": _close(cert.delta_up, 3 * LOG4),
        "c = 7/9": _close(cert.contraction, 7 / 9),
        "λ₁ = 3": cert.leading is not None and abs(cert.leading.eigenvalue - 3) < 1e-9,
        "oracle ratio 1/3 ≤ c": cert.oracle is not None and cert.oracle.passed and _close(cert.oracle.ratio, 1 / 3),
    }
    identity = gap_certifier.check_condition(np.eye(2))
    checks["identity violates at (1,2,1,2)"] = identity.first_violation == (1, 2, 1, 2)
    return _report("certificate", checks)


def validate_gauge():
    """Gauge interval and the growth sequence"""
    print("\n✓ Validating hyperbolic gauge bounds...")
    interval = gauge_comparator.dc_bounds_for_pair([1, 1], [2, 1])
    first = gauge_comparator.remark_sequences(1)
    checks = {
        "d((1,1),(2,1)) = log 2": _close(interval.lower, LOG2) and _close(interval.upper, LOG2),
        "x₁ = (1,1,1)": bool(np.allclose(first.x, [1, 1, 1])),
        "figure pair has finite δ": math.isfinite(delta(*gauge_comparator.figure_pair())),
    }
    return _report("gauge", checks)


def _report(section, checks):
    errors = []
    failed_checks = [name for name, passed in checks.items() if not passed]
    if failed_checks:
        errors.append(f"❌ {section}: Failed checks - {', '.join(failed_checks)}")
    else:
        print(f"  ✓ All checks passed for {section}")
    return errors


def main():
    """Run all validations"""
    print("=" * 60)
    print("Golden Value Validation")
    print("=" * 60)

    all_errors = []

    # Run validations
    all_errors.extend(validate_metric())
    all_errors.extend(validate_certificate())
    all_errors.extend(validate_gauge())

    # Print results
    print("\n" + "=" * 60)
    if all_errors:
        print("❌ VALIDATION FAILED")
        print("=" * 60)
        for error in all_errors:
            print(error)
        sys.exit(1)
    else:
        print("✅ ALL VALIDATIONS PASSED")
        print("=" * 60)
        sys.exit(0)


if __name__ == "__main__":
    main()
