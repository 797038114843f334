"""Self-check battery: structural identities of the shipped model plus a
codespace stationarity run, aggregated for the `verify` CLI command."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import bitflip, zeno
from .experiments import run_fidelity_curve

# Reference Pauli decomposition of the detection Hamiltonian: every nonzero
# string factors as (data part)·(ancilla part) from these groups, all sharing
# one coefficient magnitude; entries give the relative sign.
DETECTION_PAULI_SIGNS: dict[str, dict[str, int]] = {
    "III": {"IX": +1, "XI": +1, "XX": +1, "XZ": +1, "YY": -1, "ZX": +1},
    "IZZ": {"IX": -1, "XI": +1, "XX": -1, "XZ": +1, "YY": +1, "ZX": -1},
    "ZIZ": {"IX": -1, "XI": -1, "XX": +1, "XZ": -1, "YY": -1, "ZX": -1},
    "ZZI": {"IX": +1, "XI": -1, "XX": -1, "XZ": -1, "YY": +1, "ZX": +1},
}

# Same for the correction Hamiltonian (data part varies, ancilla part fixed
# per group).
CORRECTION_PAULI_SIGNS: dict[str, dict[str, int]] = {
    "II": {"IIX": +1, "IXI": +1, "XII": +1, "XZZ": +1, "ZXZ": +1, "ZZX": +1},
    "IZ": {"IIX": -1, "IXI": -1, "XII": +1, "XZZ": +1, "ZXZ": -1, "ZZX": -1},
    "ZI": {"IIX": +1, "IXI": -1, "XII": -1, "XZZ": -1, "ZXZ": -1, "ZZX": +1},
    "ZZ": {"IIX": -1, "IXI": +1, "XII": -1, "XZZ": -1, "ZXZ": +1, "ZZX": -1},
}


def expected_detection_signs() -> dict[str, int]:
    """Flatten the detection table to {5-char string: sign}."""
    return {
        data + anc: sign
        for data, group in DETECTION_PAULI_SIGNS.items()
        for anc, sign in group.items()
    }


def expected_correction_signs() -> dict[str, int]:
    return {
        data + anc: sign
        for anc, group in CORRECTION_PAULI_SIGNS.items()
        for data, sign in group.items()
    }


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def check_decomposition(h: np.ndarray, expected_signs: dict[str, int]) -> CheckResult:
    """String set, relative signs, and coefficient uniformity of a Hamiltonian
    against its reference table.  The common magnitude is reported in the
    detail string, not asserted."""
    terms = bitflip.pauli_decomposition(h)
    got = set(terms)
    want = set(expected_signs)
    if got != want:
        missing = sorted(want - got)[:4]
        extra = sorted(got - want)[:4]
        return CheckResult(
            "pauli-decomposition", False,
            f"string sets differ (missing {missing}, extra {extra})",
        )
    magnitudes = {abs(c) for c in terms.values()}
    spread = max(magnitudes) - min(magnitudes)
    if spread > 1e-12:
        return CheckResult(
            "pauli-decomposition", False, f"coefficient magnitudes spread {spread:.3e}"
        )
    scale = max(magnitudes)
    for name, coeff in terms.items():
        if np.sign(coeff) != expected_signs[name]:
            return CheckResult(
                "pauli-decomposition", False, f"sign of {name} is {np.sign(coeff):+.0f}"
            )
    return CheckResult(
        "pauli-decomposition", True,
        f"{len(terms)} strings, uniform magnitude {scale:.6g}",
    )


def run_verification_battery(stationarity_horizon: float = 10.0) -> list[CheckResult]:
    """All structural checks plus the stationarity run, as named results."""
    results = []

    ops = zeno.build_cycle_operators(zeno.ZenoConfig(cycles=1))
    ok, dev = zeno.verify_pup_property(ops)
    results.append(
        CheckResult("cycle-projection-identity", ok, f"max deviation {dev:.3e}")
    )

    model = bitflip.build_code_model()
    flags = zeno.verify_kl_condition(list(model.error_ops))
    results.append(
        CheckResult(
            "error-correctability",
            all(flags),
            ", ".join(
                f"{name}:{'ok' if flag else 'LEAK'}"
                for name, flag in zip(bitflip.ERROR_STRINGS, flags)
            ),
        )
    )

    trace = run_fidelity_curve(
        gamma=0.0, kappa=100.0, lam=250.0, psi0=(1.0, 0.0),
        horizon=stationarity_horizon,
    )
    drift = float(np.abs(trace.values - 1.0).max())
    results.append(
        CheckResult("codespace-stationarity", drift < 1e-9, f"max |F-1| = {drift:.3e}")
    )

    detection = check_decomposition(
        bitflip.build_detection_hamiltonian(), expected_detection_signs()
    )
    results.append(detection._replace(name="detection-pauli-decomposition"))
    correction = check_decomposition(
        bitflip.build_correction_hamiltonian(), expected_correction_signs()
    )
    results.append(correction._replace(name="correction-pauli-decomposition"))

    return results
