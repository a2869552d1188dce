import hashlib
from collections.abc import Iterable
from typing import Any

import numpy as np
from pydantic import JsonValue

from luequiv.config import settings
from luequiv.errors import FingerprintMismatchError
from luequiv.invariants.models import Certificate, Fingerprint2, Fingerprint3

FIELD_ORDER2 = ("dims", "L", "triple_mu", "triple_nu", "tr_alpha", "det_T12", "inv_I")
FIELD_ORDER3 = (
    "dims",
    "truncated",
    "gram_mu",
    "gram_nu",
    "gram_omega",
    "triples",
    "aux_traces",
    "aux_quad",
)
EXACT_FIELDS = {"dims", "truncated"}

FINGERPRINT_LABELS: dict[str, list[str]] = {
    "dims": ["dim⟨S₁⟩", "dim⟨S₂⟩"],
    "L": [
        "⟨μ₁,μ₁⟩",
        "⟨μ₂,μ₂⟩",
        "⟨μ₃,μ₃⟩",
        "⟨ν₁,ν₁⟩",
        "⟨ν₂,ν₂⟩",
        "⟨ν₃,ν₃⟩",
        "⟨μ₁,μ₂⟩",
        "⟨μ₁,μ₄⟩",
        "⟨μ₁,μ₆⟩",
    ],
    "triple_mu": ["(μ_r₀,μ_s₀,μ_t₀)"],
    "triple_nu": ["(ν_r₀,ν_s₀,ν_t₀)"],
    "tr_alpha": ["tr(T₁₂T₁₂ᵗ)", "tr(T₁₂T₁₂ᵗ)²"],
    "det_T12": ["det T₁₂"],
    "inv_I": ["I"],
}


def fingerprint_labels() -> dict[str, list[str]]:
    """Symbol for every slot of a Fingerprint2, keyed by field name."""
    return {field: list(labels) for field, labels in FINGERPRINT_LABELS.items()}


def _field_order(fp: Fingerprint2 | Fingerprint3) -> tuple[str, ...]:
    return FIELD_ORDER2 if isinstance(fp, Fingerprint2) else FIELD_ORDER3


def _jsonable(value: Any) -> JsonValue:
    if isinstance(value, np.ndarray):
        return value.tolist()  # type: ignore[no-any-return]
    if isinstance(value, tuple | list):
        return [_jsonable(item) for item in value]
    return value  # type: ignore[no-any-return]


def _close(x: Any, y: Any, tol: float) -> bool:
    if x is None or y is None:
        return x is None and y is None
    if isinstance(x, list | tuple) and any(item is None for item in (*x, *y)):
        return len(x) == len(y) and all(_close(a, b, tol) for a, b in zip(x, y, strict=True))
    left = np.asarray(x, dtype=np.float64)
    right = np.asarray(y, dtype=np.float64)
    if left.shape != right.shape:
        return False
    return bool(np.all(np.abs(left - right) <= tol))


def fingerprints_equal(
    a: Fingerprint2 | Fingerprint3,
    b: Fingerprint2 | Fingerprint3,
    tol: float = settings.COMPARISON_TOL,
    fields: Iterable[str] | None = None,
) -> tuple[bool, Certificate | None]:
    """
    Compare two fingerprints field by field in a fixed order.

    Reals are compared at absolute tolerance `tol`, dims exactly. The certificate names
    the first differing field. `fields` restricts the comparison to a subset, still
    visited in the fixed order.
    """
    if type(a) is not type(b):
        raise FingerprintMismatchError(f"Cannot compare {a.kind} with {b.kind} fingerprints")
    if isinstance(a, Fingerprint3) and isinstance(b, Fingerprint3) and a.depth != b.depth:
        raise FingerprintMismatchError(
            f"Fingerprints were built at different depths ({a.depth} and {b.depth})"
        )

    order = _field_order(a)
    selected = set(order) if fields is None else set(fields)
    unknown = selected - set(order)
    if unknown:
        raise ValueError(f"Unknown fingerprint fields: {sorted(unknown)}")

    for field in order:
        if field not in selected:
            continue
        mine, theirs = getattr(a, field), getattr(b, field)
        same = mine == theirs if field in EXACT_FIELDS else _close(mine, theirs, tol)
        if not same:
            return False, Certificate(field=field, left=_jsonable(mine), right=_jsonable(theirs))
    return True, None


def _format_real(value: float, tol: float) -> str:
    rounded = round(value / tol) * tol if tol > 0 else value
    if rounded == 0:
        rounded = 0.0
    return f"{rounded:.12g}"


def _format_value(value: Any, tol: float) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_real(value, tol)
    if isinstance(value, np.ndarray):
        shape = "x".join(str(n) for n in value.shape)
        entries = ",".join(_format_real(float(v), tol) for v in value.ravel())
        return f"[{shape}]{entries}"
    return "(" + ",".join(_format_value(item, tol) for item in value) + ")"


def canonical_text(fp: Fingerprint2 | Fingerprint3, tol: float = settings.COMPARISON_TOL) -> str:
    """One `field=value` line per field in the fixed comparison order."""
    lines = [f"kind={fp.kind}"]
    if isinstance(fp, Fingerprint3):
        lines.append(f"depth={fp.depth}")
    lines.extend(f"{field}={_format_value(getattr(fp, field), tol)}" for field in _field_order(fp))
    return "\n".join(lines) + "\n"


def fingerprint_digest(fp: Fingerprint2 | Fingerprint3, tol: float = settings.COMPARISON_TOL) -> str:
    return hashlib.sha256(canonical_text(fp, tol).encode("utf-8")).hexdigest()
