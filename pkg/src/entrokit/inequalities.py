"""Linear information inequalities and their exact evaluation.

An inequality is a map from nonempty subset masks to integer coefficients,
read as sum_I nu_I S_I >= 0.  On stabilizer entropy vectors the sign is
decided by an exact big-integer comparison, so verification verdicts never
depend on floating-point tolerances, even for composite d where log_d of a
subgroup order is irrational.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .phasespace import subset_size
from .stabilizer import CLASSICAL, QUANTUM, EntropyVector


@dataclass(frozen=True)
class Inequality:
    n: int
    nu: dict[int, int] = field(compare=False)
    name: str = ""

    def __post_init__(self) -> None:
        if not any(self.nu.values()):
            raise ValueError("inequality must have a nonzero coefficient")
        for mask in self.nu:
            if not 1 <= mask < (1 << self.n):
                raise ValueError(f"subset mask {mask} out of range for n={self.n}")

    def coefficients(self) -> dict[int, int]:
        return {m: c for m, c in sorted(self.nu.items()) if c}

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "name": self.name, "nu": {str(m): c for m, c in self.coefficients().items()}}
        )

    @classmethod
    def from_json(cls, text: str) -> "Inequality":
        obj = json.loads(text)
        return cls(obj["n"], {int(m): c for m, c in obj["nu"].items()}, obj.get("name", ""))


def is_balanced(q: Inequality) -> bool:
    """True iff sum of nu_I over subsets containing particle i is 0 for all i."""
    for i in range(q.n):
        bit = 1 << i
        if sum(c for m, c in q.nu.items() if m & bit):
            return False
    return True


def evaluate_exact(q: Inequality, h: EntropyVector):
    """Exact sign of sum nu_I S_I on a stabilizer entropy vector.

    Returns (nonnegative: bool, lhs: int, rhs: int) where the inequality holds
    iff lhs >= rhs; lhs/rhs are products of d-powers and subgroup orders.
    """
    if q.n != h.n:
        raise ValueError("inequality arity does not match entropy vector")
    # S_I = |I| - log_d(order) (quantum) or log_d(order) (classical); the sum
    # is log_d of (d^shift * prod order^e_I), compared against 1.
    shift = 0
    lhs, rhs = 1, 1
    for mask, c in q.nu.items():
        if not c:
            continue
        entry = h.entries[mask]
        if h.kind == QUANTUM:
            shift += c * subset_size(mask)
            e = -c
        elif h.kind == CLASSICAL:
            e = c
        else:
            raise ValueError(f"exact evaluation undefined for kind {h.kind!r}")
        if e > 0:
            lhs *= entry.subgroup_order**e
        elif e < 0:
            rhs *= entry.subgroup_order ** (-e)
    if shift > 0:
        lhs *= h.d**shift
    elif shift < 0:
        rhs *= h.d ** (-shift)
    return lhs >= rhs, lhs, rhs


def evaluate_float(q: Inequality, values) -> float:
    """sum nu_I * values(mask) for any real-valued entropy vector."""
    return sum(c * values(mask) for mask, c in q.nu.items())


# --- coefficient builders -------------------------------------------------


def _add(nu: dict[int, int], mask: int, c: int) -> None:
    if mask:
        nu[mask] = nu.get(mask, 0) + c


def mutual_information(nu: dict[int, int], I: int, J: int, c: int = 1) -> None:
    """Accumulate c * I(I:J) = c * (S_I + S_J - S_{I∪J})."""
    _add(nu, I, c)
    _add(nu, J, c)
    _add(nu, I | J, -c)


def conditional_mutual_information(nu: dict[int, int], I: int, J: int, K: int, c: int = 1) -> None:
    """Accumulate c * I(I:J|K) = c * (S_{IK} + S_{JK} - S_K - S_{IJK})."""
    if not K:
        mutual_information(nu, I, J, c)
        return
    _add(nu, I | K, c)
    _add(nu, J | K, c)
    _add(nu, K, -c)
    _add(nu, I | J | K, -c)


def monotonicity(n: int, I: int, J: int) -> Inequality:
    """S_{I∪J} - S_I >= 0 (valid classically, violated by quantum states)."""
    nu: dict[int, int] = {}
    _add(nu, I | J, 1)
    _add(nu, I, -1)
    return Inequality(n, nu, f"monotonicity({I}|{J})")


def strong_subadditivity(n: int, I: int, J: int) -> Inequality:
    """S_I + S_J - S_{I∩J} - S_{I∪J} >= 0."""
    nu: dict[int, int] = {}
    _add(nu, I, 1)
    _add(nu, J, 1)
    _add(nu, I & J, -1)
    _add(nu, I | J, -1)
    return Inequality(n, nu, f"ssa({I},{J})")


def weak_monotonicity(n: int, I: int, J: int, K: int) -> Inequality:
    """S_{I∪K} + S_{J∪K} - S_I - S_J >= 0 (quantum-valid, not balanced)."""
    nu: dict[int, int] = {}
    _add(nu, I | K, 1)
    _add(nu, J | K, 1)
    _add(nu, I, -1)
    _add(nu, J, -1)
    return Inequality(n, nu, f"weak_monotonicity({I},{J}|{K})")


def ingleton(n: int, I: int, J: int, K: int, L: int) -> Inequality:
    """I(I:J|K) + I(I:J|L) + I(K:L) - I(I:J) >= 0."""
    nu: dict[int, int] = {}
    conditional_mutual_information(nu, I, J, K)
    conditional_mutual_information(nu, I, J, L)
    mutual_information(nu, K, L)
    mutual_information(nu, I, J, -1)
    return Inequality(n, nu, f"ingleton({I},{J};{K},{L})")


def zhang_yeung(n: int = 4, A: int = 1, B: int = 2, C: int = 4, D: int = 8) -> Inequality:
    """The non-Shannon-type inequality of Zhang and Yeung (1998):

    I(A:B) + I(A:CD) + 3 I(C:D|A) + I(C:D|B) - 2 I(C:D) >= 0.
    """
    nu: dict[int, int] = {}
    mutual_information(nu, A, B)
    mutual_information(nu, A, C | D)
    conditional_mutual_information(nu, C, D, A, 3)
    conditional_mutual_information(nu, C, D, B)
    mutual_information(nu, C, D, -2)
    return Inequality(n, nu, f"zhang_yeung({A},{B},{C},{D})")


FAMILIES = ("monotonicity", "ssa", "weak_monotonicity", "ingleton", "zhang_yeung")


def builtin(family: str, n: int, subsets: Sequence[int] = ()) -> Inequality:
    """One inequality of a named family for explicit subset masks."""
    if family == "monotonicity":
        return monotonicity(n, *subsets)
    if family == "ssa":
        return strong_subadditivity(n, *subsets)
    if family == "weak_monotonicity":
        return weak_monotonicity(n, *subsets)
    if family == "ingleton":
        return ingleton(n, *subsets)
    if family == "zhang_yeung":
        return zhang_yeung(n, *subsets) if subsets else zhang_yeung(n)
    raise ValueError(f"unknown family {family!r}")


def instances(family: str, n: int) -> list[Inequality]:
    """All instances of a family, up to the obvious symmetries."""
    full = 1 << n
    out = []
    if family == "monotonicity":
        for I in range(1, full):
            for J in range(1, full):
                if I != I | J:
                    out.append(monotonicity(n, I, J))
    elif family == "ssa":
        # unordered pairs, skip nested ones (their value is identically 0)
        for I in range(1, full):
            for J in range(I + 1, full):
                if I & ~J and J & ~I:
                    out.append(strong_subadditivity(n, I, J))
    elif family == "weak_monotonicity":
        # I, J, K pairwise disjoint, I and J nonempty, unordered in (I, J)
        for I in range(1, full):
            for J in range(I + 1, full):
                if I & J:
                    continue
                rest = (full - 1) & ~(I | J)
                K = rest
                while True:
                    if K:
                        out.append(weak_monotonicity(n, I, J, K))
                    if K == 0:
                        break
                    K = (K - 1) & rest
    elif family == "ingleton":
        # singleton tuples; symmetric under I<->J and K<->L
        seen = set()
        for I, J, K, L in permutations(range(n), 4):
            key = (frozenset((I, J)), frozenset((K, L)))
            if key in seen:
                continue
            seen.add(key)
            out.append(ingleton(n, 1 << I, 1 << J, 1 << K, 1 << L))
    elif family == "zhang_yeung":
        if n != 4:
            raise ValueError("zhang_yeung instances are defined for n = 4")
        out.append(zhang_yeung())
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


# --- batch verification ---------------------------------------------------


@dataclass
class Violation:
    state_id: int
    inequality: str
    lhs: int
    rhs: int


@dataclass
class VerificationReport:
    name: str
    states_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    min_slack: float = float("inf")

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "states_checked": self.states_checked,
                "passed": self.passed,
                "min_slack": self.min_slack if math.isfinite(self.min_slack) else None,
                "violations": [
                    {
                        "state": v.state_id,
                        "inequality": v.inequality,
                        "lhs": str(v.lhs),
                        "rhs": str(v.rhs),
                    }
                    for v in self.violations
                ],
            }
        )


def verify_batch(
    inequalities: Iterable[Inequality],
    vectors: Iterable[EntropyVector],
    name: str = "batch",
) -> VerificationReport:
    """Evaluate every inequality exactly on every entropy vector."""
    ineqs = list(inequalities)
    report = VerificationReport(name)
    for idx, vec in enumerate(vectors):
        report.states_checked += 1
        for q in ineqs:
            ok, lhs, rhs = evaluate_exact(q, vec)
            slack = evaluate_float(q, vec.value)
            if slack < report.min_slack:
                report.min_slack = slack
            if not ok:
                report.violations.append(Violation(idx, q.name, lhs, rhs))
    return report
