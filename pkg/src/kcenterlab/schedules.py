"""Per-level sampling-exponent schedules for the staged deciders.

Each schedule lists exponents delta_0..delta_{L-1}; t_i are the suffix sums
t_i = delta_i + t_{i+1} over a mode-specific base value. The exponents
control sample sizes (~n^{1-delta}) and candidate-window sizes (~n^{delta})
per recursion level. Runtime-exponent claims tied to fast matrix
multiplication are not reproduced; the bitset backend only consumes the
delta values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class DeltaSchedule:
    """deltas[i] pairs with t_values[i] = deltas[i] + t_values[i+1]."""

    deltas: tuple[Fraction | float, ...]
    t_values: tuple[Fraction | float, ...]
    mode: str

    def __post_init__(self):
        if len(self.t_values) != len(self.deltas) + 1:
            raise ValueError("need one more t value than deltas")
        for i, d in enumerate(self.deltas):
            if not 0 < float(d) < 1:
                raise ValueError(f"delta_{i}={d} outside (0,1)")
            gap = self.t_values[i] - self.t_values[i + 1]
            if abs(float(gap) - float(d)) > 1e-12:
                raise ValueError(f"t recurrence violated at level {i}")

    @property
    def t0(self) -> Fraction | float:
        return self.t_values[0]


def _from_tail(
    deltas_rev: Sequence[Fraction | float], t_base: Fraction | float, mode: str
) -> DeltaSchedule:
    """Build a schedule from deltas listed tail-first (delta_{L-1} first)."""
    t_vals = [t_base]
    for d in deltas_rev:
        t_vals.append(t_vals[-1] + d)
    return DeltaSchedule(tuple(reversed(deltas_rev)), tuple(reversed(t_vals)), mode)


def plan_deltas_combinatorial(k: int) -> DeltaSchedule:
    """All levels at 1/2: square-root samples and windows throughout."""
    if k < 1:
        raise ValueError("k must be >= 1")
    half = Fraction(1, 2)
    return _from_tail([half] * k, Fraction(1), "combinatorial")


def plan_deltas_omega2(k: int) -> DeltaSchedule:
    """Schedule for the square-matrix-exponent-2 regime (k >= 3).

    Closed form: t_{k-i} = i/2 + 22/(9(i+1)) for i >= 3.
    """
    if k < 3:
        raise ValueError("omega2 schedule needs k >= 3")
    tail: list[Fraction] = [Fraction(1, 3), Fraction(1, 3), Fraction(4, 9)]
    t_prev = Fraction(1) + Fraction(1, 3) + Fraction(1, 3) + Fraction(4, 9)  # t_{k-3}
    for i in range(4, k + 1):
        d = Fraction(i - t_prev, i + 1)
        tail.append(d)
        t_prev = t_prev + d
    return _from_tail(tail[:k], Fraction(1), "omega2")


def plan_deltas_tradeoff(k: int, l: int) -> DeltaSchedule:
    """Schedule for the depth-l staged decider: l deltas over base t_l = k-l+1."""
    if not 1 <= l <= k:
        raise ValueError("need 1 <= l <= k")
    tail: list[Fraction] = []
    t_prev = Fraction(k - l + 1)
    for i in range(k - l + 1, k + 1):
        d = Fraction(i - t_prev + 1, i + 1)
        tail.append(d)
        t_prev = t_prev + d
    return _from_tail(tail, Fraction(k - l + 1), "tradeoff")


def plan_deltas_omega_general(k: int, omega: float = 2.372) -> DeltaSchedule:
    """Exponent-parameterized schedule; exposed as a knob, not a guarantee."""
    if k < 3:
        raise ValueError("omega_general schedule needs k >= 3")
    if not 2.0 <= omega <= 3.0:
        raise ValueError("omega must be in [2, 3]")
    w = omega
    tail: list[float] = [
        (2 * w - 3) / (3 * w - 3),
        (w * w - 3 * w + 3) / (3 * w - 3),
        2 * w / (3 * w + 3),
    ]
    t_prev = 1.0 + sum(tail)
    for i in range(4, k + 1):
        shift = (w - 2) if i <= 13 else 0.0
        d = (i - t_prev + shift) / (i + 1)
        tail.append(d)
        t_prev += d
    return _from_tail(tail[:k], 1.0, "omega_general")
