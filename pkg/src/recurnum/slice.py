"""Univariate slice sampling with stepping out and shrinkage."""

from __future__ import annotations

import math


class SliceSamplingError(RuntimeError):
    pass


def slice_sample(log_target, x0: float, w: float = 1.0, max_steps: int = 50, rng=None,
                 *, strict: bool = False) -> float:
    """One slice-sampling transition from ``x0``; returns the new point.

    See :func:`slice_step` for the algorithm.
    """
    return slice_step(log_target, x0, w, max_steps, rng, strict=strict)[0]


def slice_step(log_target, x0: float, w: float = 1.0, max_steps: int = 50, rng=None,
               *, logp0: float | None = None, strict: bool = False,
               max_shrinks: int = 1000):
    """One slice-sampling transition from ``x0``.

    The interval is grown by stepping out with at most ``max_steps`` steps
    split at random between the two ends, then shrunk towards ``x0`` until
    a point inside the slice is found. The step budget being exhausted is
    part of the valid transition; pass ``strict=True`` to raise instead
    (useful to catch improper targets).

    Returns ``(x, logp)`` where ``logp = log_target(x)``.
    """
    if logp0 is None:
        logp0 = log_target(x0)
    if not math.isfinite(logp0):
        raise SliceSamplingError(f"log target is not finite at the starting point {x0!r}")

    level = logp0 + math.log(rng.random())
    left = x0 - w * rng.random()
    right = left + w
    j = int(max_steps * rng.random())
    k = max_steps - 1 - j
    while j > 0 and log_target(left) > level:
        left -= w
        j -= 1
    while k > 0 and log_target(right) > level:
        right += w
        k -= 1
    if strict and (j == 0 or k == 0):
        if (j == 0 and log_target(left) > level) or (k == 0 and log_target(right) > level):
            raise SliceSamplingError(
                f"stepping out exhausted {max_steps} steps of width {w} from x0={x0!r} "
                f"(interval [{left!r}, {right!r}], slice level {level!r}); "
                "the target may be improper or w too small")

    for _ in range(max_shrinks):
        x = left + (right - left) * rng.random()
        logp = log_target(x)
        if logp > level:
            return x, logp
        if x < x0:
            left = x
        else:
            right = x
    raise SliceSamplingError(
        f"shrinkage failed after {max_shrinks} proposals around x0={x0!r} "
        f"(interval [{left!r}, {right!r}], slice level {level!r})")
