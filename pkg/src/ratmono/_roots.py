"""Simultaneous complex root refinement (Aberth-Ehrlich iteration)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath

__all__ = ["PrecisionError", "polyroots", "canonical_order"]


class PrecisionError(ArithmeticError):
    pass


def _to_mp(c) -> mpmath.mpf:
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


def _horner2(cs, z):
    p = cs[0]
    dp = mpmath.mpc(0)
    for c in cs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def polyroots(coeffs: Sequence, prec: int, maxiter: int = 2000) -> list[mpmath.mpc]:
    """All complex roots of a squarefree polynomial, leading-first coefficients.

    Starts from points on a perturbed circle and runs Gauss-Seidel Aberth
    steps at ``prec`` bits until corrections fall below ``2**-(prec-8)``
    relative to the root size.
    """
    n = len(coeffs) - 1
    if n < 1:
        return []
    with mpmath.workprec(prec + 16):
        cs = [_to_mp(c) for c in coeffs]
        lead = cs[0]
        cs = [c / lead for c in cs]
        if n == 1:
            return [mpmath.mpc(-cs[1])]
        # radius from geometric mean of |constant term|, capped by Cauchy bound
        cauchy = 1 + max(abs(c) for c in cs[1:])
        rad = abs(cs[-1]) ** (mpmath.mpf(1) / n) if cs[-1] != 0 else mpmath.mpf(1)
        rad = min(max(rad, mpmath.mpf("0.5")), cauchy)
        z = [rad * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
        tol = mpmath.mpf(2) ** (-(prec - 8))
        for _ in range(maxiter):
            biggest = mpmath.mpf(0)
            for k in range(n):
                p, dp = _horner2(cs, z[k])
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpc(mpmath.mpf(2) ** -20)
                s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(n) if j != k)
                w = ratio / (1 - ratio * s)
                z[k] -= w
                rel = abs(w) / max(1, abs(z[k]))
                if rel > biggest:
                    biggest = rel
            if biggest < tol:
                break
        else:
            raise PrecisionError("root iteration did not converge")
        # two Newton polishing sweeps
        for _ in range(2):
            for k in range(n):
                p, dp = _horner2(cs, z[k])
                if dp != 0:
                    z[k] -= p / dp
    return list(z)


def canonical_order(roots: Sequence[mpmath.mpc], tol) -> list[mpmath.mpc]:
    """Sort by real part then imaginary part, snapping numerical noise.

    Imaginary parts below ``tol`` become exactly zero; real parts within
    ``tol`` of each other are merged to their mean so conjugate pairs and
    equal-real-part clusters sort by imaginary part.
    """
    snapped = [mpmath.mpc(r.real, 0 if abs(r.imag) < tol else r.imag) for r in roots]
    snapped.sort(key=lambda r: r.real)
    out: list = []
    i = 0
    while i < len(snapped):
        j = i + 1
        while j < len(snapped) and snapped[j].real - snapped[j - 1].real < tol:
            j += 1
        group = snapped[i:j]
        mean = mpmath.fsum(r.real for r in group) / len(group)
        group = sorted((mpmath.mpc(mean, r.imag) for r in group), key=lambda r: r.imag)
        out.extend(group)
        i = j
    return out
