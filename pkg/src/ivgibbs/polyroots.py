"""Real-root extraction for low-degree polynomials.

Roots come from companion-matrix eigenvalues (np.roots), get polished by
Newton iteration on the polynomial, and are deduplicated at a relative
tolerance.  Near a tangency a double root surfaces either as two close
reals or as a conjugate pair with a tiny imaginary part, so the near-real
filter is deliberately loose and the polish step pulls both copies onto
the same point before deduplication.

A float Sturm-sequence counter is included as an independent cross-check
for well-separated roots; it is not used on near-degenerate inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def _newton_polish(coeffs: np.ndarray, x: float, iters: int = 40) -> float:
    deriv = np.polyder(coeffs)
    for _ in range(iters):
        p = float(np.polyval(coeffs, x))
        dp = float(np.polyval(deriv, x))
        if dp == 0.0:
            break
        step = p / dp
        if not np.isfinite(step):
            break
        x_new = x - step
        if x_new == x:
            break
        x = x_new
    return float(x)


def real_roots(coeffs, imag_rtol: float = 1e-6, dedupe_rtol: float = 1e-7,
               polish: bool = True) -> list[float]:
    """Distinct real roots, ascending.  Multiple roots collapse to one."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    c = np.trim_zeros(c, "f")
    if c.size <= 1:
        return []
    raw = np.roots(c)
    out: list[float] = []
    for r in sorted(raw, key=lambda z: (z.real, abs(z.imag))):
        if abs(r.imag) > imag_rtol * (1.0 + abs(r.real)):
            continue
        x = float(r.real)
        if polish:
            polished = _newton_polish(c, x)
            # near a tangency the polynomial is flat and Newton wanders off
            # to a distant root; keep the eigenvalue estimate in that case
            if abs(polished - x) <= 1e-3 * (1.0 + abs(x)):
                x = polished
        if out and abs(x - out[-1]) <= dedupe_rtol * (1.0 + abs(x)):
            continue
        out.append(x)
    return sorted(out)


def positive_roots(coeffs, dedupe_rtol: float = 1e-7) -> list[float]:
    return [x for x in real_roots(coeffs, dedupe_rtol=dedupe_rtol) if x > 0.0]


def _trim(p: np.ndarray, scale: float) -> np.ndarray:
    mask = np.abs(p) > 1e-13 * scale
    if not mask.any():
        return np.zeros(1)
    return p[np.argmax(mask):]


def sturm_count(coeffs, lo: float, hi: float) -> int:
    """Number of real roots in (lo, hi] via a float Sturm sequence.

    Assumes the polynomial is square-free with roots well separated from
    lo, hi, and from each other; intended as an independent certificate
    for the companion-matrix route, not as a general-purpose counter.
    """
    p = np.trim_zeros(np.atleast_1d(np.asarray(coeffs, dtype=float)), "f")
    if p.size <= 1:
        return 0
    if not (lo < hi):
        raise DomainError("need lo < hi")
    scale = float(np.abs(p).max())
    chain = [p / scale, np.polyder(p / scale)]
    while chain[-1].size > 1:
        rem = np.polydiv(chain[-2], chain[-1])[1]
        rem = _trim(np.atleast_1d(rem), 1.0)
        if rem.size == 1 and rem[0] == 0.0:
            break
        chain.append(-rem)

    def variations(x: float) -> int:
        vals = [float(np.polyval(q, x)) for q in chain]
        signs = [v for v in vals if abs(v) > 1e-12]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    return variations(lo) - variations(hi)


def sturm_positive_count(coeffs) -> int:
    """Positive-root count: Sturm variations between 0+ and a Cauchy bound."""
    p = np.trim_zeros(np.atleast_1d(np.asarray(coeffs, dtype=float)), "f")
    if p.size <= 1:
        return 0
    bound = 1.0 + float(np.abs(p[1:] / p[0]).max()) if p.size > 1 else 1.0
    return sturm_count(p, 0.0, bound)
