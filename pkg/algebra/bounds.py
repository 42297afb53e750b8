"""
Universal tail bounds from alpha_{rn} >= (rn)!.
"""
import math

from scipy.special import gammaln

MAX_TERMS = 100000


def exp_tail_bound(x: float, r: int, N: int) -> float:
    """
    Bound sum_{n > N} x^{rn} / (rn)!.

    Terms are summed until the term ratio drops below 1/2, then the rest is
    closed by a geometric majorant.

    Args:
        x: Nonnegative radius
        r: Order of the operator
        N: Truncation order

    Returns:
        Upper bound on the tail (``inf`` if it exceeds double range)
    """
    if x <= 0:
        return 0.0
    log_x = math.log(x)
    total = 0.0
    for n in range(N + 1, N + 1 + MAX_TERMS):
        log_term = r * n * log_x - gammaln(r * n + 1)
        if log_term > 700:
            return math.inf
        q = (x / (r * n + 1)) ** r
        if q < 0.5:
            return total + math.exp(log_term) / (1 - q)
        total += math.exp(log_term)
    return math.inf


def envelope_tail(C: float, a: float, x: float, r: int, N: int) -> float:
    """Tail bound for a series with |u_n| <= C a^{rn}, evaluated at |z| = x."""
    if C == 0:
        return 0.0
    return C * exp_tail_bound(a * x, r, N)


def terms_for_tolerance(x: float, r: int, tol: float, start: int = 0) -> int:
    """Smallest N >= start with exp_tail_bound(x, r, N) <= tol."""
    N = start
    while exp_tail_bound(x, r, N) > tol:
        N += 1
        if N > MAX_TERMS:
            raise OverflowError(f"no truncation below {MAX_TERMS} reaches tolerance {tol}")
    return N
