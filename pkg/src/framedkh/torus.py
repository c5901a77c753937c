"""Closed-form framed Khovanov homology of T(2, n) and of framed unknots.

These tables are written down directly from the known answer and never
touch the chain-complex machinery, so they serve as an independent check
on it.
"""

from __future__ import annotations

from .homology import AbelianGroup, HomologyTable

__all__ = ["torus_kh", "framed_unknot_kh", "predicted_connecting_degree"]

_Z = AbelianGroup(1)
_Z2 = AbelianGroup(0, (2,))


def torus_kh(n: int) -> HomologyTable:
    """H_(a,b)(T(2, n)) for n >= 1.

    Z at (n, n) and (-n, -3n); Z at (n-2s, n-4s+4) for even s in [0, n];
    Z at (n-2s, n-4s) and Z_2 at (n-2s, n-4s+4) for odd s in [3, n].
    The clauses overlap only at (-n, -3n) for odd n, where they agree.
    For n = 1 the (-n, -3n) clause does not apply: T(2, 1) is the unknot
    with framing 1.
    """
    if n < 1:
        raise ValueError(f"torus_kh needs n >= 1, got {n}")
    if n == 1:
        return framed_unknot_kh(1)
    groups = {(n, n): _Z, (-n, -3 * n): _Z}
    for s in range(0, n + 1, 2):
        groups[n - 2 * s, n - 4 * s + 4] = _Z
    for s in range(3, n + 1, 2):
        groups[n - 2 * s, n - 4 * s] = _Z
        groups[n - 2 * s, n - 4 * s + 4] = _Z2
    return HomologyTable(groups)


def framed_unknot_kh(k: int) -> HomologyTable:
    """Z at (k, 3k + 2) and (k, 3k - 2): the unknot with framing k."""
    return HomologyTable({(k, 3 * k + 2): _Z, (k, 3 * k - 2): _Z})


def predicted_connecting_degree(n: int) -> int:
    """|degree| of the connecting map H(T(2, n-1)) -> H(unknot^(1-n)) at the
    grading where both are Z: 0 for even n, 2 for odd n."""
    if n < 2:
        raise ValueError(f"predicted_connecting_degree needs n >= 2, got {n}")
    return 0 if n % 2 == 0 else 2
