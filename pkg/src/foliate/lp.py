"""Exact positive-kernel feasibility with Farkas certificates.

Decides whether an integer matrix ``A`` has a kernel vector with all
entries strictly positive.  By homogeneity this is the same as the
polyhedron ``{A x = 0, x >= 1}`` being non-empty.  A phase-1 simplex in
exact rational arithmetic (Bland's rule) settles it: either a positive
integer solution is returned, or a row combination ``y`` with ``y^T A >= 0``
and ``y^T A != 0``, read off the optimal phase-1 duals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import EmptyMatrix


@dataclass(frozen=True)
class FeasibilityOutcome:
    """Exactly one of ``weights`` and ``certificate`` is set."""

    weights: tuple[int, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.weights is not None

    def combination(self, A):
        """The row combination y^T A of the certificate."""
        ncols = len(A[0])
        return tuple(sum(y * row[j] for y, row in zip(self.certificate, A)) for j in range(ncols))

    def verify(self, A) -> bool:
        """Re-check the present branch in exact arithmetic."""
        if (self.weights is None) == (self.certificate is None):
            return False
        if self.feasible:
            return all(x > 0 for x in self.weights) and all(
                sum(a * x for a, x in zip(row, self.weights)) == 0 for row in A
            )
        combo = self.combination(A)
        return len(self.certificate) == len(A) and all(c >= 0 for c in combo) and any(combo)

    def to_dict(self):
        if self.feasible:
            return {"feasible": True, "weights": list(self.weights)}
        return {"feasible": False, "certificate": [str(y) for y in self.certificate]}


def _primitive(values):
    """Scale rationals to coprime integers with the same signs and ratios."""
    den = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    ints = [int(Fraction(v) * den) for v in values]
    g = gcd(*ints) if ints else 0
    return [i // g for i in ints] if g > 1 else ints


def _axpy(target, f, source):
    """target -= f * source, on sparse {index: Fraction} rows."""
    for j, v in source.items():
        nv = target.get(j, 0) - f * v
        if nv:
            target[j] = nv
        else:
            target.pop(j, None)


def _row_reduce(A):
    """Reduced row echelon form of A over Q, sparse.

    Returns ``[(pivot_column, row, combo)]`` sorted by pivot column, where
    ``combo`` gives the row as a combination of the rows of A.  Redundant
    rows of A are dropped.
    """
    echelon = []
    for i, raw in enumerate(A):
        row = {j: Fraction(a) for j, a in enumerate(raw) if a}
        combo = {i: Fraction(1)}
        for c, prow, pcombo in echelon:
            f = row.get(c)
            if f:
                _axpy(row, f, prow)
                _axpy(combo, f, pcombo)
        if not row:
            continue
        c = min(row)
        p = row[c]
        row = {j: v / p for j, v in row.items()}
        combo = {j: v / p for j, v in combo.items()}
        for _, prow, pcombo in echelon:
            f = prow.get(c)
            if f:
                _axpy(prow, f, row)
                _axpy(pcombo, f, combo)
        echelon.append((c, row, combo))
    echelon.sort(key=lambda t: t[0])
    return echelon


def solve_positive_kernel(A, ncols=None) -> FeasibilityOutcome:
    """Find x > 0 with A x = 0, or a Farkas certificate that none exists.

    ``ncols`` is only needed when ``A`` has no rows.
    """
    A = [[int(a) for a in row] for row in A]
    n = len(A[0]) if A else (ncols or 0)
    if n == 0:
        raise EmptyMatrix("matrix has no columns")
    if any(len(row) != n for row in A):
        raise ValueError("rows of unequal length")
    echelon = _row_reduce(A)
    m = len(echelon)
    if m == 0:
        return FeasibilityOutcome(weights=(1,) * n)

    # substitute x = 1 + y: R y = b with b = -R 1.  Rows with b >= 0 start
    # with their echelon pivot basic; the others are negated and get an
    # artificial column n + k.  Phase-1 cost is 1 on artificials.
    rows, rhs, sign, basis = [], [], [], []
    for c, row, _ in echelon:
        b = -sum(row.values())
        if b < 0:
            row = {j: -v for j, v in row.items()}
            art = n + sign.count(-1)
            row[art] = Fraction(1)
            sign.append(-1)
            basis.append(art)
        else:
            row = dict(row)
            sign.append(1)
            basis.append(c)
        rows.append(row)
        rhs.append(abs(b))
    initial = list(basis)
    ncol = n + sign.count(-1)
    red = [Fraction(0)] * n + [Fraction(1)] * (ncol - n)
    for i, row in enumerate(rows):
        if sign[i] < 0:
            for j, a in row.items():
                red[j] -= a
    holders = {}
    for i, row in enumerate(rows):
        for j in row:
            holders.setdefault(j, set()).add(i)

    while True:
        enter = next((j for j in range(ncol) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in holders.get(enter, ()):
            a = rows[i][enter]
            if a > 0:
                key = (rhs[i] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase 1 is bounded below by 0, so a ratio row always exists
        leave = best[1]
        piv = rows[leave][enter]
        prow = {j: v / piv for j, v in rows[leave].items()}
        prhs = rhs[leave] / piv
        rows[leave], rhs[leave] = prow, prhs
        for i in sorted(holders[enter]):
            if i == leave:
                continue
            row = rows[i]
            f = row[enter]
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    if j not in row:
                        holders.setdefault(j, set()).add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    holders[j].discard(i)
            rhs[i] -= f * prhs
        f = red[enter]
        for j, v in prow.items():
            red[j] -= f * v
        basis[leave] = enter

    obj = sum(rhs[i] for i, j in enumerate(basis) if j >= n)
    if obj == 0:
        y = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                y[j] = rhs[i]
        x = _primitive([1 + v for v in y])
        return FeasibilityOutcome(weights=tuple(x))

    # row i started with a unit column k as its basic variable, so its dual
    # is cost(k) - red[k]; negated rows flip back through the sign
    cert = [Fraction(0)] * len(A)
    for i, (k, s) in enumerate(zip(initial, sign)):
        pi = (1 if k >= n else 0) - red[k]
        for r, v in echelon[i][2].items():
            cert[r] -= pi * s * v
    return FeasibilityOutcome(certificate=tuple(Fraction(c) for c in _primitive(cert)))
