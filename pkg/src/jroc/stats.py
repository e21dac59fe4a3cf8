"""Rank-based comparison of methods across result rows.

A result matrix has one row per (dataset, alpha) cell and one column per
method, holding test joint costs (lower is better). Methods are ranked
within each row with mid-ranks on ties; the Friedman chi-square over the
average ranks tests the hypothesis that all methods behave alike, and the
Nemenyi critical difference decides which pairs differ.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _scipy_stats

from .errors import ValidationError

# Studentized-range-based q constants for the Nemenyi test at the two usual
# significance levels, indexed by the number of methods k = 2..10.
NEMENYI_Q = {
    0.05: {2: 1.960, 3: 2.343, 4: 2.569, 5: 2.728, 6: 2.850, 7: 2.949,
           8: 3.031, 9: 3.102, 10: 3.164},
    0.10: {2: 1.645, 3: 2.052, 4: 2.291, 5: 2.459, 6: 2.589, 7: 2.693,
           8: 2.780, 9: 2.855, 10: 2.920},
}


@dataclass(frozen=True)
class ResultMatrix:
    """N rows (cases) by k columns (methods) of comparable scores."""

    methods: tuple[str, ...]
    rows: np.ndarray
    row_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=np.float64)
        if rows.ndim != 2:
            raise ValidationError(f"result matrix must be 2-d, got shape {rows.shape}")
        if rows.shape[1] != len(self.methods):
            raise ValidationError(
                f"{len(self.methods)} methods but {rows.shape[1]} columns"
            )
        if rows.shape[0] < 2 or rows.shape[1] < 2:
            raise ValidationError("result matrix needs at least 2 rows and 2 columns")
        if not np.isfinite(rows).all():
            raise ValidationError("result matrix must be finite")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        labels = tuple(self.row_labels) or tuple(
            f"row{i}" for i in range(rows.shape[0])
        )
        if len(labels) != rows.shape[0]:
            raise ValidationError(
                f"{len(labels)} row labels for {rows.shape[0]} rows"
            )
        object.__setattr__(self, "row_labels", labels)

    @property
    def n(self) -> int:
        return int(self.rows.shape[0])

    @property
    def k(self) -> int:
        return int(self.rows.shape[1])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", *self.methods])
        for label, row in zip(self.row_labels, self.rows):
            w.writerow([label, *[repr(float(v)) for v in row]])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ResultMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or len(rows[0]) < 3 or rows[0][0] != "case":
            raise ValidationError(
                "result matrix CSV needs a 'case' column plus method columns"
            )
        methods = tuple(rows[0][1:])
        labels = []
        data = []
        for i, row in enumerate(rows[1:], start=2):
            if len(row) != len(methods) + 1:
                raise ValidationError(f"result matrix row {i} has {len(row)} cells")
            labels.append(row[0])
            try:
                data.append([float(v) for v in row[1:]])
            except ValueError as exc:
                raise ValidationError(f"result matrix row {i}: {exc}") from exc
        return cls(methods, np.array(data), tuple(labels))


def rank_row(values) -> np.ndarray:
    """Ascending ranks with mid-ranks on ties (best value gets rank 1)."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.shape[0])
    i = 0
    while i < values.shape[0]:
        j = i
        while j + 1 < values.shape[0] and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def average_ranks(matrix: ResultMatrix) -> np.ndarray:
    """Column means of the per-row mid-ranks."""
    ranks = np.vstack([rank_row(row) for row in matrix.rows])
    return ranks.mean(axis=0)


@dataclass(frozen=True)
class FriedmanResult:
    chi2: float
    chi2_critical: float
    reject_chi2: bool
    iman_davenport: float
    f_critical: float
    reject_f: bool
    n: int
    k: int
    significance: float


def friedman_statistic(
    ranks, n: int, k: int, significance: float = 0.05
) -> FriedmanResult:
    """Friedman chi-square over average ranks, plus the less conservative
    Iman-Davenport F transform; both compared to their critical values."""
    ranks = np.asarray(ranks, dtype=np.float64)
    if ranks.shape != (k,):
        raise ValidationError(f"expected {k} average ranks, got shape {ranks.shape}")
    if n < 2 or k < 2:
        raise ValidationError(f"need n >= 2 and k >= 2, got n={n}, k={k}")
    if not 0.0 < significance < 1.0:
        raise ValidationError(f"significance must be in (0, 1), got {significance}")
    chi2 = (12.0 * n / (k * (k + 1))) * (
        float((ranks**2).sum()) - k * (k + 1) ** 2 / 4.0
    )
    chi2_critical = float(_scipy_stats.chi2.ppf(1.0 - significance, df=k - 1))
    denom = n * (k - 1) - chi2
    iman = (n - 1) * chi2 / denom if denom > 0 else math.inf
    f_critical = float(
        _scipy_stats.f.ppf(1.0 - significance, dfn=k - 1, dfd=(k - 1) * (n - 1))
    )
    return FriedmanResult(
        chi2=float(chi2),
        chi2_critical=chi2_critical,
        reject_chi2=bool(chi2 > chi2_critical),
        iman_davenport=float(iman),
        f_critical=f_critical,
        reject_f=bool(iman > f_critical),
        n=n,
        k=k,
        significance=significance,
    )


def nemenyi_critical_difference(k: int, n: int, significance: float = 0.05) -> float:
    """CD = q_sig(k) * sqrt(k(k+1) / (6N)); average-rank gaps above it are
    significant. Only the tabulated k = 2..10 and sig in {0.05, 0.10}."""
    if significance not in NEMENYI_Q:
        raise ValidationError(
            f"significance must be one of {sorted(NEMENYI_Q)}, got {significance}"
        )
    table = NEMENYI_Q[significance]
    if k not in table:
        raise ValidationError(f"k must be in 2..10, got {k}")
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return table[k] * math.sqrt(k * (k + 1) / (6.0 * n))


def comparison_report(matrix: ResultMatrix, significance: float = 0.05) -> dict:
    """Ranks, Friedman decision, CD and the per-pair significance flags."""
    ar = average_ranks(matrix)
    fr = friedman_statistic(ar, matrix.n, matrix.k, significance)
    cd = nemenyi_critical_difference(matrix.k, matrix.n, significance)
    pairs = []
    for i in range(matrix.k):
        for j in range(i + 1, matrix.k):
            gap = abs(float(ar[i] - ar[j]))
            pairs.append(
                {
                    "methods": [matrix.methods[i], matrix.methods[j]],
                    "rank_gap": gap,
                    "significant": bool(gap > cd),
                }
            )
    return {
        "methods": list(matrix.methods),
        "n": matrix.n,
        "k": matrix.k,
        "significance": significance,
        "average_ranks": [float(v) for v in ar],
        "friedman_chi2": fr.chi2,
        "chi2_critical": fr.chi2_critical,
        "reject_chi2": fr.reject_chi2,
        "iman_davenport": fr.iman_davenport,
        "f_critical": fr.f_critical,
        "reject_f": fr.reject_f,
        "nemenyi_cd": cd,
        "pairs": pairs,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2)
