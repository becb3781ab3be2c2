"""Machine verification: apply the defining operators to a truncated series.

Derivatives act directly on the (z, log-degree) coefficient grid; the
monomial x^(w0 + z*relation) is never expanded.  A report's safe window
contains a shift z only when every source term the operator maps into z was
present in the input window, so "passed" is meaningful despite truncation.
Residual coefficients are exact rationals and "passed" means literal zero.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import fracs
from .lattice import LatticeConfig
from .series import LogSeries


@dataclass(frozen=True)
class OperatorReport:
    operator: str
    input_window: tuple[int, int]
    safe_window: tuple[int, int] | None  # None: nothing checkable
    passed: bool
    first_failure: tuple[int, int, Fraction] | None
    residual: dict[tuple[int, int], Fraction]

    def to_json_dict(self) -> dict:
        failure = None
        if self.first_failure is not None:
            z, r, value = self.first_failure
            failure = {"z": z, "r": r, "residual": str(value)}
        return {
            "operator": self.operator,
            "safe_window": list(self.safe_window) if self.safe_window else None,
            "passed": self.passed,
            "first_failure": failure,
        }


def _report(operator, window, safe, residual) -> OperatorReport:
    residual = {key: value for key, value in residual.items() if value}
    first = min(residual) if residual else None
    return OperatorReport(
        operator=operator,
        input_window=window,
        safe_window=safe,
        passed=not residual,
        first_failure=(first[0], first[1], residual[first]) if first else None,
        residual=residual,
    )


def _derivative_step(terms, base, mu, relation):
    """One application of d/dx_mu on the coefficient grid.

    d/dx_mu (x^w log^r x0) = w_mu x^(w-e_mu) log^r x0
                             + r * relation[mu] * x^(w-e_mu) log^(r-1) x0.
    """
    step = relation[mu]
    out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (z, r), c in terms.items():
        w = base[mu] + z * step
        if w:
            out[(z, r)] += w * c
        if r:
            out[(z, r - 1)] += r * step * c
    new_base = tuple(
        x - 1 if idx == mu else x for idx, x in enumerate(base)
    )
    return {k: v for k, v in out.items() if v}, new_base


def apply_box(config: LatticeConfig, series: LogSeries) -> OperatorReport:
    """Apply the box operator of the relation and report the residual.

    The positive-side derivative product lands one step lower on the common
    grid than the negative-side product, so the two images are compared at
    matching grid points; the topmost input shift has no checkable partner
    and is excluded from the safe window.
    """
    rel = config.relation
    pos_terms, pos_base = dict(series.terms), series.base_exponent
    for mu in config.positive:
        for _ in range(rel[mu]):
            pos_terms, pos_base = _derivative_step(pos_terms, pos_base, mu, rel)
    neg_terms, neg_base = dict(series.terms), series.base_exponent
    for mu in config.negative:
        for _ in range(-rel[mu]):
            neg_terms, neg_base = _derivative_step(neg_terms, neg_base, mu, rel)
    assert all(
        nb - pb == e for nb, pb, e in zip(neg_base, pos_base, rel)
    ), "derivative products must land one relation step apart"
    lo, hi = series.window
    if hi - 1 < lo:
        return _report("box", series.window, None, {})
    safe = (lo, hi - 1)
    residual: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (z, r), c in pos_terms.items():
        if lo <= z - 1 <= hi - 1:
            residual[(z - 1, r)] += c
    for (z, r), c in neg_terms.items():
        if lo <= z <= hi - 1:
            residual[(z, r)] -= c
    return _report("box", series.window, safe, residual)


def apply_euler_row(
    config: LatticeConfig, param, series: LogSeries, row: int
) -> OperatorReport:
    """Apply one homogeneity operator row; the residual must vanish termwise.

    x_j d/dx_j scales a grid term by w_j and drops a log degree with weight
    relation[j]; summed against the row of the point matrix, the log-drop
    weight is the row applied to the relation, which is zero.  No shift in z
    occurs, so the whole input window is safe.
    """
    param = fracs(param)
    a_row = [config.columns[j][row] for j in range(config.n)]
    base_dot = sum(
        (Fraction(a) * w for a, w in zip(a_row, series.base_exponent)), Fraction(0)
    )
    rel_dot = sum(a * e for a, e in zip(a_row, config.relation))
    residual: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (z, r), c in series.terms.items():
        value = base_dot + z * rel_dot - param[row]
        if value:
            residual[(z, r)] += value * c
        if r and rel_dot:
            residual[(z, r - 1)] += r * rel_dot * c
    return _report(f"euler[{row}]", series.window, series.window, residual)


def apply_euler(config: LatticeConfig, param, series: LogSeries):
    """Reports for all homogeneity operator rows."""
    return tuple(
        apply_euler_row(config, param, series, row) for row in range(config.dim)
    )


@dataclass(frozen=True)
class Certificate:
    box: OperatorReport
    euler: tuple[OperatorReport, ...]
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "box": self.box.to_json_dict(),
            "euler": [r.to_json_dict() for r in self.euler],
        }


def certify(config: LatticeConfig, param, series: LogSeries) -> Certificate:
    """Run all defining operators; passed means every residual is zero."""
    box = apply_box(config, series)
    euler = apply_euler(config, param, series)
    return Certificate(
        box=box, euler=euler, passed=box.passed and all(r.passed for r in euler)
    )
