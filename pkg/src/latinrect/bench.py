"""Empirical operation counts for the reduced-count formula.

`measure` evaluates one (k, n) with the tallies switched on and reports:

* ``terms``             -- profiles summed over, exactly C(n+2^(k-1)-1, 2^(k-1)-1);
* ``adds``              -- every exact-integer addition the evaluation performs;
* ``mults_actual``      -- multiplications assembling each term's power
                           product, as performed (square-and-multiply);
* ``mults_paper_model`` -- the same assembly costed naively, each power
                           g^s charged s - 1 multiplications, which makes
                           every term cost exactly n - 1 of them;
* ``mults_inner``       -- the per-term constant-cost multiplications
                           (choice-polynomial products, multinomial
                           quotients, coefficient scaling).

The two headline mult columns deliberately cover only the power-product
assembly: that is the term cost that grows with n, so its total is the
series whose log-log slope is the claimed exponent.  The inner
multiplications are constant per term once k is fixed; folding them into
the fitted series would depress the finite-range slope without changing
the asymptotics, so they are reported separately.  The same caveat
applies to ``adds``: per term they are constant only for fixed k.
Big-integer operations count 1 each regardless of operand size.

`sweep` runs a range of n single-threaded and fits ordinary least
squares to log(series total) against log(n) for each series.
"""

import json
import math
from dataclasses import dataclass

from . import formulas, guards
from .tallies import OpTally

CSV_HEADER = "k,n,terms,adds,mults_actual,mults_paper_model,elapsed_ms"
FIT_SERIES = ("terms", "adds", "mults_actual", "mults_paper_model")


@dataclass(frozen=True)
class CostReport:
    k: int
    n: int
    terms: int
    adds: int
    mults_actual: int
    mults_paper_model: int
    mults_inner: int
    elapsed: float

    def series(self, name: str) -> int:
        return getattr(self, name)


@dataclass(frozen=True)
class Sweep:
    reports: tuple[CostReport, ...]
    # per-series fitted exponent; None when a series has < 2 usable points
    exponents: dict


def measure(k: int, n: int, *, max_terms: int | None = None) -> CostReport:
    """Instrumented single-threaded evaluation of the reduced count."""
    tally = OpTally()
    _, terms, elapsed = formulas.evaluate_reduced(
        k, n, threads=1, max_terms=max_terms, tally=tally
    )
    expected = guards.composition_count(n, 1 << (k - 1))
    if terms != expected:
        raise AssertionError(
            f"term count {terms} disagrees with prediction {expected} at k={k}, n={n}"
        )
    return CostReport(
        k=k,
        n=n,
        terms=terms,
        adds=tally.adds,
        mults_actual=tally.mults_assembly,
        mults_paper_model=tally.mults_assembly_naive,
        mults_inner=tally.mults_inner,
        elapsed=elapsed,
    )


def fitted_exponents(reports) -> dict:
    """OLS slope of log(series) vs log(n), per series; None if degenerate."""
    out = {}
    for name in FIT_SERIES:
        points = [
            (r.n, r.series(name)) for r in reports if r.n > 0 and r.series(name) > 0
        ]
        if len({p[0] for p in points}) < 2:
            out[name] = None
            continue
        lx = [math.log(p[0]) for p in points]
        ly = [math.log(p[1]) for p in points]
        mx = sum(lx) / len(lx)
        my = sum(ly) / len(ly)
        sxx = sum((a - mx) ** 2 for a in lx)
        sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
        out[name] = sxy / sxx
    return out


def sweep(k: int, n_values, *, max_terms: int | None = None) -> Sweep:
    """One CostReport per n (single-threaded for stable tallies) plus fits."""
    reports = tuple(measure(k, n, max_terms=max_terms) for n in n_values)
    return Sweep(reports=reports, exponents=fitted_exponents(reports))


def write_csv(stream, sw: Sweep) -> None:
    """CSV rows per the fixed header, fit results as '#' footer metadata."""
    stream.write(CSV_HEADER + "\n")
    for r in sw.reports:
        stream.write(
            f"{r.k},{r.n},{r.terms},{r.adds},{r.mults_actual},"
            f"{r.mults_paper_model},{r.elapsed * 1000.0:.3f}\n"
        )
    for name in FIT_SERIES:
        value = sw.exponents.get(name)
        rendered = "absent" if value is None else f"{value:.4f}"
        stream.write(f"# fitted_exponent_{name}={rendered}\n")
    stream.write(
        "# note=mult columns cover power-product assembly only; "
        "constant-per-term inner multiplications are reported as mults_inner "
        "in JSON output\n"
    )


def write_json_lines(stream, sw: Sweep) -> None:
    """One JSON object per report, then a summary object with the fits."""
    for r in sw.reports:
        stream.write(
            json.dumps(
                {
                    "k": r.k,
                    "n": r.n,
                    "terms": str(r.terms),
                    "adds": str(r.adds),
                    "mults_actual": str(r.mults_actual),
                    "mults_paper_model": str(r.mults_paper_model),
                    "mults_inner": str(r.mults_inner),
                    "elapsed_ms": r.elapsed * 1000.0,
                },
                separators=(",", ":"),
            )
            + "\n"
        )
    exps = {
        name: (None if sw.exponents.get(name) is None else round(sw.exponents[name], 4))
        for name in FIT_SERIES
    }
    stream.write(json.dumps({"fitted_exponents": exps}, separators=(",", ":")) + "\n")
