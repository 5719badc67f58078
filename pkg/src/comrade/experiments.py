"""Experiment drivers behind the CLI: one row-builder per subcommand.

Every builder returns (header, rows) with plain Python values, so the
CLI layer only does argument handling and serialization.  Grid sweeps
can fan out over a process pool; rows are sorted by their key columns
afterwards, so parallel and serial runs emit identical files.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dense import (
    EPS_DOUBLE,
    build_x_dd,
    condition_numbers,
    dense_qr_eigenvalues,
    frobenius_norm,
)
from .matrix import comrade_direct
from .pencil import build_x, x_to_dense
from .recurrence import DegenerateRecurrenceError, Parameters, scaled_residual
from .solver import Spectrum, eigenvalues

# an eigenvalue counts as real iff |Im| <= this factor times
# max(1, largest eigenvalue magnitude)
REAL_CLASSIFICATION_TOL = 1e-10

ALGORITHMS = ("fast", "dense", "dense-dd")


class RefusedSlowRun(RuntimeError):
    """Raised instead of silently starting a multi-hour oracle run."""


@dataclass(frozen=True)
class ClassifiedSpectrum:
    spectrum: Spectrum
    all_real: bool
    max_real: float
    min_real: float
    max_abs_imag: float


def classify(spectrum: Spectrum) -> ClassifiedSpectrum:
    ev = spectrum.eigenvalues
    scale = max(1.0, float(np.max(np.abs(ev))))
    max_abs_imag = float(np.max(np.abs(ev.imag)))
    return ClassifiedSpectrum(
        spectrum=spectrum,
        all_real=max_abs_imag <= REAL_CLASSIFICATION_TOL * scale,
        max_real=float(np.max(ev.real)),
        min_real=float(np.min(ev.real)),
        max_abs_imag=max_abs_imag,
    )


def solve_instance(n: int, alpha: float, kappa: float, algorithm: str = "fast",
                   tol: float = None, balance_first: bool = False,
                   max_sweeps_per_eig: int = 30) -> Spectrum:
    """Zeros of the degree-n polynomial as a sorted Spectrum."""
    params = Parameters(n=n, alpha=alpha, kappa=kappa)
    if algorithm == "fast":
        c = comrade_direct(params)
        return eigenvalues(c, tol=tol if tol is not None else 1e-15,
                           max_sweeps_per_eig=max_sweeps_per_eig)
    if algorithm == "dense":
        h = np.ascontiguousarray(x_to_dense(build_x(params)).T)
        return dense_qr_eigenvalues(h, precision="double", balance_first=balance_first,
                                    tol=tol, max_sweeps_per_eig=max_sweeps_per_eig)
    if algorithm == "dense-dd":
        return dense_qr_eigenvalues(build_x_dd(params), precision="dd",
                                    balance_first=balance_first, tol=tol,
                                    max_sweeps_per_eig=max_sweeps_per_eig)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def _pool_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# zeros

def zeros_rows(n: int, alpha: float, kappa: float, algorithm: str = "fast",
               tol: float = None, balance_first: bool = False):
    spec = solve_instance(n, alpha, kappa, algorithm, tol, balance_first)
    return _zeros_rows_from_spectrum(spec.eigenvalues, n, alpha, kappa)


def _zeros_rows_from_spectrum(eigenvalues_sorted, n, alpha, kappa):
    params = Parameters(n=n, alpha=alpha, kappa=kappa)
    rows = []
    for idx, lam in enumerate(eigenvalues_sorted):
        try:
            res = scaled_residual(params, complex(lam), precision="dd")
        except DegenerateRecurrenceError:
            # recurrence breaks down at alpha or kappa == -1; the zeros
            # from the matrix path are still valid, so keep the row
            res = float("nan")
        rows.append({"index": idx, "re": float(lam.real), "im": float(lam.imag),
                     "residual": res})
    return ["index", "re", "im", "residual"], rows


# ---------------------------------------------------------------------------
# timing

def _time_once(n: int, alpha: float, kappa: float, algorithm: str) -> float:
    t0 = time.perf_counter()
    solve_instance(n, alpha, kappa, algorithm)
    return time.perf_counter() - t0


def timing_rows(n_list, alpha: float = 0.5, kappa: float = 0.5, reps: int = 3,
                algorithms=("fast", "dense")):
    """Median wall seconds per size and algorithm; first run discarded."""
    if reps < 3:
        raise ValueError("need at least 3 repetitions")
    n_list = sorted(n_list)
    for algorithm in algorithms:
        _time_once(min(n_list), alpha, kappa, algorithm)  # warm-up, JIT et al.
    rows = []
    for n in n_list:
        row = {"n": n}
        for algorithm in algorithms:
            times = sorted(_time_once(n, alpha, kappa, algorithm) for _ in range(reps))
            row[f"seconds_{algorithm.replace('-', '_')}"] = times[len(times) // 2]
        rows.append(row)
    header = ["n"] + [f"seconds_{a.replace('-', '_')}" for a in algorithms]
    return header, rows


# ---------------------------------------------------------------------------
# accuracy

def _accuracy_row(task):
    n, alpha = task
    kappa = alpha
    params = Parameters(n=n, alpha=alpha, kappa=kappa)
    oracle = solve_instance(n, alpha, kappa, "dense-dd")
    fast = solve_instance(n, alpha, kappa, "fast")
    dense = solve_instance(n, alpha, kappa, "dense")
    err_fast = float(np.max(np.abs(fast.eigenvalues - oracle.eigenvalues)))
    err_dense = float(np.max(np.abs(dense.eigenvalues - oracle.eigenvalues)))
    c = comrade_direct(params)
    x_dense = x_to_dense(build_x(params))
    cond_sym = float(np.max(condition_numbers(c.to_dense(), oracle)))
    cond_unsym = float(np.max(condition_numbers(x_dense, oracle)))
    bound_sym = frobenius_norm(c.to_dense()) * EPS_DOUBLE * cond_sym
    bound_unsym = frobenius_norm(x_dense) * EPS_DOUBLE * cond_unsym
    return {"alpha": alpha, "err_fast": err_fast, "err_dense": err_dense,
            "bound_sym": bound_sym, "bound_unsym": bound_unsym}


def accuracy_rows(n: int, alpha_values, allow_slow: bool = False, threads: int = 1):
    """Max deviation from the dd oracle plus weak-stability bounds.

    alpha runs over the grid with kappa = alpha, the diagonal slice
    where errors grow fastest.
    """
    if n > 400 and not allow_slow:
        raise RefusedSlowRun(
            f"double-double oracle at n={n} runs for a long time; "
            "pass --allow-slow to confirm")
    tasks = [(n, float(a)) for a in alpha_values]
    rows = _pool_map(_accuracy_row, tasks, threads)
    rows.sort(key=lambda r: r["alpha"])
    return ["alpha", "err_fast", "err_dense", "bound_sym", "bound_unsym"], rows


# ---------------------------------------------------------------------------
# separation

KAPPA_SCAN_MAX = 8.0
KAPPA_SCAN_STEP = 0.25
BISECTION_WIDTH = 1e-3


def _all_real_at(n, alpha, kappa, algorithm):
    return classify(solve_instance(n, alpha, kappa, algorithm)).all_real


def _separation_row(task):
    n, alpha, algorithm = task
    lo = 0.0
    hi = None
    k = KAPPA_SCAN_STEP
    while k <= KAPPA_SCAN_MAX + 1e-12:
        if not _all_real_at(n, alpha, k, algorithm):
            hi = k
            break
        lo = k
        k += KAPPA_SCAN_STEP
    if hi is None:
        return {"alpha": alpha, "kappa_boundary": "none"}
    while hi - lo > BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if _all_real_at(n, alpha, mid, algorithm):
            lo = mid
        else:
            hi = mid
    return {"alpha": alpha, "kappa_boundary": 0.5 * (lo + hi)}


def separation_rows(n: int, alpha_values, algorithm: str = "fast", threads: int = 1):
    """First kappa in (0, 8] where the spectrum stops being all-real.

    Bisection refines the scan bracket to width 1e-3; `none` marks
    columns that stay real over the whole bracket (alpha = 0 does).
    """
    tasks = [(n, float(a), algorithm) for a in alpha_values]
    rows = _pool_map(_separation_row, tasks, threads)
    rows.sort(key=lambda r: r["alpha"])
    return ["alpha", "kappa_boundary"], rows


# ---------------------------------------------------------------------------
# growth

def _growth_row(task):
    n, alpha, kappa, algorithm = task
    cs = classify(solve_instance(n, alpha, kappa, algorithm))
    return {"n": n, "alpha": alpha, "kappa": kappa, "max_real": cs.max_real,
            "min_real": cs.min_real, "max_abs_imag": cs.max_abs_imag}


def growth_rows(n_list, alpha_values, kappa_values, algorithm: str = "fast",
                threads: int = 1):
    tasks = [(int(n), float(a), float(k), algorithm)
             for n in n_list for a in alpha_values for k in kappa_values]
    rows = _pool_map(_growth_row, tasks, threads)
    rows.sort(key=lambda r: (r["n"], r["alpha"], r["kappa"]))
    return ["n", "alpha", "kappa", "max_real", "min_real", "max_abs_imag"], rows


# ---------------------------------------------------------------------------
# spectrum scatter

def spectrum_rows(n: int, alpha: float, kappa: float, algorithm: str = "fast",
                  tol: float = None, balance_first: bool = False):
    spec = solve_instance(n, alpha, kappa, algorithm, tol, balance_first)
    rows = [{"re": float(z.real), "im": float(z.imag)} for z in spec.eigenvalues]
    return ["re", "im"], rows
