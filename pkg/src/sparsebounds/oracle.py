"""Brute-force ground truth: exhaustive support-pattern search and batch checks.

The search enumerates support-pattern pairs (S_f, S_g) in increasing order of
|S_f| * |S_g| (ties by |S_f|, then lexicographic sets) and solves each
pattern's feasibility as a null-space problem; the first feasible pattern is
therefore a minimizer of the sparsity product over the admissible subspace.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .admissible import AdmissibleSpace, null_space_basis, sample_admissible
from .bounds import fkdb_rhs, verify_fkdb, verify_fskpb
from .coherence import coherence_profile
from .config import ETA, GUARD, TOL_CERT, TOL_FP, TOL_RANK
from .errors import GuardExceededError, NoAdmissibleSignalError, ParameterError
from .sparsity import best_set, l0
from .systems import BiSystem, analysis


@dataclass(frozen=True)
class TightnessReport:
    """Outcome of the minimal-sparsity-product search on one BiSystem."""

    best_lhs: int
    witness: np.ndarray
    rhs_at_witness: float
    gap: float
    patterns_searched: int
    guard: int
    eta: float


def _pattern_order(n: int, m: int):
    """All (|S_f|, |S_g|) size pairs by increasing product, then |S_f|."""
    return sorted(
        ((i, j) for i in range(1, n + 1) for j in range(1, m + 1)),
        key=lambda ij: (ij[0] * ij[1], ij[0], ij[1]),
    )


def _feasible(a_rows: np.ndarray, c_rows: np.ndarray, s_f, s_g, w: int,
              tol_rank: float):
    """Null vector of the off-pattern constraint rows, or None."""
    comp_f = np.delete(a_rows, s_f, axis=0)
    comp_g = np.delete(c_rows, s_g, axis=0)
    stacked = np.vstack([comp_f, comp_g])
    if stacked.shape[0] == 0:
        basis = np.eye(w, dtype=a_rows.dtype)
    else:
        basis = null_space_basis(stacked, tol_rank)
    if basis.shape[1] == 0:
        return None
    return basis[:, 0]


def min_sparsity_product(bisystem: BiSystem, space: AdmissibleSpace,
                         eta: float = ETA, guard: int = GUARD,
                         tol_rank: float = TOL_RANK, workers: int = 1) -> TightnessReport:
    """Exhaustive minimizer of l0(theta_f x) * l0(theta_g x) over admissible x.

    Serial and parallel runs produce identical reports: candidates within one
    size class are merged by their deterministic enumeration rank, and
    patterns_searched is always the rank of the winning pattern in the full
    (product, lexicographic) order.
    """
    n, m = bisystem.first.n, bisystem.second.n
    if n + m > guard:
        raise GuardExceededError(
            f"search space n + m = {n + m} exceeds guard {guard}"
        )
    if space.w < 1:
        raise NoAdmissibleSignalError("admissible subspace is trivial (w = 0)")
    a_rows = analysis_matrix(bisystem.first, space)
    c_rows = analysis_matrix(bisystem.second, space)

    searched = 0
    for size_f, size_g in _pattern_order(n, m):
        pairs = itertools.product(
            itertools.combinations(range(n), size_f),
            itertools.combinations(range(m), size_g),
        )
        hit, rank = _scan_size_class(pairs, a_rows, c_rows, space.w, tol_rank, workers)
        if hit is not None:
            s_f_set, s_g_set, c = hit
            return _report(bisystem, space, c, eta, guard, searched + rank + 1)
        searched += comb(n, size_f) * comb(m, size_g)
    raise NoAdmissibleSignalError("no feasible support pattern found")


def analysis_matrix(system, space: AdmissibleSpace) -> np.ndarray:
    """Analysis coefficients of the subspace basis, one row per functional."""
    return system.functionals @ space.basis


def _scan_size_class(pairs, a_rows, c_rows, w, tol_rank, workers):
    """First feasible pattern (by enumeration rank) within one size class."""
    if workers <= 1:
        for rank, (s_f, s_g) in enumerate(pairs):
            c = _feasible(a_rows, c_rows, list(s_f), list(s_g), w, tol_rank)
            if c is not None:
                return (s_f, s_g, c), rank
        return None, 0

    indexed = list(enumerate(pairs))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(
            lambda item: (item[0], item[1],
                          _feasible(a_rows, c_rows, list(item[1][0]),
                                    list(item[1][1]), w, tol_rank)),
            indexed,
        )
        feasible = [(rank, pat, c) for rank, pat, c in results if c is not None]
    if not feasible:
        return None, 0
    rank, (s_f, s_g), c = min(feasible, key=lambda item: item[0])
    return (s_f, s_g, c), rank


def _report(bisystem, space, c, eta, guard, searched) -> TightnessReport:
    x = space.basis @ c
    # Normalize the entry of largest magnitude to 1 for a reproducible witness.
    pivot = x[int(np.argmax(np.abs(x)))]
    x = x / pivot
    s_f = l0(analysis(bisystem.first, x), eta)
    s_g = l0(analysis(bisystem.second, x), eta)
    rhs = fkdb_rhs(s_f, s_g, coherence_profile(bisystem))
    best = s_f * s_g
    return TightnessReport(
        best_lhs=best, witness=x, rhs_at_witness=rhs, gap=best - rhs,
        patterns_searched=searched, guard=guard, eta=eta,
    )


@dataclass(frozen=True)
class VerifySummary:
    trials: int
    satisfied: int
    concentrated_checked: int
    concentrated_satisfied: int
    min_margin: float
    failing_seeds: tuple = field(default_factory=tuple)


def exhaustive_verify(bisystem: BiSystem, space: AdmissibleSpace, trials: int,
                      seed: int = 0, eta: float = ETA, tol_fp: float = TOL_FP,
                      tol_cert: float = TOL_CERT,
                      concentrated_subsample: int = 5) -> VerifySummary:
    """Verify certificates on many sampled admissible signals.

    On the first `concentrated_subsample` signals, also checks the
    concentrated certificate with M, N chosen by best_set at every
    cardinality pair.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if space.w < 1:
        raise NoAdmissibleSignalError("admissible subspace is trivial (w = 0)")
    n, m = bisystem.first.n, bisystem.second.n
    satisfied = 0
    conc_checked = conc_ok = 0
    min_margin = np.inf
    failing = []
    for t in range(trials):
        x = sample_admissible(space, seed + t)
        cert = verify_fkdb(bisystem, x, eta=eta, tol_fp=tol_fp, tol_cert=tol_cert)
        margin = cert.lhs - cert.rhs
        min_margin = min(min_margin, margin)
        if cert.hypothesis_ok and cert.satisfied:
            satisfied += 1
        else:
            failing.append(seed + t)
        if t < concentrated_subsample:
            a = analysis(bisystem.first, x)
            b = analysis(bisystem.second, x)
            for o_m in range(1, n + 1):
                for o_n in range(1, m + 1):
                    set_m = best_set(a, o_m).set
                    set_n = best_set(b, o_n).set
                    c = verify_fskpb(bisystem, x, set_m, set_n, eta=eta,
                                     tol_fp=tol_fp, tol_cert=tol_cert)
                    conc_checked += 1
                    conc_ok += int(c.hypothesis_ok and c.satisfied)
                    min_margin = min(min_margin, c.lhs - c.rhs)
    return VerifySummary(
        trials=trials, satisfied=satisfied, concentrated_checked=conc_checked,
        concentrated_satisfied=conc_ok, min_margin=float(min_margin),
        failing_seeds=tuple(failing),
    )
