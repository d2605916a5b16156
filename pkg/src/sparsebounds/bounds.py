"""Right-hand sides of the uncertainty inequalities and verified certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import dft
from .coherence import CoherenceProfile, coherence_profile
from .config import ETA, ETA_HYP, TOL_CERT, TOL_FP
from .errors import DegenerateInputError
from .sparsity import concentration_epsilon, l0, l1
from .systems import BiSystem, analysis, synthesis, validate_pairing


def clamp_plus(a: float) -> float:
    """a+ = max(0, a)."""
    return max(0.0, a)


def ds_bound(d: int) -> float:
    """Lower bound on the time/frequency sparsity product in dimension d."""
    return float(d)


def ds_product(h, eta: float = ETA) -> tuple:
    """(l0 of h, l0 of its unitary DFT, their product) for nonzero h."""
    s_time = l0(h, eta)
    if s_time == 0:
        raise DegenerateInputError("signal is zero after thresholding")
    s_freq = l0(dft.forward(h), eta)
    return s_time, s_freq, s_time * s_freq


def eb_bound(mu: float) -> float:
    """1 / mu^2 for the cross-coherence mu of two orthonormal bases."""
    if mu <= 0.0:
        raise DegenerateInputError("cross coherence must be positive for two bases")
    return 1.0 / (mu * mu)


def fkdb_rhs(s_f: int, s_g: int, prof: CoherenceProfile) -> float:
    """Bound on the sparsity product at sparsities (s_f, s_g).

    A zero cross-coherence makes the bound infinite (vacuous hypothesis);
    this is reported as math.inf, never as an arithmetic fault, except that
    a zero numerator yields 0 outright.
    """
    num = clamp_plus(1.0 - (s_f - 1) * prof.sub_coherence_f) * clamp_plus(
        1.0 - (s_g - 1) * prof.sub_coherence_g
    )
    denom = prof.cross_f_omega * prof.cross_g_tau
    if denom <= 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / denom


def fskpb_rhs(o_m: int, o_n: int, eps: float, delta: float, prof: CoherenceProfile) -> float:
    """Concentrated variant of the bound for set sizes (o_m, o_n).

    Reduces exactly to fkdb_rhs when eps = delta = 0 (same arithmetic).
    """
    num = clamp_plus(1.0 - eps - (o_m - 1 + eps) * prof.sub_coherence_f) * clamp_plus(
        1.0 - delta - (o_n - 1 + delta) * prof.sub_coherence_g
    )
    denom = prof.cross_f_omega * prof.cross_g_tau
    if denom <= 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / denom


@dataclass(frozen=True)
class BoundCertificate:
    """One verified inequality instance with all component quantities."""

    lhs: float
    rhs: float
    numerator_f: float
    numerator_g: float
    profile: CoherenceProfile
    fixedpoint_residual_f: float
    fixedpoint_residual_g: float
    hypothesis_ok: bool
    satisfied: bool
    vacuous: bool
    eta: float
    tol_fp: float
    tol_cert: float
    epsilon: Optional[float] = None
    delta: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "numerator_f": self.numerator_f,
            "numerator_g": self.numerator_g,
            "coherences": self.profile.as_dict(),
            "residuals": {"f": self.fixedpoint_residual_f, "g": self.fixedpoint_residual_g},
            "epsilon": self.epsilon,
            "delta": self.delta,
            "hypothesis_ok": self.hypothesis_ok,
            "satisfied": self.satisfied,
            "vacuous": self.vacuous,
            "eta": self.eta,
            "tol_fp": self.tol_fp,
            "tol_cert": self.tol_cert,
        }


def fixedpoint_residuals(bisystem: BiSystem, x) -> tuple:
    """Max-norm residuals of x against both fixed-point conditions."""
    x = np.asarray(x).ravel()
    r_f = np.abs(x - synthesis(bisystem.first, analysis(bisystem.first, x))).max()
    r_g = np.abs(x - synthesis(bisystem.second, analysis(bisystem.second, x))).max()
    return float(r_f), float(r_g)


def _check_nonzero(x, eta: float):
    if l0(x, eta) == 0:
        raise DegenerateInputError("signal is zero after thresholding")


def _finish(lhs, rhs, num_f, num_g, prof, r_f, r_g, hyp_ok, eta, tol_fp, tol_cert,
            epsilon=None, delta=None) -> BoundCertificate:
    vacuous = math.isinf(rhs)
    satisfied = bool(hyp_ok and not vacuous and lhs >= rhs - tol_cert)
    return BoundCertificate(
        lhs=float(lhs), rhs=rhs, numerator_f=num_f, numerator_g=num_g, profile=prof,
        fixedpoint_residual_f=r_f, fixedpoint_residual_g=r_g, hypothesis_ok=hyp_ok,
        satisfied=satisfied, vacuous=vacuous, eta=eta, tol_fp=tol_fp,
        tol_cert=tol_cert, epsilon=epsilon, delta=delta,
    )


def verify_fkdb(bisystem: BiSystem, x, eta: float = ETA, tol_fp: float = TOL_FP,
                tol_cert: float = TOL_CERT, eta_hyp: float = ETA_HYP) -> BoundCertificate:
    """Certificate for the sparsity-product inequality at signal x.

    Hypothesis failure yields a certificate with hypothesis_ok=False and
    satisfied=False, never a silent pass.
    """
    _check_nonzero(x, eta)
    r_f, r_g = fixedpoint_residuals(bisystem, x)
    hyp_ok = bool(
        r_f <= tol_fp
        and r_g <= tol_fp
        and validate_pairing(bisystem.first, eta_hyp).ok
        and validate_pairing(bisystem.second, eta_hyp).ok
    )
    prof = coherence_profile(bisystem)
    s_f = l0(analysis(bisystem.first, x), eta)
    s_g = l0(analysis(bisystem.second, x), eta)
    num_f = 1.0 - (s_f - 1) * prof.sub_coherence_f
    num_g = 1.0 - (s_g - 1) * prof.sub_coherence_g
    rhs = fkdb_rhs(s_f, s_g, prof)
    return _finish(s_f * s_g, rhs, num_f, num_g, prof, r_f, r_g, hyp_ok,
                   eta, tol_fp, tol_cert)


def verify_fskpb(bisystem: BiSystem, x, set_m, set_n, eta: float = ETA,
                 tol_fp: float = TOL_FP, tol_cert: float = TOL_CERT,
                 eta_hyp: float = ETA_HYP) -> BoundCertificate:
    """Concentrated certificate for index sets M (first system) and N (second).

    epsilon and delta are the exact concentration defects of the analysis
    coefficients on M and N; empty sets are allowed (epsilon or delta = 1).
    """
    _check_nonzero(x, eta)
    r_f, r_g = fixedpoint_residuals(bisystem, x)
    hyp_ok = bool(
        r_f <= tol_fp
        and r_g <= tol_fp
        and validate_pairing(bisystem.first, eta_hyp).ok
        and validate_pairing(bisystem.second, eta_hyp).ok
    )
    prof = coherence_profile(bisystem)
    set_m = tuple(sorted(set(int(i) for i in set_m)))
    set_n = tuple(sorted(set(int(i) for i in set_n)))
    eps = concentration_epsilon(analysis(bisystem.first, x), set_m)
    delta = concentration_epsilon(analysis(bisystem.second, x), set_n)
    o_m, o_n = len(set_m), len(set_n)
    num_f = 1.0 - eps - (o_m - 1 + eps) * prof.sub_coherence_f
    num_g = 1.0 - delta - (o_n - 1 + delta) * prof.sub_coherence_g
    rhs = fskpb_rhs(o_m, o_n, eps, delta, prof)
    return _finish(o_m * o_n, rhs, num_f, num_g, prof, r_f, r_g, hyp_ok,
                   eta, tol_fp, tol_cert, epsilon=eps, delta=delta)


def per_index_slack(bisystem: BiSystem, x) -> np.ndarray:
    """Slack of the per-index proof inequality at every index j.

    For admissible x the quantity
    (1 + mu_f)|f_j(x)| - ||theta_f x||_1 mu_f is at most
    ||theta_g x||_1 * cross_f_omega; returned is the (rhs - lhs) array,
    nonnegative up to rounding on valid instances.
    """
    prof = coherence_profile(bisystem)
    a = analysis(bisystem.first, x)
    b = analysis(bisystem.second, x)
    lhs = (1.0 + prof.sub_coherence_f) * np.abs(a) - l1(a) * prof.sub_coherence_f
    return l1(b) * prof.cross_f_omega - lhs
