"""Gaussian covariance calculus and Renyi phase-space entropies.

The covariance matrix Sigma is always the second-moment matrix of the Wigner
function, in interleaved (p_1, q_1, ..., p_n, q_n) layout.  The convention
scale sigma_vac fixes the vacuum: sigma_vac = 1/2 (default) is the unique
choice consistent with the Wigner normalization, and the quantum Renyi-2
entropy is S_2(rho_I) = (1/2) log det(Sigma_I / sigma_vac).  All entropies
here are in nats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .inequalities import Inequality, evaluate_float
from .phasespace import particles, subset_size

PHYSICALITY_TOL = 1e-9
SYMMETRY_TOL = 1e-10


def symplectic_matrix(n: int) -> np.ndarray:
    """Direct sum of [[0, 1], [-1, 0]] blocks, matching the discrete layout."""
    omega = np.zeros((2 * n, 2 * n))
    for i in range(n):
        omega[2 * i, 2 * i + 1] = 1.0
        omega[2 * i + 1, 2 * i] = -1.0
    return omega


@dataclass(frozen=True)
class GaussianState:
    n: int
    mu: np.ndarray
    sigma: np.ndarray
    sigma_vac: float = 0.5

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        if mu.shape != (2 * self.n,):
            raise ValueError(f"mu must have shape ({2 * self.n},)")
        if sigma.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"sigma must be {2 * self.n} x {2 * self.n}")
        if np.abs(sigma - sigma.T).max() > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        if self.sigma_vac not in (0.5, 1.0):
            raise ValueError("sigma_vac must be 1/2 or 1")

    @classmethod
    def vacuum(cls, n: int, sigma_vac: float = 0.5) -> "GaussianState":
        return cls(n, np.zeros(2 * n), sigma_vac * np.eye(2 * n), sigma_vac)

    def submatrix(self, mask: int) -> np.ndarray:
        idx = []
        for i in particles(mask):
            idx.extend((2 * i, 2 * i + 1))
        return self.sigma[np.ix_(idx, idx)]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "sigma_vac": self.sigma_vac,
                "mu": self.mu.tolist(),
                "Sigma": self.sigma.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GaussianState":
        obj = json.loads(text)
        return cls(obj["n"], np.array(obj["mu"]), np.array(obj["Sigma"]), obj.get("sigma_vac", 0.5))


def physicality_margin(g: GaussianState) -> float:
    """Minimum eigenvalue of Sigma + i * sigma_vac * Omega."""
    omega = symplectic_matrix(g.n)
    herm = g.sigma + 1j * g.sigma_vac * omega
    return float(np.linalg.eigvalsh(herm).min())


def is_physical(g: GaussianState) -> tuple[bool, float]:
    margin = physicality_margin(g)
    return margin >= -PHYSICALITY_TOL, margin


def _logdet(mat: np.ndarray) -> float:
    # symmetric factorization avoids sign noise from LU pivoting
    evals = np.linalg.eigvalsh(mat)
    if evals.min() <= 0:
        raise ValueError("covariance submatrix is not positive definite")
    return float(np.log(evals).sum())


def renyi2_quantum(g: GaussianState, mask: int) -> float:
    """S_2(rho_I) = -log tr rho_I^2 = (1/2) log det(Sigma_I / sigma_vac)."""
    if not mask:
        raise ValueError("empty mode subset")
    k = subset_size(mask)
    return 0.5 * _logdet(g.submatrix(mask)) - k * math.log(g.sigma_vac)


def renyi_alpha_classical(g: GaussianState, mask: int, alpha: float) -> float:
    """Differential Renyi-alpha entropy of the Wigner marginal on modes I:

    H_alpha = (1/2) log det Sigma_I + |I| (log 2 pi - log(alpha)/(1 - alpha)).
    """
    if alpha <= 0 or alpha == 1.0:
        raise ValueError("alpha must be positive and != 1; use shannon_classical for alpha = 1")
    if not mask:
        raise ValueError("empty mode subset")
    k = subset_size(mask)
    return 0.5 * _logdet(g.submatrix(mask)) + k * (
        math.log(2 * math.pi) - math.log(alpha) / (1 - alpha)
    )


def renyi_correction(alpha: float) -> float:
    """Per-mode constant relating S_2 and H_alpha: log pi - log(alpha)/(1-alpha)."""
    return math.log(math.pi) - math.log(alpha) / (1 - alpha)


def shannon_classical(g: GaussianState, mask: int) -> float:
    """Differential Shannon entropy of the Wigner marginal (alpha -> 1 limit)."""
    if not mask:
        raise ValueError("empty mode subset")
    k = subset_size(mask)
    return 0.5 * _logdet(g.submatrix(mask)) + k * (math.log(2 * math.pi) + 1.0)


def mc_renyi2(
    g: GaussianState, mask: int, samples: int, seed: int
) -> tuple[float, float]:
    """Monte-Carlo estimate of H_2(X_I) = -log int W^2, with standard error.

    Importance sampling with W itself: E_W[W] = int W^2.  Returns the
    estimate of H_2 and a jackknife standard error; deterministic per seed.
    """
    if samples < 10**4:
        raise ValueError("need at least 10^4 samples")
    if not mask:
        raise ValueError("empty mode subset")
    sigma = g.submatrix(mask)
    dim = sigma.shape[0]
    evals = np.linalg.eigvalsh(sigma)
    if evals.min() <= 0:
        raise ValueError("degenerate covariance submatrix")
    idx = []
    for i in particles(mask):
        idx.extend((2 * i, 2 * i + 1))
    mu = g.mu[idx]
    rng = np.random.default_rng(seed)
    chol = np.linalg.cholesky(sigma)
    xs = rng.standard_normal((samples, dim)) @ chol.T
    prec = np.linalg.inv(sigma)
    quad = np.einsum("ij,jk,ik->i", xs, prec, xs)
    lognorm = -0.5 * (dim * math.log(2 * math.pi) + _logdet(sigma))
    w = np.exp(lognorm - 0.5 * quad)
    mean = w.mean()
    est = -math.log(mean)
    # leave-one-out jackknife of -log mean
    loo = (samples * mean - w) / (samples - 1)
    theta = -np.log(loo)
    se = math.sqrt((samples - 1) / samples * ((theta - theta.mean()) ** 2).sum())
    return est, se


@dataclass(frozen=True)
class GaussianEntropyVector:
    n: int
    entries: dict[int, float] = field(compare=False)

    def value(self, mask: int) -> float:
        return self.entries[mask]


def entropy_vector_gaussian(g: GaussianState) -> GaussianEntropyVector:
    ok, margin = is_physical(g)
    if not ok:
        raise ValueError(f"state is unphysical (margin {margin:g})")
    entries = {mask: renyi2_quantum(g, mask) for mask in range(1, 1 << g.n)}
    return GaussianEntropyVector(g.n, entries)


# --- Ingleton violation search -------------------------------------------


@dataclass
class SearchResult:
    sigma: np.ndarray
    value: float
    margin: float
    seed: int
    iterations: int
    found: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "found": self.found,
                "ingleton_value": self.value,
                "physicality_margin": self.margin,
                "seed": self.seed,
                "iterations": self.iterations,
                "Sigma": self.sigma.tolist(),
            }
        )


def ingleton_value(sigma: np.ndarray, sigma_vac: float = 0.5) -> float:
    """The Ingleton combination on the Renyi-2 entropy vector of a 4-mode Sigma."""
    from .inequalities import ingleton

    g = GaussianState(4, np.zeros(8), sigma, sigma_vac)
    q = ingleton(4, 1, 2, 4, 8)
    return evaluate_float(q, lambda mask: renyi2_quantum(g, mask))


def _project_physical(sigma: np.ndarray, sigma_vac: float, target: float) -> np.ndarray:
    """Shift Sigma along the identity until Sigma + i sigma_vac Omega >= target."""
    omega = symplectic_matrix(sigma.shape[0] // 2)
    lam = np.linalg.eigvalsh(sigma + 1j * sigma_vac * omega).min()
    if lam < target:
        sigma = sigma + (target - lam) * np.eye(sigma.shape[0])
    return sigma


STRATEGIES = ("random-wishart", "random-pure-plus-noise", "local-perturbation")


def ingleton_search(
    seed: int,
    iterations: int,
    strategy: str = "random-wishart",
    sigma_vac: float = 0.5,
    start: Optional[np.ndarray] = None,
) -> SearchResult:
    """Search physical 4-mode covariance matrices for an Ingleton violation.

    Random candidates are interleaved with local hill descent from the best
    one found so far; every candidate is projected back onto the physical set
    with a margin, so a negative best value is always a certificate.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    margin_target = 1e-4

    def sample() -> np.ndarray:
        if strategy == "random-pure-plus-noise":
            a = rng.standard_normal((8, 2))
            cand = a @ a.T + 10 ** rng.uniform(-3, 0) * np.eye(8)
        elif rng.random() < 0.5:
            # scalar 4-variable Wishart lifted to one mode per variable
            a = rng.standard_normal((4, 4 + rng.integers(0, 3)))
            cand = np.kron(a @ a.T, np.eye(2))
        else:
            a = rng.standard_normal((8, 8 + rng.integers(0, 5)))
            cand = a @ a.T
        return _project_physical(cand, sigma_vac, margin_target)

    best_sigma = _project_physical(
        np.asarray(start, dtype=float) if start is not None else sample(),
        sigma_vac,
        margin_target,
    )
    best_val = ingleton_value(best_sigma, sigma_vac)
    for it in range(iterations):
        if strategy != "local-perturbation" and (best_val >= 0 or it % 4 == 0):
            cand = sample()
        else:
            step = 10 ** rng.uniform(-4, -0.5)
            noise = rng.standard_normal((8, 8))
            cand = best_sigma + step * (noise + noise.T) / 2
            cand = _project_physical(cand, sigma_vac, margin_target)
        try:
            val = ingleton_value(cand, sigma_vac)
        except ValueError:
            continue
        if val < best_val:
            best_val, best_sigma = val, cand
    margin = physicality_margin(GaussianState(4, np.zeros(8), best_sigma, sigma_vac))
    found = best_val < -1e-6 and margin > 1e-6
    return SearchResult(best_sigma, best_val, margin, seed, iterations, found)
