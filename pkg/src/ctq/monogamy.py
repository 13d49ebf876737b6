"""Monogamy analysis: one-vs-rest measure against the sum of pairwise terms.

For pure all-qubit states with 2 <= q <= 3 the measure across the first
party's cut bounds the sum over pairwise marginals (the `guaranteed`
regime); outside it the residual is still computed but carries no sign
guarantee.  The 4 x 2 x 2 chain family admits closed forms for all three
cuts, so its residual can be swept in (theta, q, gamma) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qlinalg
from .exceptions import BadExponent, NotAllQubits, NotNormalized
from .measures import h_q, normalization_mu, wootters_concurrence_2qubit
from .states import MultipartiteState


@dataclass(frozen=True)
class MonogamyReport:
    lhs: float
    pairwise: tuple[float, ...]
    residual: float
    q: float
    gamma: float
    guaranteed: bool


def monogamy_check(psi: MultipartiteState, q: float, gamma: float = 1.0) -> MonogamyReport:
    """Residual lhs**gamma - sum(pairwise**gamma) for a pure all-qubit state.

    lhs is the measure across the first-qubit cut, obtained from the
    marginal purity; each pairwise term applies the concurrence map h_q to
    the spin-flip concurrence of the two-qubit marginal.  The sign is
    guaranteed nonnegative only for 2 <= q <= 3 at gamma = 1.
    """
    if any(d != 2 for d in psi.dims):
        raise NotAllQubits(f"all local dimensions must be 2, got {psi.dims}")
    if gamma <= 0:
        raise BadExponent(f"gamma must be positive, got {gamma}")
    if q <= 1.0:
        raise BadExponent(f"need q > 1, got {q}")
    k = len(psi.dims)
    rho_full = psi.density()
    rho_a = qlinalg.partial_trace(rho_full, psi.dims, [0])
    purity = float(np.trace(rho_a @ rho_a).real)
    c_cut = np.sqrt(max(0.0, 2.0 * (1.0 - purity)))
    lhs = h_q(min(c_cut, 1.0), q)
    pairwise = []
    for i in range(1, k):
        rho_pair = qlinalg.partial_trace(rho_full, psi.dims, [0, i])
        pairwise.append(h_q(wootters_concurrence_2qubit(rho_pair), q))
    residual = lhs**gamma - sum(p**gamma for p in pairwise)
    guaranteed = 2.0 - 1e-12 <= q <= 3.0 + 1e-12 and abs(gamma - 1.0) <= 1e-12
    return MonogamyReport(
        lhs=lhs,
        pairwise=tuple(pairwise),
        residual=float(residual),
        q=float(q),
        gamma=float(gamma),
        guaranteed=guaranteed,
    )


def gen_schmidt_concurrences(nu) -> tuple[float, float, float]:
    """Concurrence triple of the five-coefficient three-qubit form.

    Returns (2 nu0 sqrt(nu2^2 + nu3^2 + nu4^2), 2 nu0 nu2, 2 nu0 nu3): the
    value across the first-vs-rest cut followed by the two pairwise values.
    On the constructed state nu2 excites the third qubit and nu3 the second,
    so 2 nu0 nu2 is attained on the (first, third) marginal and 2 nu0 nu3 on
    the (first, second) one; every symmetric combination of the pairwise
    entries (such as the monogamy sum) is unaffected by that attachment.
    """
    nu = np.asarray(nu, dtype=float)
    if nu.shape != (5,):
        raise NotNormalized("expected 5 coefficients")
    if abs(float(np.sum(nu**2)) - 1.0) > 1e-6:
        raise NotNormalized("coefficients must have unit sum of squares")
    c_cut = 2.0 * nu[0] * np.sqrt(nu[2] ** 2 + nu[3] ** 2 + nu[4] ** 2)
    return float(c_cut), float(2.0 * nu[0] * nu[2]), float(2.0 * nu[0] * nu[3])


def example2_K(nu, q: float, alpha_exp: float) -> tuple[float, float]:
    """Powers comparison (K1, K2) for the five-coefficient 3-qubit family.

    K1 = h_q(C_A|BC)**alpha, K2 = h_q(C_AB)**alpha + h_q(C_AC)**alpha.
    """
    if not 2.0 - 1e-12 <= q <= 3.0 + 1e-12:
        raise BadExponent(f"need 2 <= q <= 3, got {q}")
    if not 1.0 - 1e-12 <= alpha_exp <= 4.0 + 1e-12:
        raise BadExponent(f"need 1 <= alpha <= 4, got {alpha_exp}")
    c_cut, c_ab, c_ac = gen_schmidt_concurrences(nu)
    K1 = h_q(c_cut, q) ** alpha_exp
    K2 = h_q(c_ab, q) ** alpha_exp + h_q(c_ac, q) ** alpha_exp
    return float(K1), float(K2)


def chain_ctq(theta: float, q: float) -> tuple[float, float, float]:
    """Closed-form measure triple of the 4 x 2 x 2 chain state.

    Returns (A|BC cut, AB marginal, AC marginal) in normalized units, with
    alpha = cos(theta), beta = sin(theta):

      A|BC: [4 - 2**(1-q) (a^2q + (2-a^2)^q + b^2q + (2-b^2)^q)] / mu(4, q)
      AB:   (1 - a^2q - b^2q) / (1 - 2**(1-q))
      AC:   1
    """
    if q < 2.0 - 1e-12:
        raise BadExponent(f"need q >= 2, got {q}")
    a2 = np.cos(theta) ** 2
    b2 = np.sin(theta) ** 2
    num = 4.0 - 2.0 ** (1.0 - q) * (a2**q + (2.0 - a2) ** q + b2**q + (2.0 - b2) ** q)
    ct_a_bc = num / normalization_mu(4, q)
    ct_ab = (1.0 - a2**q - b2**q) / (1.0 - 2.0 ** (1.0 - q))
    return float(ct_a_bc), float(ct_ab), 1.0


def chain_concurrence(theta: float) -> tuple[float, float, float]:
    """Concurrence triple of the chain state: (sqrt(2 - b^4 - a^4), sqrt(2 - 2b^4 - 2a^4), 1)."""
    a4 = np.cos(theta) ** 4
    b4 = np.sin(theta) ** 4
    return (
        float(np.sqrt(max(0.0, 2.0 - b4 - a4))),
        float(np.sqrt(max(0.0, 2.0 - 2.0 * b4 - 2.0 * a4))),
        1.0,
    )


def residual_tau(theta: float, q: float, gamma: float, which: str = "ctq") -> float:
    """Residual lhs**gamma - t1**gamma - t2**gamma for the chain family.

    ``which`` selects the measure: "ctq" uses the closed-form normalized
    triple, "concurrence" the concurrence triple.  No sign guarantee is
    made; the surface changes sign with (theta, q, gamma).
    """
    if gamma <= 0:
        raise BadExponent(f"gamma must be positive, got {gamma}")
    key = which.lower()
    if key == "ctq":
        lhs, t1, t2 = chain_ctq(theta, q)
    elif key == "concurrence":
        lhs, t1, t2 = chain_concurrence(theta)
    else:
        raise BadExponent(f"which must be 'ctq' or 'concurrence', got {which!r}")
    return float(lhs**gamma - t1**gamma - t2**gamma)
