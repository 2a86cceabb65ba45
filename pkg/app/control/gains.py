from dataclasses import dataclass
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class Gains:
    """
    Controller and observer gains.

    Construction does not enforce the convergence conditions on k1, k2 and
    c; check_gains() reports them. l > 0 and tau_i > 0 are observer
    preconditions, enforced when a SimConfig is built.

    adaptive=False freezes every d_i at its initial value, giving the
    fixed-gain sliding observer.
    """
    k1: float
    l: float
    c: float
    tau: Tuple[float, ...]
    k2: Optional[float] = None
    adaptive: bool = True

    @property
    def n(self) -> int:
        return len(self.tau)


def hurwitz_margin(a1: float, b1: float, a0: float, b0: float) -> float:
    """a1*b1*b0 + a1^2*a0 - b0^2, the second condition of lemma6_stable."""
    return a1 * b1 * b0 + a1 * a1 * a0 - b0 * b0


def lemma6_stable(a1: float, b1: float, a0: float, b0: float) -> bool:
    """
    Hurwitz test for h(s) = s^2 + (a1 + i b1) s + (a0 + i b0).

    Stable iff a1 > 0 and hurwitz_margin > 0.
    """
    return a1 > 0 and hurwitz_margin(a1, b1, a0, b0) > 0


def validate_gains_second_order(k1: float, k2: float) -> bool:
    """Stability of s^2 + k2 s + k1, the factor of the tracking-error characteristic polynomial."""
    return lemma6_stable(k2, 0.0, k1, 0.0)


def check_gains(gains: Gains, second_order: bool) -> List[str]:
    """
    List the violated convergence conditions; empty when all hold.
    """
    violations = []
    if not gains.k1 > 0:
        violations.append(f"k1 must be positive, got {gains.k1}")
    if not gains.c > 0:
        violations.append(f"c must be positive, got {gains.c}")
    if not gains.l > 0:
        violations.append(f"l must be positive, got {gains.l}")
    bad_tau = [i + 1 for i, tau in enumerate(gains.tau) if not tau > 0]
    if bad_tau:
        violations.append(f"tau must be positive for followers {bad_tau}")
    if second_order:
        if gains.k2 is None:
            violations.append("k2 is required for second-order agents")
        elif not validate_gains_second_order(gains.k1, gains.k2):
            violations.append(f"s^2 + k2 s + k1 is not Hurwitz for k1={gains.k1}, k2={gains.k2}")
    return violations
