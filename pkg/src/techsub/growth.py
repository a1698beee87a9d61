"""Logistic growth curves and the allometric killer/victim relation.

A technology level following bounded S-shaped growth is modeled as

    level(t) = K / (1 + exp(a - b*t))

with carrying capacity K, location constant a and growth rate b. Two
technologies growing this way against the same clock are coupled through
an exact odds identity, which in the small-value regime collapses to the
allometric power law  killer = A * victim**B  with B = b_killer/b_victim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

# exp argument beyond this would overflow a double; clamp to the asymptote
_EXP_LIMIT = 700.0


@dataclass(frozen=True)
class LogisticParams:
    """Parameters (K, a, b) of one logistic growth curve.

    K is the carrying capacity (same units as the series), a the
    dimensionless location constant and b the per-year growth rate.
    The inflection time a/b is where the curve crosses K/2.
    """

    K: float
    a: float
    b: float

    def __post_init__(self):
        if not (self.K > 0):
            raise ValidationError(f"carrying capacity K must be > 0, got {self.K}")
        if self.b == 0:
            raise ValidationError("growth rate b must be nonzero")
        for name in ("K", "a", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"parameter {name} must be finite")

    @property
    def t_inflection(self) -> float:
        """Year at which the curve reaches K/2."""
        return self.a / self.b


@dataclass(frozen=True)
class AllometricModel:
    """Power-law relation killer = A * victim**B between two levels.

    A is the scale constant, B the growth-coefficient exponent
    (ratio of the two logistic growth rates) and C1 the coupling
    constant exp(b_victim * (t2 - t1)) of the underlying odds identity.
    """

    A: float
    B: float
    C1: float

    def __post_init__(self):
        if not (self.A > 0 and math.isfinite(self.A)):
            raise ValidationError(f"scale constant A must be finite and > 0, got {self.A}")
        if not (self.C1 > 0 and math.isfinite(self.C1)):
            raise ValidationError(
                f"coupling constant C1 must be finite and > 0, got {self.C1}"
            )


def logistic_value(params: LogisticParams, t: float) -> float:
    """Evaluate K / (1 + exp(a - b*t)) at year t.

    Total over valid params: when the exponent magnitude exceeds the
    double-precision range the asymptotic limit (0 or K) is returned
    instead of overflowing.
    """
    u = params.a - params.b * t
    if u > _EXP_LIMIT:
        return 0.0
    if u < -_EXP_LIMIT:
        return params.K
    return params.K / (1.0 + math.exp(u))


def logit_transform(params: LogisticParams, level: float) -> float:
    """Return ln((K - level) / level), the logit of a level against K.

    Inverse view of the curve: for level = logistic_value(params, t) the
    result is a - b*t. Raises ValidationError outside the open interval
    (0, K), which signals a series value at or beyond the fitted capacity.
    """
    if not (0.0 < level < params.K):
        raise ValidationError(
            f"level must lie strictly inside (0, {params.K}), got {level}"
        )
    return math.log((params.K - level) / level)


def allometric_constants(
    victim: LogisticParams, killer: LogisticParams
) -> AllometricModel:
    """Derive the allometric model linking two logistic curves.

    B = b_killer / b_victim and C1 = exp(b_victim * (t2 - t1)), with t1,
    t2 the victim and killer inflection times. The scale constant is the
    small-value limit of the exact odds identity:

        A = K_killer * C1**(-B) / K_victim**B
    """
    if victim.b == 0:
        raise ValidationError("victim growth rate must be nonzero (B undefined)")
    B = killer.b / victim.b
    t1 = victim.t_inflection
    t2 = killer.t_inflection
    c1_exponent = victim.b * (t2 - t1)
    if abs(c1_exponent) > _EXP_LIMIT:
        raise ValidationError(
            f"coupling constant exp({c1_exponent:.6g}) is not representable"
        )
    C1 = math.exp(c1_exponent)
    # A spans many orders of magnitude for large |B|; assemble it in log
    # space so only a truly unrepresentable A fails, not an intermediate.
    log_A = math.log(killer.K) - B * c1_exponent - B * math.log(victim.K)
    if abs(log_A) > _EXP_LIMIT:
        raise ValidationError(
            f"scale constant exp({log_A:.6g}) is not representable for this pair"
        )
    return AllometricModel(A=math.exp(log_A), B=B, C1=C1)


def allometric_predict(model: AllometricModel, v: float) -> float:
    """Predicted killer level A * v**B for a victim level v > 0."""
    if not (v > 0):
        raise ValidationError(f"victim level must be > 0, got {v}")
    return model.A * v**model.B
