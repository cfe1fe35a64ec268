"""Exact-rational bookkeeping of polar codeword-set fractions and the
achievable-rate formulas for degradable, anti-degradable, and partially
degradable regimes. No floating point anywhere in this module.

Each field of :class:`PolarLedger` is the asymptotic fraction of codeword
positions in the corresponding set: good amplitude / phase positions
(g_amp, g_phase), bad-amplitude positions (p1) and the recoverable part of
them (p1_prime), bad-phase positions (p2, p2_prime), and positions covered
by pre-shared entanglement (b).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

REGIMES = ("DEGRADABLE", "DEGRADABLE_PD", "ANTI_DEGRADABLE", "ANTI_DEGRADABLE_PD")

_FIELDS = ("g_amp", "g_phase", "p1", "p1_prime", "p2", "p2_prime", "b")


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise DomainError("ledger fractions must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True)
class PolarLedger:
    g_amp: Fraction
    g_phase: Fraction
    p1: Fraction
    p1_prime: Fraction
    p2: Fraction
    p2_prime: Fraction
    b: Fraction
    regime: str

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")
        for name in _FIELDS:
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @property
    def is_degradable_regime(self) -> bool:
        return self.regime in ("DEGRADABLE", "DEGRADABLE_PD")


def _require(ledger: PolarLedger, *regimes: str) -> None:
    if ledger.regime not in regimes:
        raise DomainError(
            f"operation needs regime in {regimes}, ledger has {ledger.regime}"
        )


def rate_degradable(ledger: PolarLedger) -> Fraction:
    """Base achievable fraction in the degradable regimes: g_amp - p1."""
    _require(ledger, "DEGRADABLE", "DEGRADABLE_PD")
    return ledger.g_amp - ledger.p1


def delta(ledger: PolarLedger) -> Fraction:
    """Rate improvement from partial degradability: the recoverable
    bad-amplitude fraction p1_prime."""
    return ledger.p1_prime


def rate_pd_degradable(ledger: PolarLedger) -> Fraction:
    _require(ledger, "DEGRADABLE_PD")
    return ledger.g_amp - (ledger.p1 - ledger.p1_prime)


def rate_pd_antidegradable(ledger: PolarLedger) -> dict:
    """Anti-degradable PD rate: gross pays for the entanglement-covered
    fraction once in the partition, net pays for consuming it as well."""
    _require(ledger, "ANTI_DEGRADABLE_PD")
    gross = ledger.g_amp - (ledger.p1 - ledger.p1_prime) - ledger.b
    return {
        "gross": gross,
        "entanglement_rate": ledger.b,
        "net": gross - ledger.b,
    }


def holevo_triples(ledger: PolarLedger) -> dict:
    """Classical-information fractions of the logical, environment, and
    degraded-environment sides, consistent with the rate operations."""
    anti = not ledger.is_degradable_regime
    chi_ab = ledger.g_amp + ledger.p2_prime
    chi_ae = ledger.p1 + ledger.p2 + (ledger.b if anti else Fraction(0))
    chi_ae_prime = (ledger.p1 - ledger.p1_prime) + (ledger.b if anti else Fraction(0))
    return {"chi_ab": chi_ab, "chi_ae": chi_ae, "chi_ae_prime": chi_ae_prime}


def validate_partition(ledger: PolarLedger) -> list:
    """Exact-arithmetic consistency checks; returns a list of violations
    (empty when the ledger is consistent)."""
    violations = []
    one = Fraction(1)
    for name in _FIELDS:
        value = getattr(ledger, name)
        if not 0 <= value <= 1:
            violations.append(f"{name} = {value} outside [0, 1]")
    if ledger.p1_prime > ledger.p1:
        violations.append("p1_prime > p1")
    if ledger.p2_prime > ledger.p2:
        violations.append("p2_prime > p2")
    if ledger.p2 != 0:
        violations.append("p2 must be 0 (phase-bad fraction vanishes asymptotically)")
    if ledger.is_degradable_regime:
        if ledger.b != 0:
            violations.append("b must be 0 in degradable regimes")
        s_in = ledger.g_amp - (ledger.p1 - ledger.p1_prime)
        if s_in + (ledger.p1 - ledger.p1_prime) != one:
            violations.append(
                f"degradable cover s_in + (p1 - p1_prime) = "
                f"{s_in + ledger.p1 - ledger.p1_prime} != 1"
            )
    else:
        s_in = ledger.g_amp - (ledger.p1 - ledger.p1_prime) - ledger.b
        # the entanglement-covered fraction is counted in both the amplitude
        # and the phase accounting, hence the doubled b
        cover = s_in + (ledger.p1 - ledger.p1_prime) + 2 * ledger.b
        if cover != one:
            violations.append(f"anti-degradable cover = {cover} != 1")
    return violations


# ---------------------------------------------------------------------------
# Ledger JSON: {"regime": str, "fractions": {"g_amp": "4/5", ...}}
# ---------------------------------------------------------------------------


def ledger_to_dict(ledger: PolarLedger) -> dict:
    return {
        "regime": ledger.regime,
        "fractions": {name: str(getattr(ledger, name)) for name in _FIELDS},
    }


def ledger_from_dict(d: dict) -> PolarLedger:
    try:
        regime = d["regime"]
        fractions = {name: Fraction(d["fractions"][name]) for name in _FIELDS}
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed ledger record: {exc}") from exc
    return PolarLedger(regime=regime, **fractions)


def save_ledger(ledger: PolarLedger, path: str) -> None:
    with open(path, "w") as f:
        json.dump(ledger_to_dict(ledger), f, indent=2, sort_keys=True)
        f.write("\n")


def load_ledger(path: str) -> PolarLedger:
    with open(path) as f:
        return ledger_from_dict(json.load(f))
