"""Independent validation paths for the closed forms and the simulator.

The probability estimators classify protocol events directly from fresh
channel draws (sharing only the success predicates with the simulator), so
they are independent of the algebra in :mod:`crnoma_aoi.analytic`.  The
renewal-reward recomputation integrates a delivery log interval by interval
(Q_j = reset_age * y_j + y_j^2 / 2), independent of the simulator's
vectorized trapezoid accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (primary_success, secondary_capped_success,
                    secondary_solo_success)


@dataclass(frozen=True)
class EstimateWithCI:
    """Monte Carlo probability estimate with a 3-sigma binomial half-interval."""

    estimate: float
    half_width: float
    trials: int

    @classmethod
    def from_count(cls, hits: int, trials: int) -> "EstimateWithCI":
        p = hits / trials
        return cls(estimate=p,
                   half_width=3.0 * math.sqrt(p * (1.0 - p) / trials),
                   trials=trials)

    def covers(self, value: float) -> bool:
        return abs(self.estimate - value) <= self.half_width


def estimate_gaw_partition(eps: float, P: float, P_S: float, trials: int,
                           rng: np.random.Generator):
    """Empirical frame-outcome partition for a user under CR-NOMA with GAW.

    Per trial, draws the user's gains in its two slots plus the partner's
    gain in the second slot, and classifies: success in the own (primary)
    slot, else success in the partner's slot as capped secondary, else both
    fail.  Returns (p0, p_first, p_second) estimates.
    """
    g_own = rng.exponential(size=trials)        # primary attempt, own slot
    g_retry = rng.exponential(size=trials)      # secondary attempt, partner slot
    g_partner = rng.exponential(size=trials)    # partner's primary, its slot
    first = primary_success(P, g_own, eps)
    second = ~first & secondary_capped_success(P_S, g_retry, P, g_partner, eps)
    both_fail = ~first & ~second
    return (EstimateWithCI.from_count(int(both_fail.sum()), trials),
            EstimateWithCI.from_count(int(first.sum()), trials),
            EstimateWithCI.from_count(int(second.sum()), trials))


def estimate_gar_partitions(eps: float, P: float, P_S: float, trials: int,
                            rng: np.random.Generator):
    """Empirical frame-outcome partitions for both users of a pair under
    CR-NOMA with GAR, classified jointly per frame (including the branch
    where the partner's first-slot success leaves user m interference-free
    in slot m').  Returns two triples: (user m, user m')."""
    g_m_m = rng.exponential(size=trials)     # U_m in slot m
    g_mp_m = rng.exponential(size=trials)    # U_m' in slot m
    g_m_mp = rng.exponential(size=trials)    # U_m in slot m'
    g_mp_mp = rng.exponential(size=trials)   # U_m' in slot m'

    sm1 = primary_success(P, g_m_m, eps)
    sp1 = secondary_capped_success(P_S, g_mp_m, P, g_m_m, eps)
    sp2 = primary_success(P, g_mp_mp, eps)
    sm2 = np.where(sp1,
                   secondary_solo_success(P_S, g_m_mp, eps),
                   secondary_capped_success(P_S, g_m_mp, P, g_mp_mp, eps))

    m_first = sm1
    m_second = ~sm1 & sm2
    m_fail = ~m_first & ~m_second
    p_first = sp1
    p_second = ~sp1 & sp2
    p_fail = ~p_first & ~p_second

    user_m = (EstimateWithCI.from_count(int(m_fail.sum()), trials),
              EstimateWithCI.from_count(int(m_first.sum()), trials),
              EstimateWithCI.from_count(int(m_second.sum()), trials))
    user_mp = (EstimateWithCI.from_count(int(p_fail.sum()), trials),
               EstimateWithCI.from_count(int(p_first.sum()), trials),
               EstimateWithCI.from_count(int(p_second.sum()), trials))
    return user_m, user_mp


def parse_event_log(path) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Read a simulator delivery log; returns user -> (times, reset_ages),
    each sorted by time."""
    per_user: dict[int, list[tuple[float, float]]] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            t_s, user_s, _slot_s, age_s = line.split()
            per_user.setdefault(int(user_s), []).append((float(t_s), float(age_s)))
    out = {}
    for user, recs in per_user.items():
        recs.sort()
        times = np.array([r[0] for r in recs])
        ages = np.array([r[1] for r in recs])
        out[user] = (times, ages)
    return out


def renewal_aoi(events_by_user: dict[int, tuple[np.ndarray, np.ndarray]],
                t_end: float, t_start: float = 0.0) -> dict[int, float]:
    """Recompute per-user average AoI from renewal intervals alone.

    For each interval y_j between consecutive deliveries the age ramps from
    the reset value a_j, contributing Q_j = a_j y_j + y_j^2/2; boundary
    intervals are clipped to [t_start, t_end].  Plain Python accumulation,
    deliberately separate from the simulator's vectorized integrator.
    """
    if t_end <= t_start:
        raise ValueError("zero-length accumulation window")
    out = {}
    for user, (times, ages) in events_by_user.items():
        if len(times) == 0:
            raise ValueError(f"no deliveries for user {user}")
        total = 0.0
        for j in range(len(times)):
            t_a = times[j]
            t_b = times[j + 1] if j + 1 < len(times) else t_end
            lo = max(t_a, t_start)
            hi = min(t_b, t_end)
            if hi > lo:
                a = ages[j] + (lo - t_a)
                y = hi - lo
                total += a * y + 0.5 * y * y
        out[user] = total / (t_end - t_start)
    return out


def geometric_moment_check(x: float, terms: int = 2000) -> tuple[float, float]:
    """Residuals of the two geometric-series moment identities

        sum_j j x^j   = x / (1-x)^2
        sum_j j^2 x^j = x (1+x) / (1-x)^3

    evaluated by direct partial summation of ``terms`` terms.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must be in (0, 1), got {x}")
    j = np.arange(1, terms + 1, dtype=np.float64)
    powers = x ** j
    s1 = float(np.sum(j * powers))
    s2 = float(np.sum(j * j * powers))
    c1 = x / (1.0 - x) ** 2
    c2 = x * (1.0 + x) / (1.0 - x) ** 3
    return abs(s1 - c1), abs(s2 - c2)
