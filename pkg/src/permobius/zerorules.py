"""Certificate-producing detection of principal Mobius zeros.

Each rule is sound: a permutation holding a valid certificate has principal
Mobius value 0.  Completeness is not attempted; zeros arising from
accidental cancellation get no certificate.  All rules are closed under the
8 symmetries, which are containment automorphisms of the pattern poset.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Union

from .permcore import (
    Perm,
    PermError,
    SYMMETRY_LABELS,
    _window_is_interval,
    adjacencies,
    apply_symmetry,
    direct_sum,
    down_set,
    find_sum_split_interval,
    fmt,
    interval_copies,
    pattern_of,
)

#: Single permutations whose interval copy forces a zero (beyond sum splits).
BASE_ANNIHILATORS: tuple[Perm, ...] = (
    (2, 1, 5, 4, 6, 3),
    (2, 3, 6, 1, 4, 5),
    (2, 1, 4, 6, 5, 3),
)

#: Pairs whose disjoint interval copies force a zero.
ANNIHILATOR_PAIRS: tuple[tuple[Perm, Perm], ...] = (
    ((1, 2), (2, 1)),
    ((2, 1, 3), (2, 4, 3, 1)),
    ((2, 1, 4, 3), (2, 4, 3, 1)),
    ((3, 1, 2), (2, 3, 5, 1, 4)),
    ((2, 5, 1, 3, 4), (2, 3, 5, 1, 4)),
)

#: Conjectured pairs, certifiable only behind an explicit flag.
CONJECTURED_PAIRS: tuple[tuple[Perm, Perm], ...] = (
    ((3, 1, 2), (2, 3, 5, 6, 1, 4)),
)


@dataclass(frozen=True)
class OpposingAdjacencies:
    up_index: int
    down_index: int


@dataclass(frozen=True)
class SumAnnihilator:
    window: tuple[int, int]
    split: int
    # Coordinates refer to apply_symmetry(symmetry, pi); "id" is a sum split
    # of pi itself, other labels witness the skew/reflected variants.
    symmetry: str = "id"


@dataclass(frozen=True)
class BaseAnnihilator:
    base: Perm
    symmetry: str
    window: tuple[int, int]


@dataclass(frozen=True)
class AnnihilatorPair:
    pair: tuple[Perm, Perm]
    symmetry: str
    window1: tuple[int, int]
    window2: tuple[int, int]


ZeroCertificate = Union[
    OpposingAdjacencies, SumAnnihilator, BaseAnnihilator, AnnihilatorPair
]


def _interval_windows(pi: Perm, lengths: set[int]) -> dict[Perm, list[tuple[int, int]]]:
    """All interval windows of pi with length in ``lengths``, keyed by pattern."""
    n = len(pi)
    out: dict[Perm, list[tuple[int, int]]] = {}
    for k in lengths:
        for s in range(n - k + 1):
            vals = pi[s : s + k]
            if _window_is_interval(vals):
                out.setdefault(pattern_of(vals), []).append((s + 1, s + k))
    return out


@functools.lru_cache(maxsize=1 << 20)
def certify_zero(pi: Perm, include_conjectured: bool = False) -> Optional[ZeroCertificate]:
    """The first applicable zero certificate for pi, or None.

    Precedence: opposing adjacencies, then sum-split intervals under all 8
    symmetries, then base annihilators under all 8 symmetries, then
    annihilator pairs (same symmetry applied to both members, windows
    disjoint).  The precedence is cosmetic; every rule is sound.
    """
    if not pi:
        raise PermError("cannot certify the empty permutation")
    ups, downs = adjacencies(pi)
    if ups and downs:
        return OpposingAdjacencies(ups[0], downs[0])
    for g in SYMMETRY_LABELS:
        w = find_sum_split_interval(apply_symmetry(g, pi))
        if w is not None:
            return SumAnnihilator(window=(w[0], w[1]), split=w[2], symmetry=g)

    pairs = ANNIHILATOR_PAIRS + (CONJECTURED_PAIRS if include_conjectured else ())
    lengths = {len(b) for b in BASE_ANNIHILATORS}
    for phi, psi in pairs:
        lengths.add(len(phi))
        lengths.add(len(psi))
    windows = _interval_windows(pi, lengths)

    for base in BASE_ANNIHILATORS:
        for g in SYMMETRY_LABELS:
            copies = windows.get(apply_symmetry(g, base))
            if copies:
                return BaseAnnihilator(base=base, symmetry=g, window=copies[0])

    for phi, psi in pairs:
        for g in SYMMETRY_LABELS:
            c1 = windows.get(apply_symmetry(g, phi), [])
            c2 = windows.get(apply_symmetry(g, psi), [])
            for w1 in c1:
                for w2 in c2:
                    if w1[1] < w2[0] or w2[1] < w1[0]:
                        return AnnihilatorPair(
                            pair=(phi, psi), symmetry=g, window1=w1, window2=w2
                        )
    return None


def _window_copies(pi: Perm, pattern: Perm, window: tuple[int, int]) -> bool:
    s, e = window
    if not (1 <= s <= e <= len(pi)) or e - s + 1 != len(pattern):
        return False
    vals = pi[s - 1 : e]
    return _window_is_interval(vals) and pattern_of(vals) == pattern


def verify_certificate(
    pi: Perm, cert: ZeroCertificate, include_conjectured: bool = False
) -> bool:
    """Structural re-check of a certificate's witness; no Mobius evaluation."""
    try:
        if isinstance(cert, OpposingAdjacencies):
            i, j = cert.up_index, cert.down_index
            if not (1 <= i < len(pi)) or not (1 <= j < len(pi)):
                return False
            return pi[i] == pi[i - 1] + 1 and pi[j] == pi[j - 1] - 1
        if isinstance(cert, SumAnnihilator):
            q = apply_symmetry(cert.symmetry, pi)
            (s, e), p = cert.window, cert.split
            if not (1 <= s < p < e <= len(q)) or e - s < 2:
                return False
            vals = q[s - 1 : e]
            if not _window_is_interval(vals):
                return False
            v = q[p - 1]
            return all(x < v for x in q[s - 1 : p - 1]) and all(
                x > v for x in q[p:e]
            )
        if isinstance(cert, BaseAnnihilator):
            if cert.base not in BASE_ANNIHILATORS:
                return False
            return _window_copies(
                pi, apply_symmetry(cert.symmetry, cert.base), cert.window
            )
        if isinstance(cert, AnnihilatorPair):
            known = ANNIHILATOR_PAIRS + (
                CONJECTURED_PAIRS if include_conjectured else ()
            )
            if cert.pair not in known:
                return False
            phi, psi = cert.pair
            w1, w2 = cert.window1, cert.window2
            if not (w1[1] < w2[0] or w2[1] < w1[0]):
                return False
            return _window_copies(
                pi, apply_symmetry(cert.symmetry, phi), w1
            ) and _window_copies(pi, apply_symmetry(cert.symmetry, psi), w2)
        return False
    except (PermError, ValueError, TypeError):
        return False


def sigma_sum_rule(sigma: Perm, alpha: Perm, beta: Perm, pi: Perm) -> bool:
    """True certifies mu(sigma, pi) = 0 via a sum-shaped interval copy.

    Requires (a) pi has an interval copy of alpha+1+beta, and (b) sigma has
    no interval copy of any a'+b' with 1 <= a' <= alpha and 1 <= b' <= beta.
    """
    if not sigma or not alpha or not beta:
        raise PermError("sigma, alpha and beta must be nonempty")
    phi = direct_sum(alpha, direct_sum((1,), beta))
    if not interval_copies(pi, phi):
        return False
    for ap in down_set(alpha):
        for bp in down_set(beta):
            if interval_copies(sigma, direct_sum(ap, bp)):
                return False
    return True


_RULE_TAGS = {
    OpposingAdjacencies: "opposing-adjacencies",
    SumAnnihilator: "sum-annihilator",
    BaseAnnihilator: "base-annihilator",
    AnnihilatorPair: "annihilator-pair",
}


def describe_certificate(cert: ZeroCertificate) -> tuple[str, str]:
    """(rule tag, witness text) for display and audit lines."""
    if isinstance(cert, OpposingAdjacencies):
        return _RULE_TAGS[type(cert)], f"up={cert.up_index} down={cert.down_index}"
    if isinstance(cert, SumAnnihilator):
        return (
            _RULE_TAGS[type(cert)],
            f"window={cert.window[0]}-{cert.window[1]} split={cert.split} sym={cert.symmetry}",
        )
    if isinstance(cert, BaseAnnihilator):
        return (
            _RULE_TAGS[type(cert)],
            f"base={fmt(cert.base)} sym={cert.symmetry} "
            f"window={cert.window[0]}-{cert.window[1]}",
        )
    if isinstance(cert, AnnihilatorPair):
        return (
            _RULE_TAGS[type(cert)],
            f"pair={fmt(cert.pair[0])},{fmt(cert.pair[1])} sym={cert.symmetry} "
            f"window1={cert.window1[0]}-{cert.window1[1]} "
            f"window2={cert.window2[0]}-{cert.window2[1]}",
        )
    raise PermError(f"unknown certificate {cert!r}")


def certificate_line(pi: Perm, cert: ZeroCertificate) -> str:
    """Audit-file serialization: ``<perm>TAB<rule>TAB<witness>``."""
    tag, witness = ("none", "") if cert is None else describe_certificate(cert)
    return f"{fmt(pi)}\t{tag}\t{witness}"
