"""Independent brute-force oracles used to freeze expected values.

These deliberately avoid the library's code paths: containment is checked
by enumerating subsequences, down-sets by enumerating all subsequences, and
Mobius values by the definitional recursion over exact (non-canonicalized)
keys.
"""
import itertools

from permobius.permcore import pattern_of


def brute_contains(sigma, pi):
    if not sigma:
        return True
    return any(
        pattern_of(c) == sigma for c in itertools.combinations(pi, len(sigma))
    )


def brute_down_set(pi):
    out = set()
    for k in range(1, len(pi) + 1):
        for c in itertools.combinations(pi, k):
            out.add(pattern_of(c))
    return out


def brute_mobius(sigma, pi, memo=None):
    if memo is None:
        memo = {}
    key = (sigma, pi)
    if key in memo:
        return memo[key]
    if sigma == pi:
        val = 1
    elif not brute_contains(sigma, pi):
        val = 0
    else:
        interval = [t for t in brute_down_set(pi) if brute_contains(sigma, t)]
        val = -sum(brute_mobius(sigma, t, memo) for t in interval if t != pi)
    memo[key] = val
    return val
