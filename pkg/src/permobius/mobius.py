"""Exact Mobius-function evaluation on permutation intervals and finite posets.

The permutation evaluator materializes the interval once, orders it by
length and fills values bottom-up.  An optional cache memoizes values; for
principal intervals (lower bound 1) keys are canonicalized under the 8
symmetries, which is sound because the principal Mobius function is
symmetry-invariant.  Optional pruning treats rule-certified zeros in the
interior of a principal interval as 0 without recursing; pruned and
unpruned results are identical because every rule is sound.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Optional

from .permcore import (
    DOWN_SET_CAP,
    Embedding,
    Perm,
    PermError,
    canonical_symmetry_form,
    contains,
    deletions,
    down_set,
)
from .zerorules import certify_zero

P1: Perm = (1,)


class MobiusCache:
    """Memo table from (lower, upper) keys to Mobius values.

    Keys for lower bound 1 are stored under the symmetry-canonical form of
    the upper bound.  Concurrent use is safe under last-writer-wins because
    all writers compute identical values; per-worker caches merged after a
    parallel run are equivalent.
    """

    def __init__(self) -> None:
        self._data: dict[tuple[bytes, bytes], int] = {}
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _key(sigma: Perm, pi: Perm) -> tuple[bytes, bytes]:
        if sigma == P1:
            return (b"\x01", bytes(canonical_symmetry_form(pi)))
        return (bytes(sigma), bytes(pi))

    def get(self, sigma: Perm, pi: Perm) -> Optional[int]:
        v = self._data.get(self._key(sigma, pi))
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, sigma: Perm, pi: Perm, value: int) -> None:
        self._data[self._key(sigma, pi)] = value

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        self._data.clear()
        self.hits = 0
        self.misses = 0

    def merge(self, other: "MobiusCache") -> None:
        self._data.update(other._data)

    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "entries": len(self._data)}


def principal_mobius(
    pi: Perm,
    pruned: bool = True,
    cache: Optional[MobiusCache] = None,
    cap: int = DOWN_SET_CAP,
) -> int:
    """mu(1, pi), the principal Mobius function of a nonempty permutation."""
    if not pi:
        raise PermError("principal Mobius of the empty permutation is not defined")
    if cache is None:
        cache = MobiusCache()

    def rec(p: Perm) -> int:
        if len(p) == 1:
            return 1
        hit = cache.get(P1, p)
        if hit is not None:
            return hit
        total = 0
        for tau in down_set(p, cap):
            if tau == p:
                continue
            if pruned and len(tau) >= 3 and certify_zero(tau) is not None:
                continue
            total += rec(tau)
        val = -total
        cache.put(P1, p, val)
        return val

    return rec(pi)


def _strict_below_map(pi: Perm, cap: int) -> dict[Perm, set[Perm]]:
    """For each tau <= pi, the set of patterns strictly below tau.

    Built from the single-point-deletion closure of pi, lengths ascending.
    """
    elements = down_set(pi, cap)
    below: dict[Perm, set[Perm]] = {}
    for tau in sorted(elements, key=len):
        if len(tau) == 1:
            below[tau] = set()
            continue
        acc: set[Perm] = set()
        for d in deletions(tau):
            acc.add(d)
            acc |= below[d]
        below[tau] = acc
    return below


def mobius(
    sigma: Perm,
    pi: Perm,
    cache: Optional[MobiusCache] = None,
    pruned: bool = False,
    cap: int = DOWN_SET_CAP,
) -> int:
    """mu(sigma, pi) by the definitional recursion, evaluated bottom-up.

    Pruning applies only to the principal case sigma = 1, where the
    certificate rules are stated.
    """
    if not sigma:
        raise PermError("lower bound must be nonempty")
    if sigma == pi:
        return 1
    if not contains(sigma, pi):
        return 0
    if sigma == P1:
        return principal_mobius(pi, pruned=pruned, cache=cache, cap=cap)
    if cache is not None:
        hit = cache.get(sigma, pi)
        if hit is not None:
            return hit
    below = _strict_below_map(pi, cap)
    in_interval = {
        tau for tau in below if tau == sigma or contains(sigma, tau)
    }
    mu: dict[Perm, int] = {sigma: 1}
    for tau in sorted(in_interval, key=len):
        if tau == sigma:
            continue
        mu[tau] = -sum(mu[lam] for lam in below[tau] if lam in mu)
        if cache is not None:
            cache.put(sigma, tau, mu[tau])
    return mu[pi]


def i_switch(e: Embedding, i: int) -> Embedding:
    """Toggle membership of position i in the embedding's image.

    A parity-reversing involution; toggling the last remaining position is
    an error.
    """
    n = len(e.target)
    if not 1 <= i <= n:
        raise PermError(f"switch position {i} out of range 1..{n}")
    if i in e.image:
        if len(e.image) == 1:
            raise PermError("i-switch would empty the image")
        image = tuple(p for p in e.image if p != i)
    else:
        image = tuple(sorted(e.image + (i,)))
    return Embedding(e.target, image)


class FinitePosetView:
    """A finite poset given by elements plus either a cover list or a
    strict-order predicate.  Used as a Mobius oracle independent of
    permutation structure."""

    def __init__(
        self,
        elements: Iterable[Hashable],
        covers: Optional[Iterable[tuple[Hashable, Hashable]]] = None,
        less: Optional[Callable[[Hashable, Hashable], bool]] = None,
        validate: bool = True,
    ) -> None:
        self.elements = tuple(elements)
        idx = set(self.elements)
        if len(idx) != len(self.elements):
            raise PermError("poset elements must be distinct")
        self._below: dict[Hashable, set[Hashable]] = {e: set() for e in self.elements}
        if (covers is None) == (less is None):
            raise PermError("provide exactly one of covers or less")
        if covers is not None:
            cover_list = list(covers)
            for lo, hi in cover_list:
                if lo not in idx or hi not in idx:
                    raise PermError(f"cover ({lo!r}, {hi!r}) uses unknown element")
            changed = True
            for lo, hi in cover_list:
                self._below[hi].add(lo)
            # transitive closure over the cover DAG
            while changed:
                changed = False
                for e in self.elements:
                    extra = set()
                    for b in self._below[e]:
                        extra |= self._below[b]
                    if not extra <= self._below[e]:
                        self._below[e] |= extra
                        changed = True
            if any(e in self._below[e] for e in self.elements):
                raise PermError("cover relation contains a cycle")
        else:
            for a in self.elements:
                for b in self.elements:
                    if a != b and less(a, b):
                        self._below[b].add(a)
            if validate and len(self.elements) <= 1000:
                self._validate()

    def _validate(self) -> None:
        for a in self.elements:
            if a in self._below[a]:
                raise PermError(f"order not irreflexive at {a!r}")
            for b in self._below[a]:
                if a in self._below[b]:
                    raise PermError(f"order not antisymmetric on {a!r}, {b!r}")
                if not self._below[b] <= self._below[a]:
                    raise PermError(f"order not transitive below {a!r}")

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return a == b or a in self._below[b]

    def strictly_below(self, b: Hashable) -> set[Hashable]:
        return set(self._below[b])

    def interval(self, x: Hashable, y: Hashable) -> list[Hashable]:
        """Elements of [x, y], ordered by number of interval elements below."""
        if not self.leq(x, y):
            return []
        members = [z for z in self.elements if self.leq(x, z) and self.leq(z, y)]
        return sorted(
            members, key=lambda z: (len(self._below[z]), self.elements.index(z))
        )

    def delete(self, y: Hashable) -> "FinitePosetView":
        remaining = [e for e in self.elements if e != y]
        view = FinitePosetView(remaining, covers=[], validate=False)
        for e in remaining:
            view._below[e] = self._below[e] - {y}
        return view


def mobius_poset(P: FinitePosetView, x: Hashable, y: Hashable) -> int:
    """Mobius value of [x, y] in a finite poset by the generic recursion."""
    if not P.leq(x, y):
        return 0
    mu: dict[Hashable, int] = {}
    for z in P.interval(x, y):
        if z == x:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[v] for v in P.strictly_below(z) if v in mu)
    return mu[y]


def interval_as_poset(sigma: Perm, pi: Perm, cap: int = DOWN_SET_CAP) -> FinitePosetView:
    """The interval [sigma, pi] of the pattern poset as a FinitePosetView."""
    if not contains(sigma, pi):
        return FinitePosetView([], covers=[])
    below = _strict_below_map(pi, cap)
    members = [tau for tau in below if tau == sigma or contains(sigma, tau)]
    members.sort(key=lambda t: (len(t), t))
    view = FinitePosetView(members, covers=[], validate=False)
    member_set = set(members)
    for tau in members:
        view._below[tau] = below[tau] & member_set
    return view
