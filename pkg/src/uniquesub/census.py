"""Stream every unlabelled graph on n vertices exactly once.

Each level is built by augmenting every (n-1)-vertex class representative
with one new vertex over all 2^(n-1) attachment neighbourhoods and keying
the results by canonical form, which both deduplicates and fixes the
deterministic output order (lexicographic by canon_bytes).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

from .canon import canonicalize, decode_canon_bytes
from .errors import DomainError
from .graphs import Graph

MAX_ENUMERATION_N = 10


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise DomainError(f"enumeration supports 1..{MAX_ENUMERATION_N} vertices, got {n}")


@lru_cache(maxsize=None)
def _census(n: int) -> tuple[tuple[bytes, int], ...]:
    """Sorted (canon_bytes, aut_order) pairs, one per isomorphism class."""
    if n == 1:
        g = Graph(1, (0,))
        form = canonicalize(g)
        return ((form.canon_bytes, form.aut_order),)
    seen: dict[bytes, int] = {}
    for parent_bytes, _ in _census(n - 1):
        parent = decode_canon_bytes(parent_bytes)
        base = list(parent.adj) + [0]
        for mask in range(1 << (n - 1)):
            adj = base[:]
            adj[n - 1] = mask
            rest = mask
            while rest:
                low = rest & -rest
                adj[low.bit_length() - 1] |= 1 << (n - 1)
                rest ^= low
            form = canonicalize(Graph(n, tuple(adj)))
            seen.setdefault(form.canon_bytes, form.aut_order)
    return tuple(sorted(seen.items()))


def census_entries(n: int) -> tuple[tuple[bytes, int], ...]:
    """(canon_bytes, aut_order) per class, sorted by canonical encoding."""
    _check_n(n)
    return _census(n)


def enumerate_unlabelled(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class, in canonical-bytes order."""
    _check_n(n)
    for canon_bytes, _ in _census(n):
        yield decode_canon_bytes(canon_bytes)


def unlabelled_count(n: int) -> int:
    _check_n(n)
    return len(_census(n))


def aut_orders(n: int) -> tuple[int, ...]:
    """Automorphism-group orders aligned with the enumeration order."""
    _check_n(n)
    return tuple(order for _, order in _census(n))


@dataclass(frozen=True)
class PolyaReport:
    n: int
    unlabelled_count: int
    polya_estimate: Fraction
    ratio: Fraction


def polya_report(n: int) -> PolyaReport:
    _check_n(n)
    count = unlabelled_count(n)
    estimate = Fraction(2 ** (n * (n - 1) // 2), factorial(n))
    return PolyaReport(n=n, unlabelled_count=count, polya_estimate=estimate,
                       ratio=Fraction(count) / estimate)


def nontrivial_aut_fraction(n: int) -> Fraction:
    _check_n(n)
    orders = aut_orders(n)
    return Fraction(sum(1 for a in orders if a >= 2), len(orders))
