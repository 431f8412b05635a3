"""Young diagrams, multipartitions, and box-level relations.

Diagrams are plain tuples of weakly decreasing positive integers; a
multipartition is a tuple of k diagrams.  Everything here is an immutable
value, so results can be used freely as memoization keys.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

Diagram = tuple[int, ...]
MultiPartition = tuple[Diagram, ...]

EMPTY: Diagram = ()


def as_diagram(rows) -> Diagram:
    """Validate an iterable of rows and return it as a Diagram tuple."""
    lam = tuple(int(r) for r in rows)
    for i, r in enumerate(lam):
        if r < 1:
            raise ValueError(f"rows must be positive, got {lam}")
        if i + 1 < len(lam) and lam[i + 1] > r:
            raise ValueError(f"rows must be weakly decreasing, got {lam}")
    return lam


def as_multipartition(components) -> MultiPartition:
    return tuple(as_diagram(c) for c in components)


def total_size(mp: MultiPartition) -> int:
    return sum(sum(c) for c in mp)


def empty_multipartition(k: int) -> MultiPartition:
    return (EMPTY,) * k


def conjugate(lam: Diagram) -> Diagram:
    """Transpose of the diagram (column lengths)."""
    if not lam:
        return ()
    return tuple(sum(1 for r in lam if r > j) for j in range(lam[0]))


def enumerate_partitions(n: int, max_part: int | None = None) -> list[Diagram]:
    """All partitions of n in reverse-lexicographic order.

    The first entry is (n,), the last (1,)*n; n=0 yields only the empty
    diagram.  With max_part, parts are capped (used by the recursion).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [EMPTY]
    cap = n if max_part is None else min(max_part, n)
    out: list[Diagram] = []
    for first in range(cap, 0, -1):
        for rest in enumerate_partitions(n - first, first):
            out.append((first,) + rest)
    return out


def enumerate_multipartitions(n: int, k: int) -> list[MultiPartition]:
    """All k-tuples of diagrams with total size n, each exactly once.

    Component sizes run over compositions of n with the leading size
    decreasing; inside a composition the components vary rightmost-fastest,
    each in reverse-lexicographic order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if n < 0:
        raise ValueError("n must be non-negative")
    if k == 1:
        return [(lam,) for lam in enumerate_partitions(n)]
    out: list[MultiPartition] = []
    for first in range(n, -1, -1):
        tails = enumerate_multipartitions(n - first, k - 1)
        for lam in enumerate_partitions(first):
            for rest in tails:
                out.append((lam,) + rest)
    return out


def diagram_successors(lam: Diagram) -> list[Diagram]:
    """Diagrams obtained by adding one box, top-most addable corner first."""
    out = []
    for i, r in enumerate(lam):
        if i == 0 or lam[i - 1] > r:
            out.append(lam[:i] + (r + 1,) + lam[i + 1:])
    out.append(lam + (1,))
    return out


def diagram_predecessors(lam: Diagram) -> list[Diagram]:
    """Diagrams obtained by removing one box, top-most corner first."""
    out = []
    for i, r in enumerate(lam):
        if i + 1 == len(lam) or lam[i + 1] < r:
            if r == 1:
                out.append(lam[:i])
            else:
                out.append(lam[:i] + (r - 1,) + lam[i + 1:])
    return out


def covering_pairs(mp: MultiPartition) -> list[tuple[int, MultiPartition]]:
    """All one-box additions as (component index, larger multipartition).

    Component indices are 0-based, consistent with the rest of the library;
    the removal direction is exposed symmetrically by removal_pairs.
    """
    out = []
    for l, lam in enumerate(mp):
        for nxt in diagram_successors(lam):
            out.append((l, mp[:l] + (nxt,) + mp[l + 1:]))
    return out


def removal_pairs(mp: MultiPartition) -> list[tuple[int, MultiPartition]]:
    """All one-box removals as (component index, smaller multipartition)."""
    out = []
    for l, lam in enumerate(mp):
        for prev in diagram_predecessors(lam):
            out.append((l, mp[:l] + (prev,) + mp[l + 1:]))
    return out


def new_box(mu: Diagram, lam: Diagram) -> tuple[int, int] | None:
    """The 1-based (row, col) of the single box of lam missing from mu.

    Returns None when mu does not grow into lam by adding exactly one box.
    """
    if sum(lam) != sum(mu) + 1 or len(lam) < len(mu):
        return None
    spot = None
    for i in range(len(lam)):
        m = mu[i] if i < len(mu) else 0
        if lam[i] == m + 1:
            if spot is not None:
                return None
            spot = (i + 1, lam[i])
        elif lam[i] != m:
            return None
    return spot


def contains(mu: Diagram, lam: Diagram) -> bool:
    """Whether the diagram mu fits inside lam row by row."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def mp_contains(small: MultiPartition, big: MultiPartition) -> bool:
    if len(small) != len(big):
        return False
    return all(contains(m, l) for m, l in zip(small, big))


def row_multiplicities(lam: Diagram) -> dict[int, int]:
    """Map row length j to the count r_j of rows of that length."""
    return dict(Counter(lam))


def theta_content_split(lam: Diagram, theta) -> tuple[Diagram, Diagram]:
    """Split the boxes of lam by the sign of the content (j-1) - theta*(i-1).

    Returns (a, b): a holds the row lengths of the sub-diagram of boxes with
    strictly positive content, b the column lengths of the boxes with content
    <= 0.  Always sum(a) + sum(b) == |lam|.
    """
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    a = []
    for i, r in enumerate(lam, start=1):
        cnt = sum(1 for j in range(1, r + 1) if (j - 1) > theta * (i - 1))
        if cnt:
            a.append(cnt)
    b = []
    for j, c in enumerate(conjugate(lam), start=1):
        cnt = sum(1 for i in range(1, c + 1) if (j - 1) <= theta * (i - 1))
        if cnt:
            b.append(cnt)
    return tuple(a), tuple(b)


def format_diagram(lam: Diagram) -> str:
    return "-" if not lam else ",".join(str(r) for r in lam)


def parse_diagram(text: str) -> Diagram:
    text = text.strip()
    if text in ("", "-"):
        return EMPTY
    return as_diagram(int(p) for p in text.split(","))


def format_multipartition(mp: MultiPartition) -> str:
    """Text form with components separated by '|', empty component '-'."""
    return "|".join(format_diagram(c) for c in mp)


def parse_multipartition(text: str, k: int | None = None) -> MultiPartition:
    mp = tuple(parse_diagram(part) for part in text.split("|"))
    if k is not None and len(mp) != k:
        raise ValueError(f"expected {k} components, got {len(mp)}")
    return mp
