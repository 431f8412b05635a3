"""Finite group data: Cayley table, conjugacy classes, dimensions, characters.

A group is ingested from a JSON document (or one of the builtins) and fully
validated on load: group axioms, conjugation-closed classes with the identity
class first, and the dimension sum.  Characters are optional complex floats
used only by the orthogonality validator; every exact computation downstream
needs nothing beyond the integers |G|, |c_i| and d_j.
"""
from __future__ import annotations

import cmath
import json
import warnings
from dataclasses import dataclass
from fractions import Fraction


class GroupValidationError(ValueError):
    """A group document violates the schema or the group axioms."""


@dataclass(frozen=True)
class FiniteGroupData:
    name: str
    elements: tuple[str, ...]
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    chars: tuple[tuple[complex, ...], ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def k(self) -> int:
        return len(self.classes)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def zeta(self, l: int) -> Fraction:
        """|G| / |c_l| for the 0-based class index l."""
        return Fraction(self.order, len(self.classes[l]))


def class_of(g: int, group: FiniteGroupData) -> int:
    """The 0-based index of the conjugacy class containing element g."""
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range")
    for i, cls in enumerate(group.classes):
        if g in cls:
            return i
    raise AssertionError("classes do not cover the group")  # load() forbids this


def load_group(document: dict) -> FiniteGroupData:
    """Validate a parsed group document and return FiniteGroupData.

    Raises GroupValidationError with the failing witness on any violation.
    """
    for key in ("name", "elements", "cayley", "classes", "dims"):
        if key not in document:
            raise GroupValidationError(f"missing key {key!r}")
    name = str(document["name"])
    elements = tuple(str(e) for e in document["elements"])
    order = len(elements)
    if order == 0:
        raise GroupValidationError("empty element list")
    if len(set(elements)) != order:
        raise GroupValidationError("duplicate element labels")

    cayley = document["cayley"]
    if len(cayley) != order or any(len(row) != order for row in cayley):
        raise GroupValidationError(f"cayley table must be {order}x{order}")
    table = tuple(tuple(int(v) for v in row) for row in cayley)
    for a, row in enumerate(table):
        for b, v in enumerate(row):
            if not 0 <= v < order:
                raise GroupValidationError(f"cayley[{a}][{b}] = {v} out of range")

    identity = None
    for e in range(order):
        if all(table[e][x] == x and table[x][e] == x for x in range(order)):
            identity = e
            break
    if identity is None:
        raise GroupValidationError("no identity element in cayley table")
    for a in range(order):
        for b in range(order):
            for c in range(order):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise GroupValidationError(
                        f"associativity fails at ({a},{b},{c})")
    inverses = [None] * order
    for a in range(order):
        for b in range(order):
            if table[a][b] == identity and table[b][a] == identity:
                inverses[a] = b
                break
        if inverses[a] is None:
            raise GroupValidationError(f"element {a} has no inverse")

    classes = tuple(tuple(int(g) for g in cls) for cls in document["classes"])
    seen = [g for cls in classes for g in cls]
    if sorted(seen) != list(range(order)):
        raise GroupValidationError("classes do not partition the elements")
    if classes[0] != (identity,):
        raise GroupValidationError(
            f"first class must be exactly the identity, got {classes[0]}")
    for i, cls in enumerate(classes):
        members = set(cls)
        for g in cls:
            for h in range(order):
                conj = table[table[h][g]][inverses[h]]
                if conj not in members:
                    raise GroupValidationError(
                        f"class {i} not closed: {h}*{g}*{h}^-1 = {conj}")

    dims = tuple(int(d) for d in document["dims"])
    if len(dims) != len(classes):
        raise GroupValidationError(
            f"{len(dims)} dims for {len(classes)} classes")
    if any(d < 1 for d in dims):
        raise GroupValidationError("dims must be positive")
    if sum(d * d for d in dims) != order:
        raise GroupValidationError(
            f"sum of squared dims {sum(d*d for d in dims)} != |G| = {order}")

    for cls in classes:
        if order % len(cls) != 0:
            warnings.warn(
                f"class size {len(cls)} does not divide |G| = {order}; "
                "this cannot happen for a genuine conjugacy class")

    chars = None
    if document.get("chars") is not None:
        raw = document["chars"]
        k = len(classes)
        if len(raw) != k or any(len(row) != k for row in raw):
            raise GroupValidationError(f"chars must be {k}x{k}")
        chars = tuple(
            tuple(complex(float(v[0]), float(v[1])) for v in row) for row in raw)

    return FiniteGroupData(name=name, elements=elements, cayley=table,
                           identity=identity, inverses=tuple(inverses),
                           classes=classes, dims=dims, chars=chars)


def load_group_file(path: str) -> FiniteGroupData:
    with open(path, encoding="utf-8") as fh:
        return load_group(json.load(fh))


@dataclass(frozen=True)
class OrthogonalityReport:
    ok: bool
    max_deviation: float
    tol: float

    def __str__(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        return (f"character orthogonality {verdict}: "
                f"max deviation {self.max_deviation:.3e} (tol {self.tol:g})")


def check_orthogonality(group: FiniteGroupData, tol: float = 1e-10) -> OrthogonalityReport:
    """Check the second orthogonality relation of the character table.

    For every pair of classes (l, i) the column sum
    (|c_l|/|G|) * sum_j gamma^j(c_l) * conj(gamma^j(c_i)) must equal
    delta(l, i).  Returns the maximal absolute deviation over all pairs.
    """
    if group.chars is None:
        raise ValueError("group has no character table")
    k = group.k
    dev = 0.0
    for l in range(k):
        weight = len(group.classes[l]) / group.order
        for i in range(k):
            s = sum(group.chars[j][l] * group.chars[j][i].conjugate()
                    for j in range(k))
            target = 1.0 if l == i else 0.0
            dev = max(dev, abs(weight * s - target))
    return OrthogonalityReport(ok=dev <= tol, max_deviation=dev, tol=tol)


def _perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(x) = p(q(x))
    return tuple(p[q[i]] for i in range(len(p)))


def _s3_document() -> dict:
    # one-line images, 0-based, in the label order below
    perms = {
        "e": (0, 1, 2),
        "(12)": (1, 0, 2),
        "(13)": (2, 1, 0),
        "(23)": (0, 2, 1),
        "(123)": (1, 2, 0),
        "(132)": (2, 0, 1),
    }
    labels = list(perms)
    index = {perms[lbl]: i for i, lbl in enumerate(labels)}
    table = [[index[_perm_compose(perms[a], perms[b])] for b in labels]
             for a in labels]
    return {
        "name": "S3",
        "elements": labels,
        "cayley": table,
        "classes": [[0], [1, 2, 3], [4, 5]],
        "dims": [1, 1, 2],
        "chars": [
            [[1, 0], [1, 0], [1, 0]],
            [[1, 0], [-1, 0], [1, 0]],
            [[2, 0], [0, 0], [-1, 0]],
        ],
    }


def _cyclic_document(n: int) -> dict:
    if n == 2:
        powers = [complex(1), complex(-1)]
    else:
        powers = [cmath.exp(2j * cmath.pi * m / n) for m in range(n)]
    return {
        "name": f"Z{n}",
        "elements": ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)],
        "cayley": [[(a + b) % n for b in range(n)] for a in range(n)],
        "classes": [[i] for i in range(n)],
        "dims": [1] * n,
        "chars": [[[powers[(j * i) % n].real, powers[(j * i) % n].imag]
                   for i in range(n)] for j in range(n)],
    }


_BUILTIN_DOCUMENTS = {
    "trivial": {
        "name": "trivial",
        "elements": ["e"],
        "cayley": [[0]],
        "classes": [[0]],
        "dims": [1],
        "chars": [[[1, 0]]],
    },
    "Z2": _cyclic_document(2),
    "Z3": _cyclic_document(3),
    "S3": _s3_document(),
}


def builtin_group(name: str) -> FiniteGroupData:
    if name not in _BUILTIN_DOCUMENTS:
        raise ValueError(
            f"unknown builtin {name!r}; have {sorted(_BUILTIN_DOCUMENTS)}")
    return load_group(_BUILTIN_DOCUMENTS[name])


def resolve_group(name_or_path: str) -> FiniteGroupData:
    """Resolve a --group argument: a builtin name or a path to a JSON file."""
    if name_or_path in _BUILTIN_DOCUMENTS:
        return builtin_group(name_or_path)
    return load_group_file(name_or_path)


def element_index(group: FiniteGroupData, token: str) -> int:
    """Find an element by label; cycle notation is canonicalized first.

    Labels like "(1)(23)" match "(23)": singleton cycles are dropped and each
    cycle is rotated to start at its smallest entry.
    """
    token = token.strip()
    if token in group.elements:
        return group.elements.index(token)
    canon = _canonical_cycles(token)
    if canon is not None and canon in group.elements:
        return group.elements.index(canon)
    raise ValueError(f"unknown element {token!r} of group {group.name}")


def _canonical_cycles(token: str) -> str | None:
    if not token or token[0] != "(" or token[-1] != ")":
        return None
    try:
        cycles = [[int(ch) for ch in part] for part in
                  token.strip("()").split(")(")]
    except ValueError:
        return None
    kept = []
    for cyc in cycles:
        if len(cyc) < 2:
            continue
        small = cyc.index(min(cyc))
        kept.append(cyc[small:] + cyc[:small])
    if not kept:
        return "e"
    kept.sort(key=lambda c: c[0])
    return "".join("(" + "".join(map(str, c)) + ")" for c in kept)
