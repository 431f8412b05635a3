"""Exact symmetric-function engine.

Expressions live in one of three bases and are stored sparsely as maps from
an index partition to a rational coefficient:

  "m"   monomial symmetric functions, key (2,1) means m_{(2,1)}
  "p"   power sums, key (2,1) means p_2 * p_1
  "p*"  shifted power sums, key (2,1) means p*_2 * p*_1

Basis changes are exact.  The monomial-to-power-sum direction is a linear
solve per degree against the expansion p_rho = sum_lam c m_lam, which is
itself produced by iterated application of the rule

    p_r * m_mu = sum over ways to add r to one part of mu (or adjoin a new
    part r) of r_j(lam) * m_lam,   j = size of the grown part of lam.

Jack polynomials P_lam(.; theta) are built by Gram-Schmidt in the power-sum
basis, processing partitions of each degree upward in dominance order, with
the deformed inner product <p_rho, p_sigma> = delta * z_rho * theta^(-l(rho)).
The resulting family is monic and dominance-triangular on the monomial basis;
the convention is pinned operationally by pieri_check, which re-expands
p_1 * P_mu in the Jack basis and compares every coefficient with the edge
multiplicity function of the branching graph.  At theta = 0 the family
degenerates to the monomial basis and is returned as such directly.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from .errors import VerificationError
from .partitions import (
    Diagram,
    conjugate,
    diagram_successors,
    enumerate_partitions,
    row_multiplicities,
)

# exact expansions refuse degrees above this; raise it for bigger desks
DEGREE_LIMIT = 10

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SymFuncExpr:
    basis: str
    terms: dict[Diagram, Fraction]

    def __post_init__(self):
        if self.basis not in ("m", "p", "p*"):
            raise ValueError(f"unknown basis {self.basis!r}")

    @property
    def degree(self) -> int:
        return max((sum(rho) for rho in self.terms), default=0)

    def coefficient(self, key: Diagram) -> Fraction:
        return self.terms.get(key, _ZERO)


def make_expr(basis: str, terms: dict) -> SymFuncExpr:
    clean = {tuple(k): Fraction(v) for k, v in terms.items() if v}
    return SymFuncExpr(basis, clean)


def _check_degree(n: int) -> None:
    if n > DEGREE_LIMIT:
        raise ValueError(
            f"degree {n} exceeds DEGREE_LIMIT = {DEGREE_LIMIT}; "
            "raise mpk.symfunc.DEGREE_LIMIT to go further")


def _p_times_m(r: int, mu: Diagram) -> list[tuple[Diagram, int]]:
    """Expansion of p_r * m_mu: candidate partitions with multiplicities."""
    moves = []
    lam = tuple(sorted(mu + (r,), reverse=True))
    moves.append((lam, lam.count(r)))
    for v in sorted(set(mu)):
        grown = list(mu)
        grown.remove(v)
        lam = tuple(sorted(grown + [v + r], reverse=True))
        moves.append((lam, lam.count(v + r)))
    return moves


@cache
def powersum_to_monomial(rho: Diagram) -> dict[Diagram, Fraction]:
    """The product p_rho expanded over the monomial basis, exactly."""
    if not rho:
        return {(): _ONE}
    out: dict[Diagram, Fraction] = {}
    for mu, c in powersum_to_monomial(rho[1:]).items():
        for lam, mult in _p_times_m(rho[0], mu):
            if mult:
                out[lam] = out.get(lam, _ZERO) + c * mult
    return {k: v for k, v in out.items() if v}


def _solve_exact(matrix: list[list[Fraction]],
                 rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve matrix @ X = rhs by Gauss-Jordan over Fractions."""
    n = len(matrix)
    a = [row[:] + r[:] for row, r in zip(matrix, rhs)]
    width = len(a[0])
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise VerificationError("singular basis-change matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:width] for row in a]


@cache
def _monomial_to_powersum_table(d: int) -> dict[Diagram, dict[Diagram, Fraction]]:
    """For each m_mu with |mu| = d, its exact power-sum expansion."""
    parts = enumerate_partitions(d)
    matrix = [[powersum_to_monomial(sigma).get(lam, _ZERO) for sigma in parts]
              for lam in parts]
    identity = [[_ONE if i == j else _ZERO for j in range(len(parts))]
                for i in range(len(parts))]
    inv = _solve_exact(matrix, identity)
    # matrix maps p-coordinates to m-coordinates, so columns of the inverse
    # hold the p-expansions: m_lam = sum_sigma inv[sigma][lam] p_sigma
    return {lam: {sigma: inv[j][i] for j, sigma in enumerate(parts) if inv[j][i]}
            for i, lam in enumerate(parts)}


def monomial_to_powersum(e: SymFuncExpr) -> SymFuncExpr:
    if e.basis != "m":
        raise ValueError(f"expected monomial basis, got {e.basis!r}")
    out: dict[Diagram, Fraction] = {}
    for mu, c in e.terms.items():
        _check_degree(sum(mu))
        for sigma, w in _monomial_to_powersum_table(sum(mu))[mu].items():
            out[sigma] = out.get(sigma, _ZERO) + c * w
    return make_expr("p", out)


def powersum_to_monomial_expr(e: SymFuncExpr) -> SymFuncExpr:
    if e.basis != "p":
        raise ValueError(f"expected power-sum basis, got {e.basis!r}")
    out: dict[Diagram, Fraction] = {}
    for rho, c in e.terms.items():
        for lam, w in powersum_to_monomial(rho).items():
            out[lam] = out.get(lam, _ZERO) + c * w
    return make_expr("m", out)


def z_factor(rho: Diagram) -> int:
    """z_rho = prod over part sizes j of j^r_j * r_j!."""
    out = 1
    for j, r in row_multiplicities(rho).items():
        out *= j ** r * factorial(r)
    return out


def _jack_inner(u: dict, v: dict, theta: Fraction) -> Fraction:
    s = _ZERO
    for rho, c in u.items():
        d = v.get(rho)
        if d:
            s += c * d * z_factor(rho) * theta ** (-len(rho))
    return s


_jack_lock = threading.Lock()
_jack_memo: dict[tuple[int, Fraction], dict[Diagram, dict[Diagram, Fraction]]] = {}


def _jack_family(n: int, theta: Fraction) -> dict[Diagram, dict[Diagram, Fraction]]:
    """Power-sum expansions of all P_lam with |lam| = n, memoized.

    The memo is read without the lock (atomic dict read); the lock makes the
    population single-writer so each key is computed once.
    """
    key = (n, theta)
    hit = _jack_memo.get(key)
    if hit is not None:
        return hit
    with _jack_lock:
        hit = _jack_memo.get(key)
        if hit is not None:
            return hit
        _check_degree(n)
        if theta == 0:
            fam = {lam: dict(vec)
                   for lam, vec in _monomial_to_powersum_table(n).items()}
        else:
            fam = {}
            # ascending dominance: reverse-lex enumeration reversed
            for lam in reversed(enumerate_partitions(n)):
                vec = dict(_monomial_to_powersum_table(n)[lam])
                for mu, prev in fam.items():
                    coef = _jack_inner(vec, prev, theta) / \
                        _jack_inner(prev, prev, theta)
                    if coef:
                        for rho, c in prev.items():
                            vec[rho] = vec.get(rho, _ZERO) - coef * c
                fam[lam] = {rho: c for rho, c in vec.items() if c}
        _jack_memo[key] = fam
        return fam


def jack_p(lam: Diagram, theta) -> SymFuncExpr:
    """The monic Jack polynomial P_lam(.; theta) over the monomial basis."""
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    if theta == 0:
        return make_expr("m", {lam: _ONE})
    vec = _jack_family(sum(lam), theta)[lam]
    return powersum_to_monomial_expr(make_expr("p", vec))


def jack_p_powersum(lam: Diagram, theta) -> SymFuncExpr:
    """P_lam(.; theta) over the power-sum basis."""
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    return make_expr("p", dict(_jack_family(sum(lam), theta)[lam]))


def pieri_check(mu: Diagram, theta) -> dict[Diagram, Fraction]:
    """Expand p_1 * P_mu in the Jack basis and verify every coefficient.

    The coefficients must match the branching-graph edge multiplicities: the
    multiplicity of the one-box extension for covers, zero for everything
    else.  Raises VerificationError naming (mu, lam, theta) on any mismatch.
    """
    from .branching import chi_theta  # import cycle: branching uses jack_p

    theta = Fraction(theta)
    n = sum(mu)
    _check_degree(n + 1)
    if theta == 0:
        prod = {}
        for lam, mult in _p_times_m(1, mu):
            if mult:
                prod[lam] = prod.get(lam, _ZERO) + mult
        coeffs = prod
    else:
        shifted = {tuple(sorted(rho + (1,), reverse=True)): c
                   for rho, c in _jack_family(n, theta)[mu].items()}
        residue = powersum_to_monomial_expr(make_expr("p", shifted)).terms
        residue = dict(residue)
        coeffs = {}
        fam = _jack_family(n + 1, theta)
        for lam in enumerate_partitions(n + 1):  # dominance descending
            c = residue.pop(lam, _ZERO)
            if not c:
                continue
            coeffs[lam] = c
            for m_key, m_val in powersum_to_monomial_expr(
                    make_expr("p", fam[lam])).terms.items():
                if m_key == lam:
                    continue
                left = residue.get(m_key, _ZERO) - c * m_val
                if left:
                    residue[m_key] = left
                else:
                    residue.pop(m_key, None)
        if any(residue.values()):
            raise VerificationError(
                f"p_1 * P_{mu} did not resolve in the Jack basis: {residue}")
    covers = set(diagram_successors(mu))
    for lam in enumerate_partitions(n + 1):
        expected = chi_theta(mu, lam, theta) if lam in covers else _ZERO
        got = coeffs.get(lam, _ZERO)
        if got != expected:
            raise VerificationError(
                f"Pieri mismatch at mu={mu}, lam={lam}, theta={theta}: "
                f"coefficient {got} vs multiplicity {expected}")
    return coeffs


def hook_product(lam: Diagram, theta) -> Fraction:
    """prod over boxes (i,j) of (lam_i - j + theta*(lam'_j - i) + 1)."""
    theta = Fraction(theta)
    conj = conjugate(lam)
    out = _ONE
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            out *= r - j + theta * (conj[j - 1] - i) + 1
    return out


def shifted_powersum(r: int, lam: Diagram, theta, N: int | None = None) -> Fraction:
    """p*_r on lam padded with zeros to length N; stable in N >= l(lam)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    theta = Fraction(theta)
    if N is None:
        N = len(lam)
    if N < len(lam):
        raise ValueError(f"N = {N} is smaller than l(lam) = {len(lam)}")
    out = _ZERO
    for i in range(1, N + 1):
        x = lam[i - 1] if i <= len(lam) else 0
        out += (x - theta * i) ** r - (-theta * i) ** r
    return out


def eval_shifted_powersum_expr(e: SymFuncExpr, lam: Diagram, theta) -> Fraction:
    """Evaluate a p*-basis expression on a diagram."""
    if e.basis != "p*":
        raise ValueError(f"expected p* basis, got {e.basis!r}")
    theta = Fraction(theta)
    powers: dict[int, Fraction] = {}
    out = _ZERO
    for rho, c in e.terms.items():
        term = c
        for r in rho:
            if r not in powers:
                powers[r] = shifted_powersum(r, lam, theta)
            term *= powers[r]
        out += term
    return out


def top_degree_map(e: SymFuncExpr) -> SymFuncExpr:
    """Keep the top-degree monomials of a p*-expression, renaming p*_r -> p_r."""
    if e.basis != "p*":
        raise ValueError(f"expected p* basis, got {e.basis!r}")
    if not e.terms:
        return make_expr("p", {})
    top = max(sum(rho) for rho in e.terms)
    return make_expr("p", {rho: c for rho, c in e.terms.items()
                           if sum(rho) == top})


def eval_powersum_numeric(e: SymFuncExpr, atoms) -> float:
    """Evaluate a power-sum expression at a finite list of non-negative atoms."""
    if e.basis != "p":
        raise ValueError(f"expected power-sum basis, got {e.basis!r}")
    xs = [float(a) for a in atoms]
    powers: dict[int, float] = {}
    out = 0.0
    for rho, c in e.terms.items():
        term = float(c)
        for r in rho:
            if r not in powers:
                powers[r] = sum(x ** r for x in xs)
            term *= powers[r]
        out += term
    return out
