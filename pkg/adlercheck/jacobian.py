"""The Adler-Klein pencil, its Jacobian ring and the group action on R_3.

f_lam = x1^2 x6 + x6^2 x2 + x2^2 x7 + x7^2 x4 + x4^2 x5 + x5^2 x8 + x8^2 x9
        + x9^2 x3 + x3^2 x1 + lam (x1 x7 x8 + x2 x3 x5 + x4 x6 x9)

f_-2 is the PSL2(F19)-invariant cubic and f_0 the Klein cubic. A matrix g
acts on polynomials by substitution, (g.f)(x) = f(g x), so tau multiplies a
monomial by xi to the power sum_j e_j j^2 and the partials span the dual of
the linear forms.

Graded pieces R_d = S_d / I_d are measured by exact ranks of the multiplication
matrix S_{d-2} x {partials} -> S_d. The degree-10 smoothness certificate runs
modulo a prime with sparse elimination, one tau-weight block at a time.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence, Union

from sympy import isprime

from .characters import Character, decompose, sym3, table_for, tensor
from .cyclo import Cyclotomic, Rational, as_cyclotomic, to_rational
from .linalg import SparseMatrixFp, inverse, rank, sparse_rank_fp
from .psl2 import ProjectiveRep, enumerate_group, trace_character

logger = logging.getLogger("adlercheck")

NVARS = 9
Scalar = Union[int, Fraction, Cyclotomic]
Exponents = tuple[int, ...]

MAIN_TERMS = ((1, 6), (6, 2), (2, 7), (7, 4), (4, 5), (5, 8), (8, 9), (9, 3), (3, 1))
LAMBDA_TERMS = ((1, 7, 8), (2, 3, 5), (4, 6, 9))


class JacobianError(ValueError):
    """Raised for non-invariant input, a degenerate Jacobian ideal or a bad prime."""


# ── Polynomials ─────────────────────────────────────────────────────


class Poly9:
    """Sparse polynomial in x1..x9: exponent tuple -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Exponents, Scalar] | None = None):
        self.terms: dict[Exponents, Scalar] = {}
        for exps, coeff in (terms or {}).items():
            self.add_term(exps, coeff)

    def add_term(self, exps: Exponents, coeff: Scalar) -> None:
        if not coeff:
            return
        value = self.terms.get(exps, 0) + coeff
        if value:
            self.terms[exps] = value
        else:
            self.terms.pop(exps, None)

    @classmethod
    def monomial(cls, variables: Iterable[int], coeff: Scalar = 1) -> Poly9:
        """Monomial from 1-based variable indices, repeated for powers."""
        exps = [0] * NVARS
        for v in variables:
            exps[v - 1] += 1
        return cls({tuple(exps): coeff})

    def __add__(self, other: Poly9) -> Poly9:
        result = Poly9(self.terms)
        for exps, coeff in other.terms.items():
            result.add_term(exps, coeff)
        return result

    def __neg__(self) -> Poly9:
        return Poly9({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly9) -> Poly9:
        return self + (-other)

    def scale(self, c: Scalar) -> Poly9:
        return Poly9({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: Poly9) -> Poly9:
        result = Poly9()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                result.add_term(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly9):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, exps: Exponents) -> Scalar:
        return self.terms.get(exps, 0)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_rational(self) -> bool:
        return all(_as_rational(c) is not None for c in self.terms.values())

    def partial(self, j: int) -> Poly9:
        """Formal derivative in x_j, 1-based."""
        i = j - 1
        result = Poly9()
        for exps, coeff in self.terms.items():
            if exps[i]:
                lowered = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                result.add_term(lowered, coeff * exps[i])
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self.terms.items(), reverse=True):
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e]
            parts.append("*".join([str(coeff)] + factors) if coeff != 1 else "*".join(factors) or "1")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _as_rational(c: Scalar) -> Rational | None:
    r = to_rational(c)
    if r is not None:
        return r
    return c.try_rational()


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Exponents, ...]:
    """Exponent vectors of degree d in 9 variables, descending lexicographic order."""
    if d < 0:
        return ()
    out = set()
    for combo in itertools.combinations_with_replacement(range(NVARS), d):
        exps = [0] * NVARS
        for v in combo:
            exps[v] += 1
        out.add(tuple(exps))
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Exponents, int]:
    return {e: i for i, e in enumerate(monomials(d))}


def tau_weight(exps: Exponents) -> int:
    return sum(e * (j + 1) ** 2 for j, e in enumerate(exps)) % 19


# ── Operations ──────────────────────────────────────────────────────


def pencil(lam: Rational) -> Poly9:
    f = Poly9()
    for i, j in MAIN_TERMS:
        f = f + Poly9.monomial((i, i, j))
    for term in LAMBDA_TERMS:
        f = f + Poly9.monomial(term, lam)
    return f


def partial(f: Poly9, j: int) -> Poly9:
    return f.partial(j)


def partials(f: Poly9) -> list[Poly9]:
    return [f.partial(j) for j in range(1, NVARS + 1)]


def act(g: Sequence[Sequence[Scalar]], f: Poly9, check: bool = True) -> Poly9:
    """(g.f)(x) = f(g x): substitute x_i -> sum_j g[i][j] x_j.

    With check set, a singular g raises JacobianError.
    """
    forms = []
    for i, row in enumerate(g):
        form = {j: c for j, c in enumerate(row) if c}
        if not form:
            raise JacobianError(f"Row {i + 1} of the acting matrix is zero")
        forms.append(form)
    monomial = all(len(form) == 1 for form in forms) and \
        len({j for form in forms for j in form}) == len(forms)
    if check and not monomial and rank([list(row) for row in g]) < len(forms):
        raise JacobianError("Acting matrix is singular")
    result = Poly9()
    for exps, coeff in f.terms.items():
        partial_terms: dict[Exponents, Scalar] = {(0,) * NVARS: coeff}
        for i, e in enumerate(exps):
            for _ in range(e):
                grown: dict[Exponents, Scalar] = {}
                for mono, c in partial_terms.items():
                    for j, a in forms[i].items():
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                        grown[key] = grown.get(key, 0) + c * a
                partial_terms = grown
        for mono, c in partial_terms.items():
            result.add_term(mono, c)
    return result


def invariance_scalar(g: Sequence[Sequence[Scalar]], f: Poly9) -> Scalar | None:
    """c with act(g, f) == c f, or None."""
    image = act(g, f)
    if not f:
        return 1 if not image else None
    exps, coeff = next(iter(f.terms.items()))
    c = image.coefficient(exps)
    if isinstance(coeff, Cyclotomic) or isinstance(c, Cyclotomic):
        c = as_cyclotomic(c) / coeff
    else:
        c = Fraction(c) / coeff
    return c if image == f.scale(c) else None


# ── Graded pieces ───────────────────────────────────────────────────


@dataclass
class GradedSlice:
    degree: int
    dim_s: int                        # binomial(d + 8, 8)
    spanning: int                     # rows of the I_d spanning matrix
    rank_i: int
    dim_r: int


def multiplication_rows(f: Poly9, d: int) -> list[dict[int, Scalar]]:
    """Rows m * df/dx_j for m in S_{d-2}, as column-index maps into S_d."""
    index = monomial_index(d)
    grads = partials(f)
    rows = []
    for m in monomials(d - 2):
        for grad in grads:
            row: dict[int, Scalar] = {}
            for exps, c in grad.terms.items():
                row[index[tuple(a + b for a, b in zip(m, exps))]] = c
            rows.append(row)
    return rows


def graded_slice(f: Poly9, d: int) -> GradedSlice:
    dim_s = comb(d + 8, 8) if d >= 0 else 0
    if d < 2:
        return GradedSlice(degree=d, dim_s=dim_s, spanning=0, rank_i=0, dim_r=dim_s)
    rows = multiplication_rows(f, d)
    if f.is_rational():
        dense = [[_as_rational(row.get(c, 0)) for c in range(dim_s)] for row in rows]
    else:
        dense = [[row.get(c, 0) for c in range(dim_s)] for row in rows]
    logger.debug(f"Rank of the {len(rows)}x{dim_s} multiplication matrix in degree {d}")
    r = rank(dense)
    return GradedSlice(degree=d, dim_s=dim_s, spanning=len(rows), rank_i=r, dim_r=dim_s - r)


def graded_dim(f: Poly9, d: int) -> int:
    """dim R_d by exact rank over Q (or over the coefficient field)."""
    return graded_slice(f, d).dim_r


SOCLE_DEGREE = 9


def hodge_number(f: Poly9, q: int, prime: int | None = None) -> int:
    """h^{7-q,q} = dim R_{3(q+1)-9}.

    Degrees up to 4 are ranked directly. Higher degrees use the Macaulay
    duality dim R_d = dim R_{9-d} and R_d = 0 beyond degree 9, which hold only
    for smooth f, so they need a prime at which f is certified smooth.
    """
    if not 0 <= q <= 7:
        raise JacobianError(f"q must lie in 0..7, got {q}")
    d = 3 * (q + 1) - 9
    if d < 0:
        return 0
    if d <= SOCLE_DEGREE // 2:
        return graded_dim(f, d)
    if prime is None:
        raise JacobianError(f"dim R_{d} needs a smoothness certificate: pass a prime")
    if certified_smooth(f, prime) != CERTIFIED:
        raise JacobianError(f"f is not certified smooth mod {prime}; dim R_{d} is not read by duality")
    if d > SOCLE_DEGREE:
        return 0
    return graded_dim(f, SOCLE_DEGREE - d)


# ── Group action on R_3 ─────────────────────────────────────────────


@dataclass
class PartialsBasis:
    """Coordinates of quadrics in the span of the 9 partials."""
    grads: list[Poly9]
    pivot_columns: list[int]
    pivot_inverse: list[list[Rational]] = field(repr=False)

    def coordinates(self, q: Poly9) -> list[Scalar]:
        index = monomial_index(2)
        vector = [0] * len(index)
        for exps, c in q.terms.items():
            vector[index[exps]] = c
        restricted = [vector[c] for c in self.pivot_columns]
        coords = [sum((restricted[k] * self.pivot_inverse[k][i] for k in range(NVARS)), 0)
                  for i in range(NVARS)]
        rebuilt = Poly9()
        for c, grad in zip(coords, self.grads):
            rebuilt = rebuilt + grad.scale(c)
        if rebuilt != q:
            raise JacobianError("Quadric does not lie in the span of the partials")
        return coords


def partials_basis(f: Poly9) -> PartialsBasis:
    if not f.is_rational():
        raise JacobianError("Partials basis needs rational coefficients")
    grads = partials(f)
    index = monomial_index(2)
    matrix = [[0] * len(index) for _ in grads]
    for i, grad in enumerate(grads):
        for exps, c in grad.terms.items():
            matrix[i][index[exps]] = _as_rational(c)
    # rows are the partials; pick 9 independent columns greedily
    pivots: list[int] = []
    for c in range(len(index)):
        trial = pivots + [c]
        if rank([[row[k] for k in trial] for row in matrix]) == len(trial):
            pivots = trial
        if len(pivots) == NVARS:
            break
    if len(pivots) < NVARS:
        raise JacobianError(f"Partials span only {len(pivots)} dimensions in degree 2")
    return PartialsBasis(grads=grads, pivot_columns=pivots,
                         pivot_inverse=inverse([[row[c] for c in pivots] for row in matrix]))


def ideal_character_values(f: Poly9, rep: ProjectiveRep, group: str) -> list[Scalar]:
    """Trace of each class representative on I_2 = span of the partials."""
    basis = partials_basis(f)
    data = enumerate_group(group)
    values = []
    for cls in data.classes:
        g = rep.element_matrix(cls.representative)
        trace: Scalar = 0
        for i, grad in enumerate(basis.grads):
            trace = trace + basis.coordinates(act(g, grad, check=False))[i]
        values.append(trace)
    return values


def check_invariance(f: Poly9, rep: ProjectiveRep, group: str) -> None:
    """f must be fixed exactly by the generators of the group."""
    if group == "G":
        generators = {"tau": rep.T.to_dense(), "sigma": rep.S.to_dense(), "mu": rep.M}
    else:
        generators = {"tau": rep.T.to_dense(), "sigma^2": (rep.S @ rep.S).to_dense()}
    for name, g in generators.items():
        scalar = invariance_scalar(g, f)
        if scalar != 1:
            raise JacobianError(f"f is not invariant under {name} (scalar {scalar})")


def ideal_cubic_dim(f: Poly9) -> int:
    """dim I_3: rank of the 81 products x_i df/dx_j in S_3."""
    return graded_slice(f, 3).rank_i


def i2_character(f: Poly9, rep: ProjectiveRep, group: str = "G") -> Character:
    return table_for(group).from_values(ideal_character_values(f, rep, group))


def character_on_r3(f: Poly9, rep: ProjectiveRep, group: str = "G") -> Character:
    """Character of the group on R_3 = S_3 / I_3 = Sym^3 W9 - W9 (x) I_2."""
    if not rep.relations_verified:
        raise JacobianError("Generator relations of the representation are not verified")
    check_invariance(f, rep, group)
    dim_i3 = ideal_cubic_dim(f)
    if dim_i3 != NVARS * NVARS:
        raise JacobianError(f"dim I_3 = {dim_i3}, expected 81")
    table = table_for(group)
    chi = table.from_values(trace_character(rep, group))
    return sym3(chi) - tensor(chi, i2_character(f, rep, group))


# ── Smoothness modulo p ─────────────────────────────────────────────

CERTIFIED = "certified smooth"
INCONCLUSIVE = "inconclusive"
SMOOTHNESS_DEGREE = 10


def _mod_p(c: Scalar, p: int) -> int:
    r = _as_rational(c)
    if r is None:
        raise JacobianError("Smoothness certificate needs rational coefficients")
    r = Fraction(r)
    if r.denominator % p == 0:
        raise JacobianError(f"Prime {p} divides a coefficient denominator")
    return (r.numerator * pow(r.denominator, -1, p)) % p


def smooth_certificate_mod_p(f: Poly9, p: int) -> str:
    """"certified smooth" iff R_10 vanishes over F_p, else "inconclusive"."""
    if not isprime(p):
        raise JacobianError(f"Bad prime {p}: not a prime")
    grads = [{e: _mod_p(c, p) for e, c in g.terms.items()} for g in partials(f)]
    grads = [{e: c for e, c in g.items() if c} for g in grads]
    weights = [{tau_weight(e) for e in g} for g in grads]
    split = all(len(w) <= 1 for w in weights)
    columns = monomials(SMOOTHNESS_DEGREE)
    if split:
        blocks: dict[int, list[Exponents]] = {}
        for e in columns:
            blocks.setdefault(tau_weight(e), []).append(e)
    else:
        blocks = {0: list(columns)}
    logger.info(f"Smoothness mod {p}: {len(columns)} columns in {len(blocks)} weight blocks")
    total = 0
    for w, block_columns in sorted(blocks.items()):
        col_index = {e: i for i, e in enumerate(block_columns)}
        matrix = SparseMatrixFp(p=p, ncols=len(block_columns))
        for m in monomials(SMOOTHNESS_DEGREE - 2):
            wm = tau_weight(m)
            for g, gw in zip(grads, weights):
                if not g or (split and (wm + next(iter(gw))) % 19 != w):
                    continue
                row = {}
                for e, c in g.items():
                    key = tuple(a + b for a, b in zip(m, e))
                    row[col_index[key]] = c
                matrix.add_row(row)
        r = sparse_rank_fp(matrix)
        logger.debug(f"  weight {w}: rank {r} of {len(block_columns)}")
        total += r
        if r < len(block_columns):
            logger.info(f"Smoothness mod {p}: R_10 nonzero in weight {w}")
            return INCONCLUSIVE
    return CERTIFIED if total == len(columns) else INCONCLUSIVE


_certificates: dict[tuple[frozenset, int], str] = {}


def certified_smooth(f: Poly9, p: int) -> str:
    """smooth_certificate_mod_p, remembered per polynomial and prime."""
    key = (frozenset(f.terms.items()), p)
    if key not in _certificates:
        _certificates[key] = smooth_certificate_mod_p(f, p)
    return _certificates[key]


# ── Pencil sweep ────────────────────────────────────────────────────


@dataclass
class PencilRow:
    lam: Rational
    dims: list[int]                   # dim R_0 .. R_3
    h_decomposition: dict[str, int] | None
    certificates: dict[int, str]
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "dims": self.dims,
            "h_decomposition": self.h_decomposition,
            "certificates": {str(p): v for p, v in self.certificates.items()},
            "status": self.status,
            "note": self.note,
        }


def pencil_scan(lambdas: Sequence[Rational], primes: Sequence[int], rep: ProjectiveRep,
                heavy: bool = False) -> list[PencilRow]:
    """Per-lambda rows: dims of R_0..R_3, the H-decomposition of R_3, certificates."""
    rows = []
    for lam in lambdas:
        f = pencil(lam)
        dims = [graded_dim(f, d) for d in range(4)]
        note = ""
        try:
            h_decomposition = decompose(character_on_r3(f, rep, "H"))
        except (JacobianError, ValueError) as e:
            h_decomposition, note = None, str(e)
        certificates: dict[int, str] = {}
        if heavy:
            for p in primes:
                certificates[p] = smooth_certificate_mod_p(f, p)
            if any(v == CERTIFIED for v in certificates.values()):
                status = CERTIFIED
            else:
                status = "suspected singular"
        else:
            status = "not checked"
        logger.info(f"lambda={lam}: dims {dims}, status {status}")
        rows.append(PencilRow(lam=lam, dims=dims, h_decomposition=h_decomposition,
                              certificates=certificates, status=status, note=note))
    return rows
