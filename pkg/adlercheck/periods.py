"""The period lattices Lambda_0 ... Lambda_8 and the invariant polarization.

Vectors of V = C^9 are tuples of nine elements of Q(xi), xi = zeta_19, in the
basis e_1 .. e_9. With

    v_k = tau^k (e_1 + ... + e_9) = sum_j xi^{k j^2} e_j
    l_k(z) = sum_j xi^{k j^2} z_j

Lambda_0 is the Z[nu]-span of v_0 .. v_8 and Lambda_8 the lattice of vectors
on which every l_k is Z[nu]-valued. Lattices are kept as rank-18 integer
lattices in the 162 rational coordinates of Q(xi)^9: a row Hermite normal form
over a common denominator. Z[nu]-module structure is checked as stability
under multiplication by nu.

The quotient Lambda_8 / Lambda_0 is an 8-dimensional vector space over
Z[nu]/(1+2nu) = F_19, where nu reduces to 9. The lattices between Lambda_0
and Lambda_8 that tau preserves are the preimages Lambda_j of the flag
W_0 < W_1 < ... < W_8 of the unipotent map induced by tau.

The alternating form is E(x, y) = (s - conj(s)) / (1+2nu) with
s = sum_k x_k conj(y_k), the imaginary part of (2/sqrt19) sum x_k conj(y_k).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import Matrix, binomial

from .cyclo import (Cyclotomic, Rational, as_cyclotomic, basis, dot, gauss_nu, in_z_nu,
                    rational, sqrt_minus_19, xi, zeta)
from .linalg import dense_rank_fp, hnf_basis, inverse, pfaffian, rank
from .psl2 import DIM, P, Dense, ProjectiveRep, dense_mul, is_unitary, s_matrix, t_matrix

logger = logging.getLogger("adlercheck")

PeriodVector = tuple[Cyclotomic, ...]

RANK = 2 * DIM
FLAG_DIM = DIM - 1
NU_MOD = 9                         # nu mod (1+2nu)


class LatticeError(ValueError):
    """Raised when a lattice construction or cross-check fails."""


# ── Vectors ─────────────────────────────────────────────────────────


def _scale(v: Sequence, c) -> PeriodVector:
    c = as_cyclotomic(c)
    return tuple(c * x for x in v)


def _add(*vectors: Sequence) -> PeriodVector:
    return tuple(sum(parts[1:], as_cyclotomic(parts[0])) for parts in zip(*vectors))


def _combine(coeffs: Sequence, vectors: Sequence[Sequence]) -> PeriodVector:
    """sum_i coeffs[i] * vectors[i]."""
    return tuple(dot(coeffs, column) for column in zip(*vectors))


def apply(g: Dense, z: Sequence) -> PeriodVector:
    return tuple(dot(row, z) for row in g)


@lru_cache(maxsize=None)
def inverse_g() -> Cyclotomic:
    """1/(1+2nu) = -(1+2nu)/19."""
    return -sqrt_minus_19() / P


@lru_cache(maxsize=None)
def build_v(k: int) -> PeriodVector:
    """v_k = sum_j xi^{k j^2} e_j; periodic in k with period 19."""
    return tuple(xi(k * j * j) for j in range(1, DIM + 1))


@lru_cache(maxsize=None)
def build_wprime(k: int) -> PeriodVector:
    """w'_k = (v_k - 5v_{k+1} + 10v_{k+2} - 10v_{k+3} + 5v_{k+4} - v_{k+5}) / (1+2nu)."""
    coeffs = [(-1) ** i * int(binomial(5, i)) for i in range(6)]
    return _scale(_combine(coeffs, [build_v(k + i) for i in range(6)]), inverse_g())


def ell(k: int, z: Sequence) -> Cyclotomic:
    """l_k(z) = sum_j xi^{k j^2} z_j."""
    return dot((xi(k * j * j) for j in range(1, DIM + 1)), z)


def unit_vector(j: int) -> PeriodVector:
    return tuple(rational(1 if i == j else 0) for i in range(1, DIM + 1))


# ── Lattices ────────────────────────────────────────────────────────


def _in_q19(x) -> Cyclotomic:
    x = as_cyclotomic(x)
    if x.order == P:
        return x
    return x.lift(P) if P % x.order == 0 else x.restrict(P)


def flatten(z: Sequence) -> list[Rational]:
    """The 162 rational coordinates of a vector."""
    coords: list[Rational] = []
    for x in z:
        coords.extend(_in_q19(x).coordinates())
    return coords


def unflatten(coords: Sequence[Rational]) -> PeriodVector:
    width = len(basis(P))
    return tuple(Cyclotomic.from_coordinates(P, coords[i * width:(i + 1) * width])
                 for i in range(DIM))


def _denominator(values: Sequence[Rational]) -> int:
    d = 1
    for x in values:
        if isinstance(x, Fraction):
            d = math.lcm(d, x.denominator)
    return d


@dataclass(frozen=True)
class PeriodLattice:
    """A rank-18 lattice stored as hermite / denominator.

    Two lattices are equal exactly when their normalised Hermite forms agree.
    """
    hermite: tuple[tuple[int, ...], ...]
    denominator: int
    name: str = field(default="", compare=False)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], name: str = "") -> PeriodLattice:
        rows = [flatten(v) for v in vectors]
        d = _denominator([x for row in rows for x in row])
        h = hnf_basis([[int(x * d) for x in row] for row in rows])
        g = math.gcd(d, *(x for row in h for x in row))
        lattice = cls(tuple(tuple(x // g for x in row) for row in h), d // g, name)
        if lattice.rank != RANK:
            raise LatticeError(f"{name or 'lattice'} has rank {lattice.rank}, expected {RANK}")
        return lattice

    @property
    def rank(self) -> int:
        return len(self.hermite)

    @property
    def pivots(self) -> list[int]:
        return [next(c for c, x in enumerate(row) if x) for row in self.hermite]

    def covolume(self) -> Fraction:
        """Product of the pivots over denominator^rank: the volume in pivot coordinates."""
        return Fraction(math.prod(row[c] for row, c in zip(self.hermite, self.pivots)),
                        self.denominator ** self.rank)

    def basis(self) -> list[PeriodVector]:
        return [unflatten([Fraction(x, self.denominator) for x in row]) for row in self.hermite]

    def contains(self, z: Sequence) -> bool:
        scaled = [x * self.denominator for x in flatten(z)]
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in scaled):
            return False
        r = [int(x) for x in scaled]
        for row, c in zip(self.hermite, self.pivots):
            q, rem = divmod(r[c], row[c])
            if rem:
                return False
            if q:
                r = [a - q * b for a, b in zip(r, row)]
        return not any(r)

    def is_sublattice(self, other: PeriodLattice) -> bool:
        return all(other.contains(b) for b in self.basis())

    def index_in(self, other: PeriodLattice) -> int:
        """[other : self]; raises LatticeError unless self is a sublattice of other."""
        if not self.is_sublattice(other):
            raise LatticeError(f"{self.name} is not contained in {other.name}")
        ratio = self.covolume() / other.covolume()
        if ratio.denominator != 1:
            raise LatticeError(f"Non-integral index {ratio} of {self.name} in {other.name}")
        return int(ratio)

    def image(self, g: Dense, name: str = "") -> PeriodLattice:
        return PeriodLattice.from_vectors([apply(g, b) for b in self.basis()], name)

    def is_nu_stable(self) -> bool:
        nu = gauss_nu()
        return all(self.contains(_scale(b, nu)) for b in self.basis())


def z_nu_span(vectors: Sequence[Sequence]) -> list[PeriodVector]:
    """Z-generators of the Z[nu]-span: each vector and nu times it."""
    nu = gauss_nu()
    out: list[PeriodVector] = []
    for v in vectors:
        out.append(tuple(v))
        out.append(_scale(v, nu))
    return out


@lru_cache(maxsize=None)
def _v_matrix() -> tuple[tuple[Cyclotomic, ...], ...]:
    """Columns v_0 .. v_8."""
    return tuple(zip(*(build_v(k) for k in range(DIM))))


@lru_cache(maxsize=None)
def _v_inverse() -> tuple[tuple[Cyclotomic, ...], ...]:
    return tuple(tuple(row) for row in inverse([list(r) for r in _v_matrix()]))


def v_coordinates(z: Sequence) -> list[Cyclotomic]:
    """The coefficients c_k with z = sum_{k=0}^{8} c_k v_k."""
    return [dot(row, z) for row in _v_inverse()]


def nu_relation_holds(squares: bool = True) -> bool:
    """nu v_0 = sum_{k=1}^{9} v_{k^2}. With squares=False, tests the sum of v_1 .. v_9 instead."""
    total = _add(*(build_v(k * k if squares else k) for k in range(1, DIM + 1)))
    return _scale(build_v(0), gauss_nu()) == total


def v9_expansion() -> list[Cyclotomic]:
    return v_coordinates(build_v(DIM))


def printed_v9_expansion() -> list[Cyclotomic]:
    nu = gauss_nu()
    return [rational(1), 1 + nu, rational(-2), 1 - nu, 3 + nu, nu - 2, -(2 + nu), rational(2), nu]


@lru_cache(maxsize=None)
def lattice_lambda0() -> PeriodLattice:
    """Lambda_0: the Z-span of all v_k, checked equal to the Z[nu]-span of v_0 .. v_8."""
    if not nu_relation_holds():
        raise LatticeError("nu v_0 is not the sum of the v_{k^2}")
    if v9_expansion() != printed_v9_expansion():
        raise LatticeError("v_9 does not expand with the tabulated Z[nu] coefficients")
    lattice = PeriodLattice.from_vectors(z_nu_span([build_v(k) for k in range(DIM)]), "Lambda_0")
    orbit = PeriodLattice.from_vectors([build_v(k) for k in range(P)], "Z-span of v_k")
    if orbit != lattice:
        raise LatticeError("Z-span of the tau-orbit of v_0 differs from the Z[nu]-span of v_0..v_8")
    return lattice


def lambda8_generators() -> list[PeriodVector]:
    """(v_k - v_{k+1})/(1+2nu) for k = 0..7, then v_0."""
    g = inverse_g()
    vectors = [_scale(_add(build_v(k), _scale(build_v(k + 1), -1)), g) for k in range(FLAG_DIM)]
    return vectors + [build_v(0)]


def dual_generators() -> list[PeriodVector]:
    """The basis l_0^* .. l_8^* dual to l_0 .. l_8."""
    # l_k(z) = (V^T z)_k, so l_i^* = (V^T)^{-1} e_i is row i of V^{-1}
    return [tuple(row) for row in _v_inverse()]


@lru_cache(maxsize=None)
def lattice_lambda8() -> PeriodLattice:
    """Lambda_8 from its explicit basis, cross-checked against the l_k description."""
    generators = lambda8_generators()
    for z in generators:
        for k in range(DIM):
            if in_z_nu(ell(k, z)) is None:
                raise LatticeError(f"l_{k} is not Z[nu]-valued on a Lambda_8 generator")
    lattice = PeriodLattice.from_vectors(z_nu_span(generators), "Lambda_8")
    dual = PeriodLattice.from_vectors(z_nu_span(dual_generators()), "dual of l_0..l_8")
    if dual != lattice:
        raise LatticeError("Explicit Lambda_8 basis differs from the l_k dual lattice")
    index = lattice_lambda0().index_in(lattice)
    if index != P ** FLAG_DIM:
        raise LatticeError(f"[Lambda_8 : Lambda_0] = {index}, expected {P ** FLAG_DIM}")
    if lattice.image(t_matrix().to_dense()) != lattice:
        raise LatticeError("Lambda_8 is not tau-stable")
    return lattice


# ── The quotient flag ───────────────────────────────────────────────


def reduce_z_nu(value: Cyclotomic) -> int:
    """x + y nu -> x + 9y mod 19; raises LatticeError outside Z[nu]."""
    pair = in_z_nu(value)
    if pair is None:
        raise LatticeError(f"{value} is not in Z[nu]")
    x, y = pair
    return (x + NU_MOD * y) % P


def t_coordinates(z: Sequence) -> list[int]:
    """Coordinates of z + Lambda_0 in the basis t_1 .. t_8."""
    alpha = [reduce_z_nu(c) for c in v_coordinates(_scale(z, sqrt_minus_19()))]
    if sum(alpha) % P:
        raise LatticeError("Vector does not lie in Lambda_8")
    return [sum(alpha[:i]) % P for i in range(1, DIM)]


def t_lift(i: int) -> PeriodVector:
    """(v_{i-1} - v_i)/(1+2nu), the lift of t_i."""
    return lambda8_generators()[i - 1]


@dataclass
class QuotientFlag:
    """tau-hat on Lambda_8/Lambda_0 in the t- and w-bases, over F_19.

    w_basis[i] holds the t-coordinates of w_{i+1}; kernel_dims[j] is
    dim ker (tau-hat - 1)^j.
    """
    tau_t: list[list[int]]
    w_basis: list[list[int]]
    tau_w: list[list[int]]
    kernel_dims: list[int]
    w_lifts: list[PeriodVector] = field(repr=False)

    @property
    def is_single_block(self) -> bool:
        return self.tau_w == jordan_block()

    @property
    def stable_subspace_count(self) -> int:
        return count_stable_subspaces(self.kernel_dims)


def jordan_block(size: int = FLAG_DIM) -> list[list[int]]:
    return [[1 if j in (i, i + 1) else 0 for j in range(size)] for i in range(size)]


def kernel_chain(matrix: Sequence[Sequence[int]], p: int = P) -> list[int]:
    """dim ker (A - 1)^j over F_p for j = 0 .. n."""
    a = np.array(matrix, dtype=np.int64) % p
    n = len(a)
    nilpotent = (a - np.eye(n, dtype=np.int64)) % p
    power = np.eye(n, dtype=np.int64)
    dims = []
    for _ in range(n + 1):
        dims.append(n - dense_rank_fp(power.tolist(), p))
        power = (power @ nilpotent) % p
    return dims


def count_stable_subspaces(kernel_dims: Sequence[int]) -> int:
    """Stable subspaces of a unipotent map with kernel steps of dimension one.

    Such a map is a single Jordan block, and its stable subspaces are exactly
    the kernel chain, zero and the whole space included.
    """
    n = len(kernel_dims) - 1
    if list(kernel_dims) != list(range(n + 1)):
        raise LatticeError(f"Map is not a single unipotent block: kernel dims {list(kernel_dims)}")
    return n + 1


def w_in_t_basis(i: int) -> list[int]:
    """w_{8-k} = (-1)^k sum_j C(k,j) (-1)^j t_{j+1}, with k = 8 - i."""
    k = FLAG_DIM - i
    coords = [0] * FLAG_DIM
    for j in range(k + 1):
        coords[j] = ((-1) ** (k + j) * int(binomial(k, j))) % P
    return coords


def _mat_mod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a @ b) % P


@lru_cache(maxsize=None)
def flag_quotient() -> QuotientFlag:
    tau = t_matrix().to_dense()
    columns = [t_coordinates(apply(tau, t_lift(i))) for i in range(1, DIM)]
    tau_t = np.array(columns, dtype=np.int64).T
    w = np.array([w_in_t_basis(i) for i in range(1, DIM)], dtype=np.int64).T
    if dense_rank_fp(w.tolist(), P) != FLAG_DIM:
        raise LatticeError("w_1 .. w_8 do not form a basis of the quotient")
    w_inv = np.array([[int(x) for x in row] for row in Matrix(w.tolist()).inv_mod(P).tolist()],
                     dtype=np.int64)
    tau_w = _mat_mod(_mat_mod(w_inv, tau_t), w)

    kernel_dims = kernel_chain(tau_w.tolist(), P)

    lifts = [_combine([int(x) for x in w[:, i]], [t_lift(m) for m in range(1, DIM)]) for i in range(FLAG_DIM)]
    logger.debug(f"tau-hat kernel dimensions {kernel_dims}")
    return QuotientFlag(tau_t=tau_t.tolist(), w_basis=w.T.tolist(), tau_w=tau_w.tolist(),
                        kernel_dims=kernel_dims, w_lifts=lifts)


@lru_cache(maxsize=None)
def lattice_lambda(j: int) -> PeriodLattice:
    """Lambda_j = Lambda_0 + Z[nu] w~_1 + ... + Z[nu] w~_j."""
    if not 0 <= j <= FLAG_DIM:
        raise LatticeError(f"j must lie in 0..{FLAG_DIM}, got {j}")
    if j == 0:
        return lattice_lambda0()
    if j == FLAG_DIM:
        return lattice_lambda8()
    flag = flag_quotient()
    generators = z_nu_span([build_v(k) for k in range(DIM)] + flag.w_lifts[:j])
    return PeriodLattice.from_vectors(generators, f"Lambda_{j}")


def h1_lattice() -> PeriodLattice:
    """The Z[nu]-span of w'_0 .. w'_3 and v_4 .. v_8."""
    vectors = [build_wprime(k) for k in range(4)] + [build_v(k) for k in range(4, DIM)]
    return PeriodLattice.from_vectors(z_nu_span(vectors), "H_1(A, Z)")


def tower() -> list[PeriodLattice]:
    logger.info("Building the lattice tower Lambda_0 .. Lambda_8")
    lattices = [lattice_lambda(j) for j in range(DIM)]
    logger.info(f"Lattice tower built: {len(lattices)} lattices of rank {RANK}")
    return lattices


def tower_indices() -> list[int]:
    """[Lambda_{j+1} : Lambda_j] for j = 0..7."""
    lattices = tower()
    return [lattices[j].index_in(lattices[j + 1]) for j in range(FLAG_DIM)]


# ── Polarization ────────────────────────────────────────────────────


def polarization_eval(x: Sequence, y: Sequence, a: Rational = 1) -> Rational:
    """E(x, y) = a (s - conj s)/(1+2nu), s = sum_k x_k conj(y_k)."""
    s = dot(x, (as_cyclotomic(c).conj() for c in y))
    value = ((s - s.conj()) * inverse_g()).try_rational()
    if value is None:
        raise LatticeError("Polarization value is not rational")
    return value * a


def gram_matrix(lattice: PeriodLattice, a: Rational = 1) -> list[list[Rational]]:
    basis_vectors = lattice.basis()
    n = len(basis_vectors)
    gram: list[list[Rational]] = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = polarization_eval(basis_vectors[i], basis_vectors[j], a)
            gram[i][j], gram[j][i] = e, -e
    return gram


def is_integral(gram: Sequence[Sequence[Rational]]) -> bool:
    return all(not isinstance(x, Fraction) or x.denominator == 1 for row in gram for x in row)


def gram_pfaffian(lattice: PeriodLattice, a: Rational = 1) -> Rational:
    """|Pf| of the Gram matrix of E on the Hermite basis of the lattice."""
    return abs(pfaffian(gram_matrix(lattice, a)))


def form_invariant(g: Dense, vectors: Sequence[Sequence]) -> bool:
    """E(g x, g y) == E(x, y) on all pairs of the given vectors."""
    images = [apply(g, v) for v in vectors]
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if polarization_eval(images[i], images[j]) != polarization_eval(vectors[i], vectors[j]):
                return False
    return True


@lru_cache(maxsize=None)
def imaginary_unit() -> Cyclotomic:
    return zeta(4 * P, P)


@lru_cache(maxsize=None)
def sqrt_19() -> Cyclotomic:
    """sqrt 19 = -i (1+2nu) in Q(zeta_76)."""
    return -imaginary_unit() * sqrt_minus_19()


def printed_prefactors() -> dict[str, Cyclotomic]:
    """The two printed prefactors of sum dx_k ^ d conj(x_k), as exact elements of Q(zeta_76)."""
    inv_sqrt_19 = imaginary_unit() * inverse_g()
    return {"2/sqrt19": 2 * inv_sqrt_19, "i/sqrt19": imaginary_unit() * inv_sqrt_19}


def prefactor_integral(prefactor: Cyclotomic, lattice: PeriodLattice) -> bool:
    """Whether prefactor * sum (x_k conj y_k - y_k conj x_k) is integer-valued on the lattice."""
    basis_vectors = lattice.basis()
    for i in range(len(basis_vectors)):
        for j in range(i + 1, len(basis_vectors)):
            x, y = basis_vectors[i], basis_vectors[j]
            s = dot(x, (c.conj() for c in y))
            if (prefactor * (s - s.conj())).try_integer() is None:
                return False
    return True


def normalisation_check(lattice: PeriodLattice | None = None) -> dict[str, bool]:
    lattice = lattice or lattice_lambda(4)
    return {name: prefactor_integral(value, lattice) for name, value in printed_prefactors().items()}


@dataclass
class SweepRow:
    j: int
    a: int
    integral: bool
    pfaffian_squared: Rational
    expected: Rational

    @property
    def principal(self) -> bool:
        return self.integral and self.pfaffian_squared == 1


def uniqueness_sweep(scalings: Sequence[int] = (1, 2, 3)) -> list[SweepRow]:
    """Integrality and Pf^2 of a * E on every Lambda_j; Pf(aE) = a^9 Pf(E)."""
    rows = []
    for j, lattice in enumerate(tower()):
        gram = gram_matrix(lattice)
        pf = pfaffian(gram)
        for a in scalings:
            scaled = [[a * x for x in row] for row in gram]
            rows.append(SweepRow(j=j, a=a, integral=is_integral(scaled),
                                 pfaffian_squared=(a ** DIM * pf) ** 2,
                                 expected=Fraction(a ** RANK * P ** FLAG_DIM, P ** (2 * j))))
    return rows


# ── Group action ────────────────────────────────────────────────────


def stability(g: Dense, lattice: PeriodLattice) -> bool:
    """g L == L."""
    return lattice.image(g) == lattice


def unitarity(g: Dense) -> bool:
    return is_unitary(g)


def generator_matrices(rep: ProjectiveRep) -> dict[str, Dense]:
    return {"tau": rep.T.to_dense(), "sigma": rep.S.to_dense(), "mu": rep.M}


def q_endomorphism_check() -> bool:
    """sum_j sigma^j == v_0 l_0 (the all-ones matrix), of rank one, and q(tau v_0) = nu v_0."""
    s = s_matrix().to_dense()
    q = [[rational(0)] * DIM for _ in range(DIM)]
    power = [[rational(1 if i == j else 0) for j in range(DIM)] for i in range(DIM)]
    for _ in range(DIM):
        q = [[x + y for x, y in zip(qr, pr)] for qr, pr in zip(q, power)]
        power = dense_mul(power, s)
    # l_0 has every coefficient 1
    outer = [[x * rational(1) for _ in range(DIM)] for x in build_v(0)]
    if q != outer or rank([[x.try_rational() for x in row] for row in q]) != 1:
        return False
    tau_v0 = apply(t_matrix().to_dense(), build_v(0))
    nu = gauss_nu()
    return apply(q, tau_v0) == _scale(build_v(0), nu) and ell(0, tau_v0) == nu


@dataclass
class LatticeRow:
    j: int
    index: int                        # over Lambda_0
    pfaffian_squared: Rational
    integral: bool
    nu_stable: bool
    stable: dict[str, bool]

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "index": self.index,
            "pfaffian_squared": str(self.pfaffian_squared),
            "integral": self.integral,
            "nu_stable": self.nu_stable,
            "stable": self.stable,
        }


def lattice_rows(rep: ProjectiveRep) -> list[LatticeRow]:
    generators = generator_matrices(rep)
    base = lattice_lambda0()
    rows = []
    for j, lattice in enumerate(tower()):
        gram = gram_matrix(lattice)
        rows.append(LatticeRow(
            j=j,
            index=base.index_in(lattice),
            pfaffian_squared=pfaffian(gram) ** 2,
            integral=is_integral(gram),
            nu_stable=lattice.is_nu_stable(),
            stable={name: stability(g, lattice) for name, g in generators.items()},
        ))
        logger.debug(f"Lambda_{j}: {rows[-1].to_dict()}")
    return rows
