"""Character tables of G = PSL2(F19) and H, with decomposition and branching.

Table values are exact cyclotomics built from nu, a_k = zeta_9^k + zeta_9^-k
and b_k = -(zeta_10^k + zeta_10^-k). Column orders are frozen:

    G: 1, w1, w2, x, x^2, x^3, x^4, y, y^2, y^3, y^4, y^5
    H: 1, a, a^2, ..., a^8, b, b^2

Power maps and the H -> G class fusion come from enumeration in psl2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .cyclo import Cyclotomic, a_k, as_cyclotomic, b_k, dot, gauss_nu, rational, zeta
from .psl2 import ProjectiveRep, dense_identity, enumerate_group, trace_character
from .linalg import rank

logger = logging.getLogger("adlercheck")


class CharacterError(ValueError):
    """Raised when a class function does not decompose into true characters."""

    def __init__(self, message: str, multiplicities: dict | None = None):
        super().__init__(message)
        self.multiplicities = multiplicities or {}


# ── Tables ──────────────────────────────────────────────────────────


@dataclass(eq=False)
class CharacterTable:
    group: str
    class_names: tuple[str, ...]
    sizes: tuple[int, ...]
    power_maps: dict[int, tuple[int, ...]]
    irreducibles: dict[str, tuple[Cyclotomic, ...]]
    fusion: tuple[int, ...] | None = None   # H-class -> G-class

    @property
    def order(self) -> int:
        return sum(self.sizes)

    def character(self, name: str) -> Character:
        try:
            return Character(self, self.irreducibles[name])
        except KeyError:
            raise CharacterError(f"No irreducible {name!r} in the {self.group} table") from None

    def trivial(self) -> Character:
        return Character(self, tuple(rational(1) for _ in self.sizes))

    def from_values(self, values: Sequence) -> Character:
        if len(values) != len(self.sizes):
            raise CharacterError(f"Expected {len(self.sizes)} values, got {len(values)}")
        return Character(self, tuple(as_cyclotomic(v) for v in values))


@dataclass(frozen=True)
class Character:
    """A class function: one exact value per class of its table."""
    table: CharacterTable = field(compare=False)
    values: tuple[Cyclotomic, ...]

    @property
    def degree(self) -> int:
        d = self.values[0].try_integer()
        if d is None or d < 0:
            raise CharacterError(f"Value at the identity is not a degree: {self.values[0]}")
        return d

    def _check(self, other: Character) -> None:
        if other.table is not self.table:
            raise CharacterError(
                f"Table mismatch: {self.table.group} vs {other.table.group}")

    def __add__(self, other: Character) -> Character:
        self._check(other)
        return Character(self.table, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Character) -> Character:
        self._check(other)
        return Character(self.table, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, k: int) -> Character:
        return Character(self.table, tuple(v * k for v in self.values))

    def conj(self) -> Character:
        return Character(self.table, tuple(v.conj() for v in self.values))

    def is_integral(self) -> bool:
        return all(v.try_integer() is not None for v in self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return other.table is self.table and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)


@lru_cache(maxsize=None)
def table_g() -> CharacterTable:
    data = enumerate_group("G")
    nu = gauss_nu()
    nu_bar = nu.conj()
    rows: dict[str, list] = {
        "T1": [1] * 12,
        "W9": [9, nu, nu_bar, 0, 0, 0, 0, 1, -1, 1, -1, 1],
        "W9bar": [9, nu_bar, nu, 0, 0, 0, 0, 1, -1, 1, -1, 1],
    }
    for i in range(1, 5):
        rows[f"W18_{i}"] = [18, -1, -1, 0, 0, 0, 0] + [b_k(i * k) for k in range(1, 6)]
    for i in range(1, 5):
        rows[f"W20_{i}"] = [20, 1, 1] + [a_k(i * k) for k in range(1, 5)] + [0] * 5
    rows["W19"] = [19, 0, 0, 1, 1, 1, 1, -1, -1, -1, -1, -1]
    return CharacterTable(
        group="G",
        class_names=tuple(data.names),
        sizes=tuple(data.sizes),
        power_maps={k: tuple(data.power_map(k)) for k in (2, 3)},
        irreducibles={name: tuple(as_cyclotomic(v) for v in row) for name, row in rows.items()},
    )


@lru_cache(maxsize=None)
def table_h() -> CharacterTable:
    data = enumerate_group("H")
    nu = gauss_nu()
    rows: dict[str, list] = {}
    for k in range(9):
        rows[f"V{k}"] = [1] + [zeta(9, k * j) if (k * j) % 9 else 1 for j in range(1, 9)] + [1, 1]
    rows["V9"] = [9] + [0] * 8 + [nu, nu.conj()]
    rows["V9bar"] = [9] + [0] * 8 + [nu.conj(), nu]
    return CharacterTable(
        group="H",
        class_names=tuple(data.names),
        sizes=tuple(data.sizes),
        power_maps={k: tuple(data.power_map(k)) for k in (2, 3)},
        irreducibles={name: tuple(as_cyclotomic(v) for v in row) for name, row in rows.items()},
        fusion=tuple(data.fusion),
    )


def table_for(group: str) -> CharacterTable:
    if group == "G":
        return table_g()
    if group == "H":
        return table_h()
    raise CharacterError(f"Unknown group {group!r}")


# ── Operations ──────────────────────────────────────────────────────


def inner_product(a: Character, b: Character) -> Cyclotomic:
    """<a, b> = (1/|G|) sum_C |C| a(C) conj(b(C))."""
    a._check(b)
    weighted = [v * size for v, size in zip(a.values, a.table.sizes)]
    return dot(weighted, (v.conj() for v in b.values)) / a.table.order


def tensor(a: Character, b: Character) -> Character:
    a._check(b)
    return Character(a.table, tuple(x * y for x, y in zip(a.values, b.values)))


def sym3(x: Character) -> Character:
    """(chi(g)^3 + 3 chi(g^2) chi(g) + 2 chi(g^3)) / 6."""
    sq, cube = x.table.power_maps[2], x.table.power_maps[3]
    values = []
    for i, v in enumerate(x.values):
        values.append((v * v * v + 3 * x.values[sq[i]] * v + 2 * x.values[cube[i]]) / 6)
    return Character(x.table, tuple(values))


def decompose(x: Character) -> dict[str, int]:
    """Multiplicities of the irreducibles in x; zero multiplicities are omitted.

    Raises CharacterError if a multiplicity is not a nonnegative integer or the
    irreducibles fail to reconstruct x.
    """
    table = x.table
    raw = {name: inner_product(x, table.character(name)) for name in table.irreducibles}
    result: dict[str, int] = {}
    for name, m in raw.items():
        value = m.try_integer()
        if value is None or value < 0:
            raise CharacterError(f"Multiplicity of {name} is {m}", multiplicities={k: str(v) for k, v in raw.items()})
        if value:
            result[name] = value
    if reconstruct(table, result) != x:
        raise CharacterError("Irreducibles do not reconstruct the character", multiplicities=result)
    return result


def reconstruct(table: CharacterTable, multiplicities: dict[str, int]) -> Character:
    total = Character(table, tuple(rational(0) for _ in table.sizes))
    for name, m in multiplicities.items():
        total = total + table.character(name).scale(m)
    return total


def restrict_to_h(x: Character) -> Character:
    """Value at an H-class is x at the G-class it fuses into."""
    h = table_h()
    if x.table.group != "G":
        raise CharacterError("Only G characters restrict to H")
    return Character(h, tuple(x.values[g] for g in h.fusion))


def projector_coefficients(w: str, table: CharacterTable | None = None) -> dict[str, Cyclotomic]:
    """Per-element coefficient of psi_W = (dim W/|G|) sum_g conj(chi_W(g)) g, by class."""
    table = table or table_g()
    chi = table.character(w)
    scale = Fraction(chi.degree, table.order)
    return {name: v.conj() * scale for name, v in zip(table.class_names, chi.values)}


def projector_trace(w: str, x: Character) -> Cyclotomic:
    """trace(psi_W) on a representation with character x; equals dim W times the multiplicity."""
    coefficients = projector_coefficients(w, x.table)
    terms = [coefficients[name] * size for name, size in zip(x.table.class_names, x.table.sizes)]
    return dot(terms, x.values)


def apply_projector(rep: ProjectiveRep, w: str) -> list[list[Cyclotomic]]:
    """psi_W as an explicit matrix on the representation space. Heavy: visits all of G."""
    if not rep.relations_verified:
        raise CharacterError(f"Cannot project onto {w}: generator relations not verified")
    data = enumerate_group("G")
    coefficients = projector_coefficients(w)
    dim = len(rep.M)
    logger.info(f"Accumulating projector onto {w} over {data.order} elements")
    result = [[rational(0)] * dim for _ in range(dim)]
    for cls in data.classes:
        coefficient = coefficients[cls.name]
        if not coefficient:
            continue
        class_sum = [[rational(0)] * dim for _ in range(dim)]
        for g in cls.members:
            m = rep.element_matrix(g)
            class_sum = [[s + e for s, e in zip(srow, mrow)] for srow, mrow in zip(class_sum, m)]
        result = [[r + coefficient * s for r, s in zip(rrow, srow)] for rrow, srow in zip(result, class_sum)]
    return result


def projector_rank(matrix: list[list[Cyclotomic]]) -> int:
    return rank(matrix)


def is_identity(matrix: list[list[Cyclotomic]]) -> bool:
    return matrix == dense_identity()


def rep_character(rep: ProjectiveRep, group: str = "G") -> Character:
    """The character of an explicit representation, read off from traces."""
    return table_for(group).from_values(trace_character(rep, group))


# ── Derived characters ──────────────────────────────────────────────


def cubic_forms_character() -> Character:
    """Sym^3 of W9: the action on cubic forms."""
    return sym3(table_g().character("W9"))


def jacobian_ideal_character() -> Character:
    """I_3 = W9 (x) W9bar."""
    g = table_g()
    return tensor(g.character("W9"), g.character("W9bar"))


def middle_cohomology_character() -> Character:
    """H^{4,3}* = Sym^3 W9 - I_3."""
    return cubic_forms_character() - jacobian_ideal_character()


@dataclass
class IntegralityRow:
    name: str
    components: tuple[str, ...]
    integral: bool
    degree: int
    subtorus_dim: int


GALOIS_SUM_GROUPS: dict[str, tuple[str, ...]] = {
    "chi0": ("T1",),
    "chi1": ("W9", "W9bar"),
    "chi2": ("W18_1", "W18_2", "W18_3", "W18_4"),
    "chi3": ("W19",),
    "chi4": ("W20_1", "W20_2", "W20_3", "W20_4"),
}


def integrality_check_cor10() -> list[IntegralityRow]:
    """Integer-valued sums of Galois-conjugate characters and their share of 1 + H^{4,3}*."""
    g = table_g()
    total = g.trivial() + middle_cohomology_character()
    multiplicities = decompose(total)
    rows = []
    for name, components in GALOIS_SUM_GROUPS.items():
        chi = g.character(components[0])
        for other in components[1:]:
            chi = chi + g.character(other)
        subtorus = sum(multiplicities.get(c, 0) * g.character(c).degree for c in components)
        rows.append(IntegralityRow(name=name, components=components, integral=chi.is_integral(),
                                   degree=chi.degree, subtorus_dim=subtorus))
    return rows


def orthogonality_defects(table: CharacterTable) -> list[str]:
    """Pairs violating row or column orthogonality; empty when the table is sound."""
    defects = []
    names = list(table.irreducibles)
    for i, a in enumerate(names):
        for b in names[i:]:
            expected = 1 if a == b else 0
            value = inner_product(table.character(a), table.character(b))
            if value != expected:
                defects.append(f"<{a},{b}> = {value}")
    columns = list(zip(*table.irreducibles.values()))
    for i, col_i in enumerate(columns):
        for j in range(i, len(columns)):
            value = dot(col_i, (v.conj() for v in columns[j]))
            expected = Fraction(table.order, table.sizes[i]) if i == j else 0
            if value != expected:
                defects.append(f"column ({table.class_names[i]},{table.class_names[j]}) = {value}")
    degrees = sum(table.character(n).degree ** 2 for n in names)
    if degrees != table.order:
        defects.append(f"sum of squared degrees {degrees} != {table.order}")
    return defects


def sym3_dimension(n: int = 9) -> int:
    return comb(n + 2, 3)
