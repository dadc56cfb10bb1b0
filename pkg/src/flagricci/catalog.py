"""Static data for every flag family with three isotropy summands.

For each family this module records the summand dimensions, the Lie
bracket relations between summands, the known equilibria of the
projected flow (with closed-form eigenvalues where available), and the
collapsed-limit target spaces keyed by which summands degenerate.

Two families are parametric (the SU and SO series); the rest are eight
fixed spaces: one exceptional Type II flag and the seven Type I flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

F = Fraction

KIND_SU = "TypeII_SU"
KIND_SO = "TypeII_SO"
KIND_E6 = "TypeII_E6"
KIND_TYPE1 = "TypeI"

DEGENERATE = "degenerate"
KAHLER_EINSTEIN = "KahlerEinstein"
EINSTEIN_NON_KAHLER = "EinsteinNonKahler"

REPELLER = "repeller"
ATTRACTOR = "attractor"
SADDLE = "saddle"


# ----------------------------------------------------------------------
# families

@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    kind: str
    params: tuple
    dims: tuple
    group_name: str
    isotropy_name: str
    clearing_factor: str

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_type_two(self) -> bool:
        return self.kind != KIND_TYPE1

    def display_kind(self) -> str:
        if self.kind == KIND_SU:
            return "TypeII_SU({},{},{})".format(*self.params)
        if self.kind == KIND_SO:
            return f"TypeII_SO({self.params[0]})"
        if self.kind == KIND_E6:
            return "TypeII_E6"
        return f"TypeI({self.group_name}/{self.isotropy_name})"


def su_family(m: int, n: int, p: int) -> FamilyDescriptor:
    """Full or partial complex flag SU(m+n+p)/S(U(m)xU(n)xU(p))."""
    if not (m >= n >= p > 0):
        raise ValueError(f"SU family requires m >= n >= p > 0, got ({m},{n},{p})")
    s = m + n + p
    return FamilyDescriptor(
        id="su",
        kind=KIND_SU,
        params=(m, n, p),
        dims=(2 * m * n, 2 * m * p, 2 * n * p),
        group_name=f"SU({s})",
        isotropy_name=f"S(U({m})xU({n})xU({p}))",
        clearing_factor=f"{2 * s}*x*y*z",
    )


def so_family(ell: int) -> FamilyDescriptor:
    """Real flag SO(2l)/(U(1)xU(l-1)), l >= 4."""
    if ell < 4:
        raise ValueError(f"SO family requires l >= 4, got {ell}")
    return FamilyDescriptor(
        id="so",
        kind=KIND_SO,
        params=(ell,),
        dims=(2 * (ell - 1), 2 * (ell - 1), (ell - 1) * (ell - 2)),
        group_name=f"SO({2 * ell})",
        isotropy_name=f"U(1)xU({ell - 1})",
        clearing_factor=f"{4 * (ell - 1)}*x*y*z",
    )


def e6_family() -> FamilyDescriptor:
    """The exceptional Type II flag with three 16-dimensional summands."""
    return FamilyDescriptor(
        id="e6so8u1u1",
        kind=KIND_E6,
        params=(),
        dims=(16, 16, 16),
        group_name="E6",
        isotropy_name="SO(8)xU(1)xU(1)",
        clearing_factor="6*x*y*z",
    )


# (d1, d2, d3), group, isotropy for the seven Type I flags
_TYPE1_ROWS = {
    "e8e6su2u1": ((108, 54, 4), "E8", "E6xSU(2)xU(1)"),
    "e8su8u1": ((112, 56, 16), "E8", "SU(8)xU(1)"),
    "e7su5su3u1": ((60, 30, 10), "E7", "SU(5)xSU(3)xU(1)"),
    "e7su6su2u1": ((60, 30, 4), "E7", "SU(6)xSU(2)xU(1)"),
    "e6su3su3su2u1": ((36, 18, 4), "E6", "SU(3)xSU(3)xSU(2)xU(1)"),
    "f4su3su2u1": ((24, 12, 4), "F4", "SU(3)xSU(2)xU(1)"),
    "g2u2": ((4, 2, 4), "G2", "U(2)"),
}

TYPE1_IDS = tuple(_TYPE1_ROWS)


def type1_family(fid: str) -> FamilyDescriptor:
    if fid not in _TYPE1_ROWS:
        raise ValueError(f"unknown Type I family {fid!r}")
    dims, group, isotropy = _TYPE1_ROWS[fid]
    d1, d2, d3 = dims
    delta = d1 + 4 * d2 + 9 * d3
    return FamilyDescriptor(
        id=fid,
        kind=KIND_TYPE1,
        params=(),
        dims=dims,
        group_name=group,
        isotropy_name=isotropy,
        clearing_factor=f"{4 * delta * d1 * d2}*x^2*y*z",
    )


PARAMETRIC_IDS = ("su", "so")
CONSTANT_IDS = ("e6so8u1u1",) + TYPE1_IDS
ALL_IDS = PARAMETRIC_IDS + CONSTANT_IDS


def family_from_id(fid: str, params: Optional[tuple] = None) -> FamilyDescriptor:
    """Build a descriptor from an id plus parameters where required."""
    if fid == "su":
        if params is None or len(params) != 3:
            raise ValueError("family 'su' needs params (m, n, p)")
        return su_family(*params)
    if fid == "so":
        if params is None or len(params) != 1:
            raise ValueError("family 'so' needs params (l,)")
        return so_family(*params)
    if params is not None:
        raise ValueError(f"family {fid!r} takes no params")
    if fid == "e6so8u1u1":
        return e6_family()
    return type1_family(fid)


def list_families(mnp_bound: Optional[int] = None, ell_bound: Optional[int] = None) -> list:
    """All constant families, plus parametric ones enumerated within bounds.

    mnp_bound enumerates SU families with m >= n >= p and all of m, n, p
    at most the bound; ell_bound enumerates SO families with 4 <= l <=
    ell_bound.  The seven Type I families and the exceptional Type II
    family are always present.
    """
    for bound in (mnp_bound, ell_bound):
        if bound is not None and bound < 1:
            raise ValueError(f"bounds must be positive, got {bound}")
    out = []
    if mnp_bound is not None:
        for m in range(1, mnp_bound + 1):
            for n in range(1, m + 1):
                for p in range(1, n + 1):
                    out.append(su_family(m, n, p))
    if ell_bound is not None:
        for ell in range(4, ell_bound + 1):
            out.append(so_family(ell))
    out.append(e6_family())
    out.extend(type1_family(fid) for fid in TYPE1_IDS)
    return out


# ----------------------------------------------------------------------
# bracket tables

@dataclass(frozen=True)
class BracketTable:
    """Symmetric 3x3 table of bracket targets between isotropy summands.

    entry(i, j) is the set of components (among "k", "m1", "m2", "m3")
    that can receive [m_i, m_j].  The rules [k, m_i] in m_i and
    [k, k] in k are implicit.
    """

    entries: tuple

    def entry(self, i: int, j: int) -> frozenset:
        return self.entries[i - 1][j - 1]


def _table(rows: dict) -> BracketTable:
    grid = [[None] * 3 for _ in range(3)]
    for (i, j), targets in rows.items():
        grid[i - 1][j - 1] = frozenset(targets)
        grid[j - 1][i - 1] = frozenset(targets)
    return BracketTable(tuple(tuple(row) for row in grid))


_TYPE2_TABLE = _table({
    (1, 1): {"k"}, (2, 2): {"k"}, (3, 3): {"k"},
    (1, 2): {"m3"}, (1, 3): {"m2"}, (2, 3): {"m1"},
})

_TYPE1_TABLE = _table({
    (1, 1): {"k", "m2"}, (2, 2): {"k"}, (3, 3): {"k"},
    (1, 2): {"m1", "m3"}, (1, 3): {"m2"}, (2, 3): {"m1"},
})


def bracket_table(family: FamilyDescriptor) -> BracketTable:
    return _TYPE2_TABLE if family.is_type_two else _TYPE1_TABLE


# ----------------------------------------------------------------------
# reference equilibria

@dataclass(frozen=True)
class EquilibriumRecord:
    label: str
    position: tuple
    metric_kind: str
    expected_class: str
    eigenvalues: Optional[tuple] = None
    position_exact: bool = True
    eigen_rel_tol: Optional[float] = 1e-7

    def position_float(self) -> tuple:
        return (float(self.position[0]), float(self.position[1]))


def _su_interior_eigs(m: int, n: int, p: int) -> tuple:
    """Eigenvalues at the interior equilibrium of the SU series."""
    s = m + n + p
    a = F(m * m * (n + p) + m * (n + p) ** 2 + n * n * p + n * p * p, 4 * s * s)
    disc = F((m + n) * (m + p) * (n + p)) * (
        m * m * (n + p) + m * (n * n - 6 * n * p + p * p) + n * p * (n + p)
    )
    disc = disc / F(16 * s**4)
    if disc >= 0:
        root = math.sqrt(disc)
        return (float(a) - root, float(a) + root)
    root = math.sqrt(-disc)
    return (complex(float(a), -root), complex(float(a), root))


def _su_records(m: int, n: int, p: int) -> list:
    s = m + n + p
    rec = EquilibriumRecord
    return [
        rec("O", (F(0), F(0)), DEGENERATE, REPELLER, (F(m + p), F(m + n))),
        rec("P", (F(0), F(1)), DEGENERATE, REPELLER, (F(n + p), F(m + n))),
        rec("Q", (F(1), F(0)), DEGENERATE, REPELLER, (F(n + p), F(m + p))),
        rec("K", (F(0), F(1, 2)), DEGENERATE, ATTRACTOR, (F(-(m + n), 2), F(-(m + n), 2))),
        rec("L", (F(1, 2), F(1, 2)), DEGENERATE, ATTRACTOR, (F(-(n + p), 2), F(-(n + p), 2))),
        rec("M", (F(1, 2), F(0)), DEGENERATE, ATTRACTOR, (F(-(m + p), 2), F(-(m + p), 2))),
        rec(
            "N",
            (F(m + n, 2 * s), F(m + p, 2 * s)),
            EINSTEIN_NON_KAHLER,
            REPELLER,
            _su_interior_eigs(m, n, p),
        ),
        rec(
            "R",
            (F(m + n, 2 * (2 * m + n + p)), F(m + p, 2 * (2 * m + n + p))),
            KAHLER_EINSTEIN,
            SADDLE,
            (F(-m * (m + n) * (m + p), (2 * m + n + p) ** 2), F((m + n) * (m + p), 2 * (2 * m + n + p))),
        ),
        rec(
            "S",
            (F(1, 2), F(m + p, 2 * (m + n + 2 * p))),
            KAHLER_EINSTEIN,
            SADDLE,
            (F(-p * (m + p) * (n + p), (m + n + 2 * p) ** 2), F((m + p) * (n + p), 2 * (m + n + 2 * p))),
        ),
        rec(
            "T",
            (F(m + n, 2 * (m + 2 * n + p)), F(1, 2)),
            KAHLER_EINSTEIN,
            SADDLE,
            (F(-n * (m + n) * (n + p), (m + 2 * n + p) ** 2), F((m + n) * (n + p), 2 * (m + 2 * n + p))),
        ),
    ]


def _so_kl_saddle_eigs(ell: int) -> tuple:
    """Decimal eigenvalue expressions for the two off-center SO saddles."""
    def lam(sign: float) -> float:
        inner = ell * (ell * ((0.308642 * ell - 2.22222) * ell + 5.97531) - 7.11111) + 3.16049
        return ell / (1.33333 - ell) ** 2 * (
            (0.0555556 * ell - 0.111111) * ell + sign * 0.5 * math.sqrt(inner)
        )
    return (lam(-1.0), lam(1.0))


def _so_records(ell: int) -> list:
    rec = EquilibriumRecord
    kl = _so_kl_saddle_eigs(ell)
    return [
        rec("O", (F(0), F(0)), DEGENERATE, REPELLER, (F(ell), F(ell))),
        # the field is symmetric under swapping x and y (the first two
        # summands share a dimension), so P and Q carry the same spectrum
        rec("P", (F(0), F(1)), DEGENERATE, REPELLER, (F(ell), F(2 * (ell - 2)))),
        rec("Q", (F(1), F(0)), DEGENERATE, REPELLER, (F(ell), F(2 * (ell - 2)))),
        rec("K", (F(0), F(1, 2)), DEGENERATE, ATTRACTOR, (F(-ell, 2), F(-ell, 2))),
        rec("L", (F(1, 2), F(1, 2)), DEGENERATE, ATTRACTOR, (F(2 - ell), F(2 - ell))),
        rec("M", (F(1, 2), F(0)), DEGENERATE, ATTRACTOR, (F(-ell, 2), F(-ell, 2))),
        rec(
            "N",
            (F(ell, 4 * (ell - 1)), F(ell, 4 * (ell - 1))),
            EINSTEIN_NON_KAHLER,
            REPELLER,
            (F((ell - 2) * ell, 2 * (ell - 1) ** 2), F((ell - 2) ** 2 * ell, 4 * (ell - 1) ** 2)),
        ),
        rec("R", (F(1, 4), F(1, 4)), KAHLER_EINSTEIN, SADDLE, (F(-1, 2), F(ell, 4))),
        rec(
            "S",
            (F(ell, 6 * ell - 8), F(1, 2)),
            KAHLER_EINSTEIN,
            SADDLE,
            kl,
            eigen_rel_tol=1e-3,
        ),
        rec(
            "T",
            (F(1, 2), F(ell, 6 * ell - 8)),
            KAHLER_EINSTEIN,
            SADDLE,
            kl,
            eigen_rel_tol=1e-3,
        ),
    ]


# Off-center saddle positions (R, S) for the Type I families, five
# decimals.  The (60, 30, 10) family shares these with the (24, 12, 4)
# family: the projected field is homogeneous of degree 3 in the summand
# dimensions, so proportional dimension vectors give the identical
# system and identical equilibria.
_TYPE1_SADDLES = {
    "e8e6su2u1": ((0.46847, 0.47077), (0.28932, 0.26453)),
    "e8su8u1": ((0.33648, 0.24145), (0.39343, 0.42039)),
    "e7su5su3u1": ((0.34725, 0.23562), (0.37927, 0.41362)),
    "e7su6su2u1": ((0.44544, 0.45244), (0.30245, 0.25819)),
    "e6su3su3su2u1": ((0.32220, 0.24866), (0.41388, 0.43154)),
    "f4su3su2u1": ((0.34725, 0.23562), (0.37927, 0.41362)),
    "g2u2": ((0.21154, 0.35427), (0.46117, 0.08619)),
}


def _type1_records(fid: str) -> list:
    rec = EquilibriumRecord
    saddle_r, saddle_s = _TYPE1_SADDLES[fid]
    return [
        rec("O", (F(0), F(0)), DEGENERATE, REPELLER, None, eigen_rel_tol=None),
        rec("P", (F(0), F(1)), DEGENERATE, REPELLER, None, eigen_rel_tol=None),
        rec("Q", (F(1), F(0)), DEGENERATE, REPELLER, None, eigen_rel_tol=None),
        rec("L", (F(1, 2), F(1, 2)), DEGENERATE, ATTRACTOR, None, eigen_rel_tol=None),
        rec("M", (F(1, 2), F(0)), DEGENERATE, ATTRACTOR, None, eigen_rel_tol=None),
        rec("N", (F(1, 6), F(1, 3)), KAHLER_EINSTEIN, ATTRACTOR, None, eigen_rel_tol=None),
        rec("R", saddle_r, EINSTEIN_NON_KAHLER, SADDLE, None, False, None),
        rec("S", saddle_s, EINSTEIN_NON_KAHLER, SADDLE, None, False, None),
    ]


def reference_equilibria(family: FamilyDescriptor) -> list:
    """Known equilibria of the projected flow for the family."""
    if family.kind == KIND_SU:
        return _su_records(*family.params)
    if family.kind == KIND_SO:
        return _so_records(family.params[0])
    if family.kind == KIND_E6:
        # same dynamics as the smallest SU family
        return _su_records(1, 1, 1)
    return _type1_records(family.id)


# ----------------------------------------------------------------------
# collapsed-limit targets

GRASSMANNIAN = "Grassmannian"
COMPLEX_STRUCTURES = "ComplexStructures"
ORIENTED_GRASSMANNIAN = "OrientedGrassmannian"
SYMMETRIC_PAIR = "SymmetricPair"
BOREL_DE_SIEBENTHAL = "BorelDeSiebenthal"
POINT = "Point"


@dataclass(frozen=True)
class GHLimitLabel:
    kind: str  # "Point" or "NamedSpace"
    name: str
    space_class: str
    dim: int
    metric: str = "normal"


_POINT_LABEL = GHLimitLabel(kind="Point", name="point", space_class=POINT, dim=0)


# Collapsing m2 of a Type I flag leaves a symmetric space; collapsing m3
# leaves a maximal-rank non-symmetric space.  Names and dimensions:
_TYPE1_GH = {
    "e8e6su2u1": (("E8/(E7xSU(2))", 112), ("E8/(E6xSU(3))", 162)),
    "e8su8u1": (("E8/Spin(16)", 128), ("E8/SU(9)", 168)),
    "e7su5su3u1": (("E7/SU(8)", 70), ("E7/(SU(6)xSU(3))", 90)),
    "e7su6su2u1": (("E7/(SO(12)xSU(2))", 64), ("E7/(SU(6)xSU(3))", 90)),
    "e6su3su3su2u1": (("E6/(SU(6)xSU(2))", 40), ("E6/(SU(3)xSU(3)xSU(3))", 54)),
    "f4su3su2u1": (("F4/(Sp(3)xSU(2))", 28), ("F4/(SU(3)xSU(3))", 36)),
    "g2u2": (("G2/SO(4)", 8), ("G2/SU(3)", 6)),
}


def _su_gh(m: int, n: int, p: int) -> dict:
    s = m + n + p
    def gr(a: int, dim: int) -> GHLimitLabel:
        return GHLimitLabel("NamedSpace", f"Gr_{a}(C^{s})", GRASSMANNIAN, dim)
    # collapsing summand i removes its dimension from the total
    return {
        frozenset({1}): gr(m + n, 2 * p * (m + n)),
        frozenset({2}): gr(m + p, 2 * n * (m + p)),
        frozenset({3}): gr(n + p, 2 * m * (n + p)),
    }


def _so_gh(ell: int) -> dict:
    cx = GHLimitLabel(
        "NamedSpace", f"SO({2 * ell})/U({ell})", COMPLEX_STRUCTURES, ell * (ell - 1)
    )
    gr2 = GHLimitLabel(
        "NamedSpace",
        f"SO({2 * ell})/(SO({2 * ell - 2})xSO(2))",
        ORIENTED_GRASSMANNIAN,
        4 * (ell - 1),
    )
    return {frozenset({1}): cx, frozenset({2}): cx, frozenset({3}): gr2}


def _e6_gh() -> dict:
    label = GHLimitLabel("NamedSpace", "E6/(SO(10)xU(1))", SYMMETRIC_PAIR, 32)
    return {frozenset({1}): label, frozenset({2}): label, frozenset({3}): label}


def _type1_gh(fid: str) -> dict:
    (sym_name, sym_dim), (bds_name, bds_dim) = _TYPE1_GH[fid]
    return {
        frozenset({1}): _POINT_LABEL,
        frozenset({2}): GHLimitLabel("NamedSpace", sym_name, SYMMETRIC_PAIR, sym_dim),
        frozenset({3}): GHLimitLabel("NamedSpace", bds_name, BOREL_DE_SIEBENTHAL, bds_dim),
    }


def gh_catalog(family: FamilyDescriptor) -> dict:
    """Map each nonempty kernel pattern to its collapsed-limit label.

    Patterns whose bracket closure reaches every summand (all the
    two-element patterns, the full pattern, and additionally {1} for
    Type I) collapse to a point.
    """
    if family.kind == KIND_SU:
        table = _su_gh(*family.params)
    elif family.kind == KIND_SO:
        table = _so_gh(family.params[0])
    elif family.kind == KIND_E6:
        table = _e6_gh()
    else:
        table = _type1_gh(family.id)
    out = dict(table)
    for pattern in (
        frozenset({1, 2}),
        frozenset({1, 3}),
        frozenset({2, 3}),
        frozenset({1, 2, 3}),
    ):
        out[pattern] = _POINT_LABEL
    return out
