"""Decision procedures for multi-copy adaptive discrimination of four-state
two-qubit ensembles.

Minimum copies under adaptive LOCC is decided by a three-way case split on
the first-copy conclusion:

* one copy iff all four states are product;
* two copies via a 1-vs-3 elimination whose three-state remainder contains
  at most one entangled state;
* two copies via a 2-vs-2 split whose two rank-2 projectors are both
  separable;
* otherwise three copies (always sufficient; see protocols.elimination_tournament).

Under adaptive separable operations the 2-vs-2 condition is unchanged, and
the 1-vs-3 route instead requires the three-state remainder to satisfy the
anti-parallel-eigenvalue and concurrence-sum conditions checked by
``duan_three_state_sep``.

State indices are 0-based throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import json

import numpy as np

from .entanglement import (
    CONCURRENCE_ZERO_TOL,
    SeparabilityCertificate,
    concurrence,
    pair_projector,
    separability_certificate,
)
from .states import BipartiteKet, FamilyParams, OrthonormalBasis, coefficient_matrix

ANTIPARALLEL_IM_TOL = 1e-8
DUAN_SUM_TOL = 1e-9
REGION_BOUNDARY_TOL = 1e-9
NEAR_FACTOR = 10.0  # warnings trigger within 10x of each decision tolerance

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SPLITS = ((0, 1), (0, 2), (0, 3))  # each 2-vs-2 split, named by the pair holding 0

ASSUMPTION_LOCC_ELIMINATION = (
    "a conclusive 1-vs-3 elimination on the first copy is taken to be "
    "LOCC-achievable for every orthonormal basis"
)
ASSUMPTION_SEP_ELIMINATION = (
    "a conclusive 1-vs-3 elimination on the first copy is taken to be "
    "achievable under separable operations for every orthonormal basis"
)


class DegenerateFamilyError(ValueError):
    """alpha or beta sits at 0 or pi/2 where the region ratios are undefined."""


def complement_pair(i: int, j: int) -> tuple[int, int]:
    k, l = sorted(set(range(4)) - {i, j})
    return k, l


@dataclass(frozen=True)
class LoccCategory:
    """Outcome of the adaptive-LOCC case split.

    kind is one of 'one_copy', 'two_copy_elimination', 'two_copy_pair_split',
    'three_copy'. For elimination, ``eliminated`` is the state singled out on
    the first copy; for a pair split, ``pair`` is the two-state group (its
    complement group is the other two states).
    """

    kind: str
    eliminated: int | None = None
    pair: tuple[int, int] | None = None

    @property
    def min_copies(self) -> int:
        return {"one_copy": 1, "two_copy_elimination": 2,
                "two_copy_pair_split": 2, "three_copy": 3}[self.kind]


@dataclass(frozen=True)
class Region:
    """Position of (alpha, beta, gamma) relative to the two product surfaces
    tan^2(gamma) = sin(2 beta)/sin(2 alpha) and its reciprocal.

    name is 'R_I' | 'R_II' | 'R_III' | 'R_IV' | 'boundary'; on a boundary,
    ``which`` records the state(s) forced product: 'a3', 'a4' or 'a3+a4'.
    """

    name: str
    which: str | None = None


@dataclass(frozen=True)
class SepWitness:
    """How the separable-operations copy count was achieved.

    kind: 'all_product' | 'pair_split' | 'elimination' | 'locc_protocol' | 'none'.
    """

    kind: str
    eliminated: int | None = None
    pair: tuple[int, int] | None = None


@dataclass(frozen=True)
class ClassificationReport:
    label: str
    concurrences: tuple[float, float, float, float]
    entangled_count: int
    locc_category: LoccCategory
    min_copies_locc: int
    min_copies_sep: int
    sep_witness: SepWitness
    certificates: tuple[tuple[tuple[int, int], SeparabilityCertificate], ...]
    region: Region | None = None
    params: FamilyParams | None = None
    assumptions: tuple[str, ...] = ()
    boundary_warnings: tuple[str, ...] = ()


def _concurrences(b: OrthonormalBasis) -> list[float]:
    return [concurrence(k) for k in b]


def _certificates(b: OrthonormalBasis):
    return {(i, j): separability_certificate(pair_projector(b, i, j)) for i, j in PAIRS}


def _pair_split_witness(certs) -> tuple[int, int] | None:
    for i, j in SPLITS:
        if certs[(i, j)].is_separable and certs[complement_pair(i, j)].is_separable:
            return (i, j)
    return None


def _locc_category(cons, certs_lazy) -> LoccCategory:
    entangled = [c >= CONCURRENCE_ZERO_TOL for c in cons]
    if not any(entangled):
        return LoccCategory("one_copy")
    for l in range(4):
        if sum(entangled[k] for k in range(4) if k != l) <= 1:
            return LoccCategory("two_copy_elimination", eliminated=l)
    witness = _pair_split_witness(certs_lazy())
    if witness is not None:
        return LoccCategory("two_copy_pair_split", pair=witness)
    return LoccCategory("three_copy")


def locc_category(b: OrthonormalBasis) -> LoccCategory:
    """Case split deciding the adaptive-LOCC copy count for a basis."""
    cons = _concurrences(b)
    return _locc_category(cons, lambda: _certificates(b))


def min_copies_adaptive_locc(b: OrthonormalBasis) -> int:
    """Minimum copies for perfect discrimination under adaptive LOCC (1, 2 or 3)."""
    return locc_category(b).min_copies


def _duan_detail(states3, complement: BipartiteKet):
    """Check SEP-distinguishability of three orthogonal states whose
    orthocomplement is ``complement``.

    Returns (ok, sum_residual, worst_ratio_im): the concurrence-sum residual
    and the worst imaginary part of the eigenvalue ratios are exposed for
    boundary reporting.
    """
    cons = [concurrence(k) for k in states3]
    c_phi = concurrence(complement)
    if c_phi < CONCURRENCE_ZERO_TOL:
        # singular complement: the sum condition forces all three product
        ok = all(c < CONCURRENCE_ZERO_TOL for c in cons)
        return ok, sum(cons) - c_phi, 0.0
    phi_inv = np.linalg.inv(coefficient_matrix(complement))
    anti_ok = True
    worst_im = 0.0
    for k, c in zip(states3, cons):
        if c < CONCURRENCE_ZERO_TOL:
            continue
        lam = np.linalg.eigvals(coefficient_matrix(k) @ phi_inv)
        lam = sorted(lam, key=abs)
        ratio = lam[0] / lam[1]
        worst_im = max(worst_im, abs(ratio.imag))
        if not (abs(ratio.imag) < ANTIPARALLEL_IM_TOL and ratio.real < 0.0):
            anti_ok = False
    residual = sum(cons) - c_phi
    return anti_ok and abs(residual) < DUAN_SUM_TOL, residual, worst_im


def duan_three_state_sep(states, complement: BipartiteKet) -> bool:
    """True iff three orthogonal states (complement given) are perfectly
    distinguishable by separable operations: every entangled member must have
    anti-parallel eigenvalues against the complement's coefficient matrix and
    the concurrences must sum to the complement's."""
    states = tuple(states)
    if len(states) != 3:
        raise ValueError("expected exactly 3 states")
    ok, _, _ = _duan_detail(states, complement)
    return ok


def _sep_decision(b: OrthonormalBasis, cons, certs, locc: LoccCategory):
    """Returns (min_copies, witness, assumptions, warnings)."""
    warnings: list[str] = []
    if all(c < CONCURRENCE_ZERO_TOL for c in cons):
        return 1, SepWitness("all_product"), (), warnings
    witness = _pair_split_witness(certs)
    if witness is not None:
        return 2, SepWitness("pair_split", pair=witness), (), warnings
    for l in range(4):
        triple = [b[k] for k in range(4) if k != l]
        ok, residual, _ = _duan_detail(triple, b[l])
        if DUAN_SUM_TOL <= abs(residual) < NEAR_FACTOR * DUAN_SUM_TOL:
            warnings.append(
                f"concurrence-sum residual {residual:.3e} for elimination of "
                f"state {l} is within 10x of tolerance"
            )
        if ok:
            return 2, SepWitness("elimination", eliminated=l), (ASSUMPTION_SEP_ELIMINATION,), warnings
    if locc.min_copies <= 2:
        # any 2-copy LOCC scheme is itself a separable scheme
        return 2, SepWitness("locc_protocol"), (), warnings
    return 3, SepWitness("none"), (), warnings


def min_copies_adaptive_sep(b: OrthonormalBasis) -> int:
    """Minimum copies for perfect discrimination under adaptive separable
    operations (1, 2 or 3); never exceeds the LOCC count."""
    cons = _concurrences(b)
    certs = _certificates(b)
    cat = _locc_category(cons, lambda: certs)
    value, _, _, _ = _sep_decision(b, cons, certs, cat)
    return value


def region(p: FamilyParams) -> Region:
    """Classify (alpha, beta, gamma) against the two product surfaces.

    Raises DegenerateFamilyError when alpha or beta sits at 0 or pi/2, where
    sin(2 alpha)/sin(2 beta) ratios degenerate.
    """
    s2a, s2b = math.sin(2 * p.alpha), math.sin(2 * p.beta)
    if min(s2a, s2b) < 1e-12:
        raise DegenerateFamilyError(
            "region undefined for alpha or beta at 0 or pi/2"
        )
    r_a3 = s2b / s2a  # saturating tan^2(gamma) here makes state 3 product
    r_a4 = s2a / s2b  # and here state 4
    t = math.tan(p.gamma) ** 2
    on_a3 = abs(t - r_a3) < REGION_BOUNDARY_TOL
    on_a4 = abs(t - r_a4) < REGION_BOUNDARY_TOL
    if on_a3 and on_a4:
        return Region("boundary", "a3+a4")
    if on_a3:
        return Region("boundary", "a3")
    if on_a4:
        return Region("boundary", "a4")
    if r_a3 >= t >= r_a4:
        return Region("R_I")
    if r_a4 >= t >= r_a3:
        return Region("R_II")
    if t >= max(r_a3, r_a4):
        return Region("R_III")
    return Region("R_IV")


def gamma_star(alpha: float, beta: float) -> float:
    """The gamma making the fourth family state product:
    arctan(sqrt(sin 2 alpha / sin 2 beta))."""
    s2a, s2b = math.sin(2 * alpha), math.sin(2 * beta)
    if min(s2a, s2b) < 1e-12:
        raise DegenerateFamilyError("gamma_star undefined for degenerate angles")
    return math.atan(math.sqrt(s2a / s2b))


def _boundary_warnings(cons, certs, p: FamilyParams | None) -> list[str]:
    out = []
    for k, c in enumerate(cons):
        if 0.1 * CONCURRENCE_ZERO_TOL <= c < NEAR_FACTOR * CONCURRENCE_ZERO_TOL:
            out.append(
                f"concurrence {c:.3e} of state {k} is within 10x of the product threshold"
            )
    for (i, j), cert in certs.items():
        if -NEAR_FACTOR * cert.tolerance <= cert.min_pt_eigenvalue <= -0.1 * cert.tolerance:
            out.append(
                f"min PT eigenvalue {cert.min_pt_eigenvalue:.3e} of pair "
                f"({i},{j}) is within 10x of the separability threshold"
            )
    if p is not None:
        try:
            s2a, s2b = math.sin(2 * p.alpha), math.sin(2 * p.beta)
            if min(s2a, s2b) >= 1e-12:
                t = math.tan(p.gamma) ** 2
                for r in (s2b / s2a, s2a / s2b):
                    if REGION_BOUNDARY_TOL <= abs(t - r) < NEAR_FACTOR * REGION_BOUNDARY_TOL:
                        out.append(
                            f"tan^2(gamma) is within 10x of a region boundary "
                            f"(|t - r| = {abs(t - r):.3e})"
                        )
        except ValueError:
            pass
    return out


def analyze(b: OrthonormalBasis, p: FamilyParams | None = None) -> ClassificationReport:
    """Full classification of a basis: concurrences, the six pair-projector
    certificates, LOCC and SEP copy counts, and (for three-angle family
    inputs) the parameter region."""
    cons = _concurrences(b)
    certs = _certificates(b)
    cat = _locc_category(cons, lambda: certs)
    assumptions: list[str] = []
    if cat.kind == "two_copy_elimination":
        assumptions.append(ASSUMPTION_LOCC_ELIMINATION)
    sep_value, sep_wit, sep_assumptions, sep_warnings = _sep_decision(b, cons, certs, cat)
    assumptions.extend(a for a in sep_assumptions if a not in assumptions)
    reg = region(p) if p is not None else None
    warnings = _boundary_warnings(cons, certs, p) + sep_warnings
    return ClassificationReport(
        label=b.label,
        concurrences=tuple(cons),
        entangled_count=sum(c >= CONCURRENCE_ZERO_TOL for c in cons),
        locc_category=cat,
        min_copies_locc=cat.min_copies,
        min_copies_sep=sep_value,
        sep_witness=sep_wit,
        certificates=tuple(sorted(certs.items())),
        region=reg,
        params=p,
        assumptions=tuple(assumptions),
        boundary_warnings=tuple(warnings),
    )


# --- report.v1 serialization -------------------------------------------------

def report_to_dict(r: ClassificationReport) -> dict:
    cat: dict = {"kind": r.locc_category.kind}
    if r.locc_category.eliminated is not None:
        cat["eliminated_index"] = r.locc_category.eliminated
    if r.locc_category.pair is not None:
        cat["pair"] = list(r.locc_category.pair)
    wit: dict = {"kind": r.sep_witness.kind}
    if r.sep_witness.eliminated is not None:
        wit["eliminated_index"] = r.sep_witness.eliminated
    if r.sep_witness.pair is not None:
        wit["pair"] = list(r.sep_witness.pair)
    doc = {
        "schema": "report.v1",
        "label": r.label,
        "concurrences": list(r.concurrences),
        "entangled_count": r.entangled_count,
        "locc_category": cat,
        "min_copies_locc": r.min_copies_locc,
        "min_copies_sep": r.min_copies_sep,
        "sep_witness": wit,
        "region": None if r.region is None else
            {"name": r.region.name, "which": r.region.which},
        "certificates": [
            {
                "pair": list(pair),
                "min_pt_eigenvalue": cert.min_pt_eigenvalue,
                "is_separable": cert.is_separable,
                "tolerance": cert.tolerance,
            }
            for pair, cert in r.certificates
        ],
        "params": None if r.params is None else {
            "alpha": r.params.alpha, "beta": r.params.beta,
            "gamma": r.params.gamma, "theta": r.params.theta,
        },
        "assumptions": list(r.assumptions),
        "boundary_warnings": list(r.boundary_warnings),
    }
    return doc


def report_to_json(r: ClassificationReport) -> str:
    return json.dumps(report_to_dict(r), indent=2)
