"""Secret-sharing demonstrations built on three-copy indistinguishability.

Two constructions:

* a (2,6) scheme: a 2-bit message picks one of four basis states, three
  copies of it are distributed over six parties; full collaboration decodes
  via the knockout tournament, while any two-copy adaptive LOCC strategy is
  provably insufficient when the encoding basis needs three copies;

* a strong (1,2) scheme: the bit picks one of two rank-2 mixtures with
  orthogonal supports; when both support projectors are entangled (NPT),
  even unlimited classical collaboration cannot reveal the bit, only a
  joint measurement can.
"""

from __future__ import annotations

import json
import warnings as _warnings
from dataclasses import dataclass

import numpy as np

from .classify import min_copies_adaptive_locc
from .entanglement import SeparabilityCertificate, pair_projector, separability_certificate
from .linalg import hermitian_eigenvalues, outer
from .protocols import elimination_tournament, outcome_distribution
from .states import BipartiteKet, OrthonormalBasis, basis_to_json

PARTY_ASSIGNMENT = ("A1", "B1", "A2", "B2", "A3", "B3")

WEAK_BASIS_WARNING = (
    "encoding basis is distinguishable from two copies under adaptive LOCC; "
    "the (2,6) scheme loses its security margin"
)


class IntegrityError(ValueError):
    """The three distributed copies are not identical."""


@dataclass(frozen=True)
class ShareSet:
    """Three identical copies of the state encoding a 2-bit message,
    distributed over six labelled parties."""

    message: int
    copies: tuple[BipartiteKet, BipartiteKet, BipartiteKet]
    party_assignment: tuple[str, ...] = PARTY_ASSIGNMENT
    security_warning: str | None = None


@dataclass(frozen=True)
class MixedShare:
    """A pair of rank-2 density operators with orthogonal supports."""

    sigma: np.ndarray
    sigma_perp: np.ndarray
    lam: float
    mu: float

    def __post_init__(self):
        for name in ("sigma", "sigma_perp"):
            m = np.asarray(getattr(self, name), dtype=complex)
            if abs(np.trace(m).real - 1.0) > 1e-10:
                raise ValueError(f"{name} is not trace 1")
            if float(np.linalg.eigvalsh(m)[0]) < -1e-10:
                raise ValueError(f"{name} is not positive semidefinite")
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        if abs(np.trace(self.sigma @ self.sigma_perp)) > 1e-10:
            raise ValueError("supports are not orthogonal")


@dataclass(frozen=True)
class StrongPairShares:
    """MixedShare plus the certificates backing its security claim."""

    share: MixedShare
    pair: tuple[int, int]
    complement: tuple[int, int]
    certificate_pair: SeparabilityCertificate
    certificate_complement: SeparabilityCertificate
    cross_trace: float
    security_pass: bool  # both support projectors NPT


def encode_2bit(message: int, b: OrthonormalBasis) -> ShareSet:
    """Encode a 2-bit message as three copies of the corresponding basis
    state.  A basis that is two-copy distinguishable still encodes, but the
    share set carries a security warning."""
    if not 0 <= int(message) <= 3:
        raise ValueError(f"message must be in 0..3, got {message}")
    message = int(message)
    warning = None
    if min_copies_adaptive_locc(b) < 3:
        warning = WEAK_BASIS_WARNING
        _warnings.warn(WEAK_BASIS_WARNING, stacklevel=2)
    state = b[message]
    return ShareSet(message=message, copies=(state, state, state),
                    security_warning=warning)


def decode_full_collaboration(s: ShareSet, b: OrthonormalBasis) -> int:
    """Recover the message by running the three-copy knockout tournament
    across the A|B cut; exact (probability-1) on intact share sets."""
    ref = s.copies[0].amplitudes
    for n, copy in enumerate(s.copies[1:], start=1):
        if np.max(np.abs(copy.amplitudes - ref)) > 1e-12:
            raise IntegrityError(f"copy {n} differs from copy 0")
    tree = elimination_tournament(b, copies=3)
    dist = outcome_distribution(tree, ref)
    return int(np.argmax(dist))


def strong_pair_shares(
    b: OrthonormalBasis, i: int, j: int, lam: float, mu: float
) -> StrongPairShares:
    """Build the rank-2 mixture pair on span{states[i], states[j]} and its
    orthocomplement, with PPT certificates for both support projectors.

    The security verdict passes only when both projectors are entangled;
    orthogonal supports always keep the pair globally distinguishable.
    """
    if i == j:
        raise ValueError("the two encoding states must differ")
    if not (0.0 < lam < 1.0) or not (0.0 < mu < 1.0):
        raise ValueError("lambda and mu must lie strictly inside (0, 1)")
    k, l = sorted(set(range(4)) - {i, j})
    sigma = lam * outer(b[i].amplitudes) + (1 - lam) * outer(b[j].amplitudes)
    sigma_perp = mu * outer(b[k].amplitudes) + (1 - mu) * outer(b[l].amplitudes)
    share = MixedShare(sigma=sigma, sigma_perp=sigma_perp, lam=lam, mu=mu)
    cert_pair = separability_certificate(pair_projector(b, i, j))
    cert_comp = separability_certificate(pair_projector(b, k, l))
    return StrongPairShares(
        share=share,
        pair=(i, j),
        complement=(k, l),
        certificate_pair=cert_pair,
        certificate_complement=cert_comp,
        cross_trace=float(abs(np.trace(sigma @ sigma_perp))),
        security_pass=not cert_pair.is_separable and not cert_comp.is_separable,
    )


def mixed_share_eigenvalues(m: MixedShare) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues of sigma and sigma_perp (each {0, 0, min(w,1-w), max})."""
    return hermitian_eigenvalues(m.sigma), hermitian_eigenvalues(m.sigma_perp)


# --- shares.v1 serialization ---------------------------------------------------

def _complex_matrix(m: np.ndarray) -> list:
    return [[[float(c.real), float(c.imag)] for c in row] for row in m]


def share_set_to_json(s: ShareSet, b: OrthonormalBasis) -> str:
    doc = {
        "schema": "shares.v1",
        "kind": "share_set",
        "message": s.message,
        "party_assignment": list(s.party_assignment),
        "copies": [
            [[float(c.real), float(c.imag)] for c in k.amplitudes] for k in s.copies
        ],
        "basis": json.loads(basis_to_json(b)),
        "security_warning": s.security_warning,
    }
    return json.dumps(doc, indent=2)


def share_set_from_json(text: str):
    from .states import basis_from_json

    doc = json.loads(text)
    if doc.get("schema") != "shares.v1" or doc.get("kind") != "share_set":
        raise ValueError("not a shares.v1 share_set document")
    copies = tuple(
        BipartiteKet(np.array([complex(re, im) for re, im in amps]))
        for amps in doc["copies"]
    )
    if len(copies) != 3:
        raise ValueError("a share set carries exactly 3 copies")
    share = ShareSet(
        message=int(doc["message"]),
        copies=copies,  # type: ignore[arg-type]
        party_assignment=tuple(doc["party_assignment"]),
        security_warning=doc.get("security_warning"),
    )
    basis = basis_from_json(json.dumps(doc["basis"]))
    return share, basis


def strong_pair_to_json(s: StrongPairShares) -> str:
    def cert(c: SeparabilityCertificate) -> dict:
        return {
            "min_pt_eigenvalue": c.min_pt_eigenvalue,
            "is_separable": c.is_separable,
            "tolerance": c.tolerance,
        }

    doc = {
        "schema": "shares.v1",
        "kind": "strong_pair",
        "pair": list(s.pair),
        "complement": list(s.complement),
        "lambda": s.share.lam,
        "mu": s.share.mu,
        "sigma": _complex_matrix(s.share.sigma),
        "sigma_perp": _complex_matrix(s.share.sigma_perp),
        "certificates": {
            "pair_projector": cert(s.certificate_pair),
            "complement_projector": cert(s.certificate_complement),
            "cross_trace": s.cross_trace,
        },
        "security": "PASS" if s.security_pass else "FAIL",
    }
    return json.dumps(doc, indent=2)
