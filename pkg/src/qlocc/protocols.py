"""Adaptive discrimination protocols and their exact / sampled execution.

A protocol is a finite tree over one or more copies of the unknown state.
Each copy is addressed by at most one projective measurement per party
(Alice first, then Bob), later measurements branch on earlier outcomes, and
every leaf names the concluded state.  Trees are executed either by exact
Born-rule propagation (no sampling) or byseeded Monte Carlo.

The workhorse is the two-orthogonal-state subroutine: any two orthogonal
bipartite pure states can be distinguished perfectly by one local round.
Writing the states through their 2x2 amplitude matrices A_psi, A_phi, the
matrix K = A_phi A_psi^dag is traceless, and any unit vector u with
u^dag K u = 0 gives an Alice basis {u, u_perp} whose conditional Bob states
are orthogonal for both outcomes.  Such a u always exists and is found in
closed form below.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_complex_vector, normalize, orthogonal_complement_qubit
from .states import BipartiteKet, OrthonormalBasis, theta_basis

ORTHILITY_ATOL = 1e-10
VANISH_TOL = 1e-9  # conditional branch weight below which a state never lands there


class NotOrthogonalError(ValueError):
    """The pair subroutine needs exactly orthogonal input states."""


class MalformedProtocolError(ValueError):
    """A protocol tree violated its structural invariants."""


@dataclass(frozen=True)
class LocalMeasurement:
    """A two-outcome projective measurement by one party."""

    party: str  # "A" or "B"
    basis: tuple[np.ndarray, np.ndarray]

    def __post_init__(self):
        if self.party not in ("A", "B"):
            raise ValueError(f"party must be 'A' or 'B', got {self.party!r}")
        b0 = as_complex_vector(self.basis[0], 2)
        b1 = as_complex_vector(self.basis[1], 2)
        g = np.array([[np.vdot(b0, b0), np.vdot(b0, b1)],
                      [np.vdot(b1, b0), np.vdot(b1, b1)]])
        if np.max(np.abs(g - np.eye(2))) > 1e-10:
            raise ValueError("measurement basis is not orthonormal")
        b0.setflags(write=False)
        b1.setflags(write=False)
        object.__setattr__(self, "basis", (b0, b1))


@dataclass(frozen=True)
class Conclude:
    state_index: int


@dataclass(frozen=True)
class Eliminate:
    state_index: int
    child: "Node"


@dataclass(frozen=True)
class Measure:
    copy_index: int
    measurement: LocalMeasurement
    children: tuple["Node", "Node"]  # by outcome 0 / 1


Node = Measure | Conclude | Eliminate


@dataclass(frozen=True)
class ProtocolTree:
    copies: int
    root: Node


@dataclass(frozen=True)
class RunOutcome:
    guessed_index: int
    transcript: tuple[tuple[int, str, int], ...]  # (copy, party, outcome)
    probability: float  # exact probability of this transcript given the input


def validate_tree(t: ProtocolTree) -> None:
    """Check structural invariants; raises MalformedProtocolError."""
    if t.copies < 1:
        raise MalformedProtocolError("a protocol needs at least one copy")

    def walk(node, used: frozenset):
        if isinstance(node, Conclude):
            if not 0 <= node.state_index < 4:
                raise MalformedProtocolError(f"conclude index {node.state_index} out of range")
            return
        if isinstance(node, Eliminate):
            walk(node.child, used)
            return
        if isinstance(node, Measure):
            if not 0 <= node.copy_index < t.copies:
                raise MalformedProtocolError(
                    f"copy index {node.copy_index} outside the {t.copies} available copies"
                )
            key = (node.copy_index, node.measurement.party)
            if key in used:
                raise MalformedProtocolError(
                    f"party {key[1]} measures copy {key[0]} twice on one path"
                )
            if len(node.children) != 2:
                raise MalformedProtocolError("measure nodes need exactly two children")
            for child in node.children:
                walk(child, used | {key})
            return
        raise MalformedProtocolError(f"unknown node type {type(node).__name__}")

    walk(t.root, frozenset())


# --- the traceless quadratic-form solver -------------------------------------

def _isotropic_unit(m: np.ndarray) -> np.ndarray:
    """Unit u with u^dag m u = 0 for a traceless 2x2 matrix m.

    Closed form: with u = (cos t, e^{i phi} sin t) the form becomes
    m00 cos(2t) + Re-part(phi) sin(2t); phi is chosen so the off-diagonal
    combination aligns with m00 in the complex plane, leaving a real
    equation for 2t.
    """
    m00 = m[0, 0]
    if abs(m00) < 1e-14:
        return np.array([1.0, 0.0], dtype=complex)
    delta = float(np.angle(m00))
    z1 = m[0, 1] * np.exp(-1j * delta)
    z2 = m[1, 0] * np.exp(-1j * delta)
    phi = math.atan2(-(z1.imag + z2.imag), z1.real - z2.real)
    g = 0.5 * (m[0, 1] * np.exp(1j * phi) + m[1, 0] * np.exp(-1j * phi))
    gr = (g * np.exp(-1j * delta)).real
    t = 0.5 * math.atan2(-abs(m00), gr)
    return np.array([math.cos(t), np.exp(1j * phi) * math.sin(t)], dtype=complex)


def _refine_isotropic(m: np.ndarray, u0: np.ndarray) -> np.ndarray:
    # grid-zoom fallback; the closed form is exact so this is a guard rail
    def vec(t, phi):
        return np.array([math.cos(t), np.exp(1j * phi) * math.sin(t)], dtype=complex)

    def residual(t, phi):
        u = vec(t, phi)
        return abs(u.conj() @ m @ u)

    best_t = math.acos(min(1.0, abs(u0[0])))
    best_phi = float(np.angle(u0[1])) if abs(u0[1]) > 1e-15 else 0.0
    span_t, span_phi = math.pi / 2, math.pi
    for _ in range(8):
        ts = np.linspace(best_t - span_t, best_t + span_t, 41)
        ps = np.linspace(best_phi - span_phi, best_phi + span_phi, 41)
        grid = np.array([[residual(t, p) for p in ps] for t in ts])
        it, ip = np.unravel_index(int(np.argmin(grid)), grid.shape)
        best_t, best_phi = float(ts[it]), float(ps[ip])
        span_t /= 8.0
        span_phi /= 8.0
        if grid[it, ip] < 1e-13:
            break
    return vec(best_t, best_phi)


def _alice_vector(m: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.abs(m).max()))
    u = _isotropic_unit(m)
    if abs(u.conj() @ m @ u) > 1e-12 * scale:
        u = _refine_isotropic(m, u)
    return u


# --- pair subroutine ----------------------------------------------------------

def _pair_subtree(psi_vec, phi_vec, copy_index, leaf):
    """Measurement subtree perfectly separating two orthogonal states on one
    copy. ``leaf(winner)`` maps 'psi'/'phi' to the follow-up node."""
    a_psi = psi_vec.reshape(2, 2)
    a_phi = phi_vec.reshape(2, 2)
    u = _alice_vector(a_phi @ a_psi.conj().T)
    u_perp = orthogonal_complement_qubit(u)
    bob_children = []
    for w in (u, u_perp):
        eta = a_psi.T @ w.conj()
        nu = a_phi.T @ w.conj()
        n_eta, n_nu = np.linalg.norm(eta), np.linalg.norm(nu)
        if n_eta > VANISH_TOL and n_nu > VANISH_TOL:
            b0 = normalize(eta)
            b1 = normalize(nu - (np.vdot(b0, nu)) * b0)  # snap to exact orthogonality
            winners = ("psi", "phi")
        elif n_eta > VANISH_TOL:
            b0 = normalize(eta)
            b1 = orthogonal_complement_qubit(b0)
            winners = ("psi", "phi")
        elif n_nu > VANISH_TOL:
            b0 = normalize(nu)
            b1 = orthogonal_complement_qubit(b0)
            winners = ("phi", "psi")
        else:  # branch unreachable for either state
            b0 = np.array([1.0, 0.0], dtype=complex)
            b1 = np.array([0.0, 1.0], dtype=complex)
            winners = ("psi", "phi")
        bob = Measure(
            copy_index,
            LocalMeasurement("B", (b0, b1)),
            (leaf(winners[0]), leaf(winners[1])),
        )
        bob_children.append(bob)
    return Measure(copy_index, LocalMeasurement("A", (u, u_perp)), tuple(bob_children))


def walgate_pair_protocol(psi: BipartiteKet, phi: BipartiteKet) -> ProtocolTree:
    """Single-copy protocol distinguishing two orthogonal states with
    certainty; concludes index 0 for the first state, 1 for the second."""
    if abs(psi.overlap(phi)) > ORTHILITY_ATOL:
        raise NotOrthogonalError(
            f"states overlap by {abs(psi.overlap(phi)):.3e}"
        )
    root = _pair_subtree(
        psi.amplitudes, phi.amplitudes, 0,
        lambda winner: Conclude(0 if winner == "psi" else 1),
    )
    return ProtocolTree(copies=1, root=root)


def elimination_tournament(b: OrthonormalBasis, copies: int = 3) -> ProtocolTree:
    """Round-per-copy knockout over the four candidates.

    Round r runs the pair subroutine on the two lowest-indexed survivors
    using copy r; the declared loser is eliminated soundly (the true state
    always wins its own pair), so after three rounds exactly one candidate
    remains and the success probability is exactly 1 on every basis state.
    """
    if copies < 3:
        raise ValueError("the four-candidate tournament needs at least 3 copies")
    vecs = [k.amplitudes for k in b]
    memo: dict[tuple, Node] = {}

    def build(candidates: tuple[int, ...], copy_index: int) -> Node:
        key = (candidates, copy_index)
        if key not in memo:
            i, j = candidates[0], candidates[1]

            def leaf(winner: str, i=i, j=j, candidates=candidates, copy_index=copy_index):
                won = i if winner == "psi" else j
                if len(candidates) == 2:
                    return Conclude(won)
                lost = j if won == i else i
                rest = tuple(c for c in candidates if c != lost)
                return Eliminate(lost, build(rest, copy_index + 1))

            memo[key] = _pair_subtree(vecs[i], vecs[j], copy_index, leaf)
        return memo[key]

    return ProtocolTree(copies=copies, root=build((0, 1, 2, 3), 0))


def bell_grouping_protocol(theta: float) -> ProtocolTree:
    """Two-copy protocol for the one-angle family.

    Copy 0: both parties measure in the computational basis; matching
    outcomes select the {|00>,|11>}-supported pair, opposite outcomes the
    other pair.  Copy 1: the pair subroutine finishes the job.
    """
    b = theta_basis(theta)
    vecs = [k.amplitudes for k in b]
    z0 = np.array([1.0, 0.0], dtype=complex)
    z1 = np.array([0.0, 1.0], dtype=complex)
    second: dict[tuple[int, int], Node] = {}

    def finish(group: tuple[int, int]) -> Node:
        if group not in second:
            i, j = group
            second[group] = _pair_subtree(
                vecs[i], vecs[j], 1,
                lambda winner, i=i, j=j: Conclude(i if winner == "psi" else j),
            )
        out = set(range(4)) - set(group)
        k, l = sorted(out)
        return Eliminate(k, Eliminate(l, second[group]))

    def bob(x: int) -> Node:
        children = tuple(
            finish((0, 1) if x == y else (2, 3)) for y in (0, 1)
        )
        return Measure(0, LocalMeasurement("B", (z0, z1)), children)

    root = Measure(0, LocalMeasurement("A", (z0, z1)), (bob(0), bob(1)))
    return ProtocolTree(copies=2, root=root)


# --- execution ----------------------------------------------------------------

def _project(ket4: np.ndarray, party: str, direction: np.ndarray) -> np.ndarray:
    """Post-measurement (unnormalized) state after projecting one party onto
    ``direction``."""
    c = ket4.reshape(2, 2)
    if party == "A":
        w = direction.conj() @ c
        return np.kron(direction, w)
    w = c @ direction.conj()
    return np.kron(w, direction)


def outcome_distribution(t: ProtocolTree, initial: np.ndarray) -> np.ndarray:
    """Probability of concluding each index when every copy starts in
    ``initial`` (a normalized 4-vector); exact Born-rule propagation."""
    validate_tree(t)
    dist = np.zeros(4)

    def walk(node, kets, weight):
        if weight < 1e-30:
            return
        if isinstance(node, Conclude):
            dist[node.state_index] += weight
            return
        if isinstance(node, Eliminate):
            walk(node.child, kets, weight)
            return
        basis = node.measurement.basis
        for x in (0, 1):
            ket = _project(kets[node.copy_index], node.measurement.party, basis[x])
            p = float(np.vdot(ket, ket).real)
            prev = float(np.vdot(kets[node.copy_index], kets[node.copy_index]).real)
            if p < 1e-30:
                continue
            nxt = list(kets)
            nxt[node.copy_index] = ket
            walk(node.children[x], nxt, weight * p / prev)

    state = as_complex_vector(initial, 4)
    walk(t.root, [state] * t.copies, 1.0)
    return dist


def success_probabilities(t: ProtocolTree, b: OrthonormalBasis) -> np.ndarray:
    """P(conclude = i | input state i) for each of the four basis states."""
    return np.array([
        outcome_distribution(t, k.amplitudes)[i] for i, k in enumerate(b)
    ])


def exact_success_probability(t: ProtocolTree, b: OrthonormalBasis) -> float:
    """Average success under the uniform prior: (1/4) sum_i P(i | i)."""
    return float(np.mean(success_probabilities(t, b)))


def sample_run(t: ProtocolTree, b: OrthonormalBasis, true_index: int, seed: int) -> RunOutcome:
    """One Born-rule sampled execution with deterministic seeded randomness."""
    if not 0 <= true_index < 4:
        raise ValueError(f"true_index {true_index} out of range")
    validate_tree(t)
    rng = np.random.default_rng(seed)
    kets = [np.array(b[true_index].amplitudes) for _ in range(t.copies)]
    transcript: list[tuple[int, str, int]] = []
    prob = 1.0
    node = t.root
    while not isinstance(node, Conclude):
        if isinstance(node, Eliminate):
            node = node.child
            continue
        meas = node.measurement
        ket = kets[node.copy_index]
        k0 = _project(ket, meas.party, meas.basis[0])
        p0 = float(np.vdot(k0, k0).real)
        p0 = min(max(p0, 0.0), 1.0)
        outcome = 0 if rng.random() < p0 else 1
        if outcome == 0:
            ket_next, p = k0, p0
        else:
            ket_next = _project(ket, meas.party, meas.basis[1])
            p = 1.0 - p0
        kets[node.copy_index] = ket_next / math.sqrt(max(p, 1e-300))
        transcript.append((node.copy_index, meas.party, outcome))
        prob *= p
        node = node.children[outcome]
    return RunOutcome(
        guessed_index=node.state_index,
        transcript=tuple(transcript),
        probability=prob,
    )


def transcript_to_csv(transcript) -> str:
    lines = ["copy,party,outcome"]
    lines += [f"{c},{p},{o}" for c, p, o in transcript]
    return "\n".join(lines) + "\n"


# --- protocol.v1 serialization --------------------------------------------------

def _node_to_dict(node: Node) -> dict:
    if isinstance(node, Conclude):
        return {"kind": "conclude", "index": node.state_index}
    if isinstance(node, Eliminate):
        return {"kind": "eliminate", "index": node.state_index,
                "child": _node_to_dict(node.child)}
    return {
        "kind": "measure",
        "copy": node.copy_index,
        "party": node.measurement.party,
        "basis": [[[float(c.real), float(c.imag)] for c in v]
                  for v in node.measurement.basis],
        "children": [_node_to_dict(c) for c in node.children],
    }


def protocol_to_json(t: ProtocolTree) -> str:
    return json.dumps(
        {"schema": "protocol.v1", "copies": t.copies, "root": _node_to_dict(t.root)},
        indent=2,
    )


def _node_from_dict(doc: dict) -> Node:
    kind = doc["kind"]
    if kind == "conclude":
        return Conclude(int(doc["index"]))
    if kind == "eliminate":
        return Eliminate(int(doc["index"]), _node_from_dict(doc["child"]))
    if kind == "measure":
        basis = tuple(
            np.array([complex(re, im) for re, im in v]) for v in doc["basis"]
        )
        return Measure(
            int(doc["copy"]),
            LocalMeasurement(doc["party"], basis),  # type: ignore[arg-type]
            tuple(_node_from_dict(c) for c in doc["children"]),  # type: ignore[arg-type]
        )
    raise ValueError(f"unknown node kind {kind!r}")


def protocol_from_json(text: str) -> ProtocolTree:
    doc = json.loads(text)
    if doc.get("schema") != "protocol.v1":
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    t = ProtocolTree(copies=int(doc["copies"]), root=_node_from_dict(doc["root"]))
    validate_tree(t)
    return t
