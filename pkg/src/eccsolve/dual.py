"""Dual certificates, fractional solutions, and exact feasibility verification.

Verification is exact rational arithmetic with no tolerance: the solvers use
the same arithmetic, so a feasible certificate verifies exactly. A feasible
dual certificate's objective lower-bounds the integral optimum by weak
duality, which is what turns every solver run into a per-run approximation
proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import EdgeColoredHypergraph, Problem, ProblemSpec, ValidationError
from .rational import Q, Q0


class CertificateError(Exception):
    """A certificate that fails verification (CLI exit code 4)."""


@dataclass(frozen=True)
class DualCertificate:
    """Dual values (alpha, beta, lambda) with cached per-edge levels.

    beta is stored per (edge, member-slot) incidence, aligned with
    EdgeColoredHypergraph.edge_members, so both dual constraint families are
    verifiable exactly. levels[e] must equal sum(beta[e]).
    """

    alpha: tuple[Q, ...]
    beta: tuple[tuple[Q, ...], ...]
    lam: Q
    levels: tuple[Q, ...]

    @classmethod
    def zero(cls, h: EdgeColoredHypergraph) -> "DualCertificate":
        return cls(
            alpha=(Q0,) * h.node_count,
            beta=tuple((Q0,) * len(m) for m in h.edge_members),
            lam=Q0,
            levels=(Q0,) * h.num_edges,
        )

    @classmethod
    def from_beta(
        cls, h: EdgeColoredHypergraph, alpha, beta, lam=Q0
    ) -> "DualCertificate":
        """Build with levels computed from beta."""
        beta_t = tuple(tuple(row) for row in beta)
        levels = tuple(sum(row, Q0) for row in beta_t)
        return cls(tuple(alpha), beta_t, Q(lam), levels)

    def beta_at(self, h: EdgeColoredHypergraph, e: int, v: int) -> Q:
        return self.beta[e][h.edge_members[e].index(v)]


@dataclass(frozen=True)
class DualVerdict:
    feasible: bool
    violations: tuple[str, ...]


def _check_cert_dims(h: EdgeColoredHypergraph, cert: DualCertificate) -> None:
    if len(cert.alpha) != h.node_count or len(cert.levels) != h.num_edges:
        raise ValidationError("certificate dimensions do not match instance")
    if len(cert.beta) != h.num_edges or any(
        len(row) != len(m) for row, m in zip(cert.beta, h.edge_members)
    ):
        raise ValidationError("certificate beta shape does not match edge members")


def verify_dual(
    h: EdgeColoredHypergraph, spec: ProblemSpec, cert: DualCertificate
) -> DualVerdict:
    """Check every dual constraint of the relevant LP, exactly.

    Common: sum_{e in delta_c(v)} beta_{e,v} <= alpha_v, level_e <= w_e,
    nonnegativity. Robust adds sum_{e in delta(v)} beta_{e,v} - alpha_v
    <= lambda; Global adds alpha_v <= lambda.
    """
    _check_cert_dims(h, cert)
    bad: list[str] = []
    if cert.lam < 0:
        bad.append(f"lambda {cert.lam} is negative")
    if spec.kind is Problem.LOCAL and cert.lam != 0:
        bad.append(f"lambda must be 0 for the local dual, got {cert.lam}")
    for v, a in enumerate(cert.alpha):
        if a < 0:
            bad.append(f"node {v}: alpha {a} is negative")
    for e, row in enumerate(cert.beta):
        lvl = Q0
        for slot, b in enumerate(row):
            if b < 0:
                bad.append(f"edge {e} slot {slot}: beta {b} is negative")
            lvl += b
        if lvl != cert.levels[e]:
            bad.append(f"edge {e}: cached level {cert.levels[e]} != beta sum {lvl}")
        if lvl > h.edge_weights[e]:
            bad.append(f"edge {e}: level {lvl} exceeds weight {h.edge_weights[e]}")
    for v in range(h.node_count):
        b_total = Q0
        for c, pairs in h._color_pairs[v].items():
            b_color = Q0
            for e, slot in pairs:
                b_color += cert.beta[e][slot]
            b_total += b_color
            if b_color > cert.alpha[v]:
                bad.append(
                    f"node {v} color {c}: beta sum {b_color} exceeds alpha {cert.alpha[v]}"
                )
        if spec.kind is Problem.ROBUST and b_total - cert.alpha[v] > cert.lam:
            bad.append(
                f"node {v}: beta total - alpha = {b_total - cert.alpha[v]} exceeds lambda {cert.lam}"
            )
        if spec.kind is Problem.GLOBAL and cert.alpha[v] > cert.lam:
            bad.append(f"node {v}: alpha {cert.alpha[v]} exceeds lambda {cert.lam}")
    return DualVerdict(not bad, tuple(bad))


def dual_objective(
    h: EdgeColoredHypergraph, spec: ProblemSpec, cert: DualCertificate
) -> Q:
    """The dual LP objective: a lower bound on OPT for feasible certificates.

    Local: sum beta - sum_v b_v alpha_v. Robust/Global: sum beta - sum alpha
    - lambda * b.
    """
    _check_cert_dims(h, cert)
    beta_sum = sum(cert.levels, Q0)
    if spec.kind is Problem.LOCAL:
        return beta_sum - sum(
            (spec.budget_for(v) * cert.alpha[v] for v in range(h.node_count)), Q0
        )
    return beta_sum - sum(cert.alpha, Q0) - cert.lam * spec.budget


def mistakes_are_tight(
    h: EdgeColoredHypergraph, cert: DualCertificate, mistake_edges
) -> bool:
    """Solver outputs only mis-color tight edges (level == weight); checkable
    against any mistake set."""
    return all(cert.levels[e] == h.edge_weights[e] for e in mistake_edges)


# -- fractional (primal) solutions -------------------------------------------


@dataclass(frozen=True)
class FractionalSolution:
    """LP primal values: x per (node, color) sparse, y per edge, z per node
    (Robust/Global only)."""

    x: dict[tuple[int, int], Q]
    y: tuple[Q, ...]
    z: Optional[tuple[Q, ...]] = None

    def __post_init__(self):
        for (v, c), val in self.x.items():
            if not 0 <= val <= 1:
                raise ValidationError(f"x[{v},{c}] = {val} outside [0, 1]")
        for e, val in enumerate(self.y):
            if not 0 <= val <= 1:
                raise ValidationError(f"y[{e}] = {val} outside [0, 1]")
        if self.z is not None and any(val < 0 for val in self.z):
            raise ValidationError("z values must be nonnegative")

    def x_at(self, v: int, c: int) -> Q:
        return self.x.get((v, c), Q0)


@dataclass(frozen=True)
class FractionalVerdict:
    feasible: bool
    cost: Q
    violations: tuple[str, ...]


def verify_fractional(
    h: EdgeColoredHypergraph, spec: ProblemSpec, frac: FractionalSolution
) -> FractionalVerdict:
    """Exact feasibility check against the relevant primal LP, plus its cost.

    Local:  sum_c x_{v,c} <= b_v;              x_{v,c_e} + y_e >= 1.
    Robust: z_v + sum_c x_{v,c} <= 1;    z_v + x_{v,c_e} + y_e >= 1; sum z <= b.
    Global: sum_c x_{v,c} <= z_v + 1;          x_{v,c_e} + y_e >= 1; sum z <= b.
    """
    if len(frac.y) != h.num_edges:
        raise ValidationError("fractional y length does not match edge count")
    needs_z = spec.kind is not Problem.LOCAL
    if needs_z and (frac.z is None or len(frac.z) != h.node_count):
        raise ValidationError(f"{spec.kind.value} fractional solution needs z per node")
    for (v, c) in frac.x:
        if not (0 <= v < h.node_count and 0 <= c < h.num_colors):
            raise ValidationError(f"x index ({v}, {c}) out of range")

    bad: list[str] = []
    x_row_sum = [Q0] * h.node_count
    for (v, _c), val in frac.x.items():
        x_row_sum[v] += val
    for v in range(h.node_count):
        if spec.kind is Problem.LOCAL:
            if x_row_sum[v] > spec.budget_for(v):
                bad.append(f"node {v}: sum x = {x_row_sum[v]} exceeds budget {spec.budget_for(v)}")
        elif spec.kind is Problem.ROBUST:
            if frac.z[v] + x_row_sum[v] > 1:
                bad.append(f"node {v}: z + sum x = {frac.z[v] + x_row_sum[v]} exceeds 1")
        else:
            if x_row_sum[v] > frac.z[v] + 1:
                bad.append(f"node {v}: sum x = {x_row_sum[v]} exceeds z + 1 = {frac.z[v] + 1}")
    cost = Q0
    for e, members in enumerate(h.edge_members):
        c = h.edge_colors[e]
        cost += h.edge_weights[e] * frac.y[e]
        for v in members:
            covered = frac.x_at(v, c) + frac.y[e]
            if spec.kind is Problem.ROBUST:
                covered += frac.z[v]
            if covered < 1:
                bad.append(f"edge {e} node {v}: coverage {covered} below 1")
    if needs_z:
        z_sum = sum(frac.z, Q0)
        if z_sum > spec.budget:
            bad.append(f"sum z = {z_sum} exceeds budget {spec.budget}")
    return FractionalVerdict(not bad, cost, tuple(bad))
