"""Quantum channel representations and structural conversions.

A channel is carried as a :class:`KrausChannel`: a list of d_out x d_in
operators N_i with sum_i N_i^dag N_i = I. Conversions to the Stinespring
isometry, the complementary channel, and the (trace-normalized) Choi matrix
all fix the environment basis to the Kraus index basis so results are
reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from . import qmat
from .config import TOL, max_dim
from .errors import DimMismatch, DomainError, NotTracePreserving, SizeLimit


@dataclass
class KrausChannel:
    """CPTP map in Kraus form. ``kraus[i]`` has shape (dim_out, dim_in)."""

    kraus: list
    dim_in: int
    dim_out: int
    name: str = ""
    # set by loaders/constructors when the operator set fails trace
    # preservation as given; flagged channels are never silently repaired
    flagged: bool = False

    def __post_init__(self):
        if not self.kraus:
            raise DimMismatch("channel needs at least one Kraus operator")
        ops = []
        for k in self.kraus:
            k = qmat.as_matrix(k)
            if k.shape != (self.dim_out, self.dim_in):
                raise DimMismatch(
                    f"Kraus operator shape {k.shape} != ({self.dim_out}, {self.dim_in})"
                )
            ops.append(k)
        self.kraus = ops

    @property
    def dim_env(self) -> int:
        return len(self.kraus)

    def completeness(self) -> np.ndarray:
        """sum_i N_i^dag N_i (should be the identity for a TP channel)."""
        s = np.zeros((self.dim_in, self.dim_in), dtype=np.complex128)
        for k in self.kraus:
            s += k.conj().T @ k
        return s

    def tp_residual(self) -> float:
        return float(np.max(np.abs(self.completeness() - np.eye(self.dim_in))))


@dataclass
class ChoiMatrix:
    matrix: np.ndarray
    dim_in: int
    dim_out: int


@dataclass
class StinespringIsometry:
    v: np.ndarray  # (dim_out * dim_env) x dim_in, output factor slow
    dim_in: int
    dim_out: int
    dim_env: int


@dataclass
class ValidationReport:
    tp_residual: float
    cp_ok: bool
    choi_min_eig: float
    flagged: bool = False

    def as_dict(self) -> dict:
        return {
            "tp_residual": self.tp_residual,
            "cp_ok": self.cp_ok,
            "choi_min_eig": self.choi_min_eig,
            "flagged": self.flagged,
        }


def validate(ch: KrausChannel) -> ValidationReport:
    """Report trace preservation and Choi positivity; never raises on TP failure."""
    tp = ch.tp_residual()
    choi = to_choi(ch, check_tp=False)
    w, _ = qmat.eigh(choi.matrix)
    return ValidationReport(
        tp_residual=tp,
        cp_ok=True,  # Kraus form is CP by construction
        choi_min_eig=float(w[-1]),
        flagged=tp > TOL.residual_tol,
    )


def apply(ch: KrausChannel, rho) -> np.ndarray:
    rho = qmat.check_square(rho)
    if rho.shape[0] != ch.dim_in:
        raise DimMismatch(f"state side {rho.shape[0]} != channel dim_in {ch.dim_in}")
    out = np.zeros((ch.dim_out, ch.dim_out), dtype=np.complex128)
    for k in ch.kraus:
        out += k @ rho @ k.conj().T
    return out


def stinespring(ch: KrausChannel) -> StinespringIsometry:
    """V = sum_i N_i (x) |i>_E, environment basis = Kraus index basis."""
    if ch.tp_residual() > TOL.residual_tol:
        raise NotTracePreserving(
            f"tp_residual {ch.tp_residual():.3e} > {TOL.residual_tol}"
        )
    d_e = ch.dim_env
    v = np.zeros((ch.dim_out * d_e, ch.dim_in), dtype=np.complex128)
    for i, k in enumerate(ch.kraus):
        e = np.zeros((d_e, 1), dtype=np.complex128)
        e[i, 0] = 1.0
        v += np.kron(k, e)
    return StinespringIsometry(v=v, dim_in=ch.dim_in, dim_out=ch.dim_out, dim_env=d_e)


def complementary(ch: KrausChannel) -> KrausChannel:
    """Channel to the environment: rho -> Tr_B(V rho V^dag) in Kraus form.

    The Kraus operators M_b (one per output-basis index b of the original
    channel) have entries (M_b)[i, a] = (N_i)[b, a].
    """
    if ch.tp_residual() > TOL.residual_tol:
        raise NotTracePreserving(
            f"tp_residual {ch.tp_residual():.3e} > {TOL.residual_tol}"
        )
    d_e = ch.dim_env
    stack = np.stack(ch.kraus)  # (d_e, d_out, d_in)
    ops = [np.ascontiguousarray(stack[:, b, :]) for b in range(ch.dim_out)]
    return KrausChannel(
        kraus=ops,
        dim_in=ch.dim_in,
        dim_out=d_e,
        name=f"complementary({ch.name})" if ch.name else "complementary",
    )


def to_choi(ch: KrausChannel, check_tp: bool = True) -> ChoiMatrix:
    """Trace-normalized Choi state: (I (x) N) on the maximally entangled input.

    Factor order is input (slow) then output (fast).
    """
    if check_tp and ch.tp_residual() > TOL.residual_tol:
        raise NotTracePreserving(
            f"tp_residual {ch.tp_residual():.3e} > {TOL.residual_tol}"
        )
    d_a, d_b = ch.dim_in, ch.dim_out
    j = np.zeros((d_a * d_b, d_a * d_b), dtype=np.complex128)
    # (I (x) N)|Psi><Psi| = (1/d_a) sum_k (I (x) N_k) |Omega><Omega| (I (x) N_k)^dag
    for k in ch.kraus:
        w = k.T.reshape(-1)  # vector with entries w[(a, b)] = k[b, a]
        j += np.outer(w, w.conj())
    return ChoiMatrix(matrix=j / d_a, dim_in=d_a, dim_out=d_b)


def choi_rank(c: ChoiMatrix, cutoff: float = TOL.pinv_cutoff) -> int:
    w, _ = qmat.eigh(c.matrix)
    top = float(w[0]) if w.size else 0.0
    if top <= 0:
        return 0
    return int(np.sum(w > cutoff * top))


def kraus_from_choi(
    matrix: np.ndarray, dim_in: int, dim_out: int, cutoff: float = TOL.pinv_cutoff
) -> list:
    """Extract Kraus operators from an (unnormalized or normalized) Choi matrix.

    Assumes input-slow/output-fast factor order. Eigenvalues below
    cutoff * lambda_max are dropped; small negative tails are clipped.
    """
    w, v = qmat.eigh((matrix + matrix.conj().T) / 2)
    top = float(w[0]) if w.size else 0.0
    ops = []
    for lam, col in zip(w, v.T):
        if top <= 0 or lam <= cutoff * top:
            break
        ops.append(np.sqrt(lam) * col.reshape(dim_in, dim_out).T)
    if not ops:
        ops = [np.zeros((dim_out, dim_in), dtype=np.complex128)]
    return ops


def compose(first: KrausChannel, then: KrausChannel) -> KrausChannel:
    """Sequential composition; ``first`` is applied first."""
    if first.dim_out != then.dim_in:
        raise DimMismatch(
            f"cannot compose: first.dim_out={first.dim_out} != then.dim_in={then.dim_in}"
        )
    ops = []
    for m in then.kraus:
        for n in first.kraus:
            p = m @ n
            if np.linalg.norm(p) >= 1e-12:  # prune numerically-zero products
                ops.append(p)
    if not ops:
        ops = [np.zeros((then.dim_out, first.dim_in), dtype=np.complex128)]
    return KrausChannel(
        kraus=ops,
        dim_in=first.dim_in,
        dim_out=then.dim_out,
        name=f"{first.name};{then.name}" if first.name or then.name else "",
        flagged=first.flagged or then.flagged,
    )


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    cap = max_dim()
    if a.dim_out * b.dim_out > cap or a.dim_in * b.dim_in > cap:
        raise SizeLimit(f"tensor product exceeds side cap {cap}")
    ops = []
    for ka in a.kraus:
        for kb in b.kraus:
            p = np.kron(ka, kb)
            if np.linalg.norm(p) >= 1e-12:
                ops.append(p)
    return KrausChannel(
        kraus=ops,
        dim_in=a.dim_in * b.dim_in,
        dim_out=a.dim_out * b.dim_out,
        name=f"{a.name}(x){b.name}" if a.name or b.name else "",
        flagged=a.flagged or b.flagged,
    )


def conjugate(ch: KrausChannel) -> KrausChannel:
    """Entrywise complex conjugation of every Kraus operator."""
    return replace(ch, kraus=[k.conj() for k in ch.kraus])


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(kraus=[np.eye(d)], dim_in=d, dim_out=d, name=f"identity_{d}")


def minimal_kraus(ch: KrausChannel) -> KrausChannel:
    """Re-extract a minimal Kraus set via the Choi eigendecomposition."""
    choi = to_choi(ch, check_tp=False)
    ops = kraus_from_choi(
        choi.matrix * ch.dim_in, ch.dim_in, ch.dim_out, TOL.pinv_cutoff
    )
    return replace(ch, kraus=ops)


def flagged_direct_sum(x: float, inner: KrausChannel, flag_dim_out: int | None = None) -> KrausChannel:
    """Flag-qubit direct sum: rho -> x |0><0| (x) pi Tr(rho) + (1-x) |1><1| (x) inner(rho).

    The x-branch is a trace-and-replace channel onto the maximally mixed
    state pi on the inner output block (the construction leaves the
    replacement state free; maximally mixed keeps the map CPTP with the
    intended 2 (x) d_out layout).
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must be in [0, 1], got {x}")
    d_in, d_block = inner.dim_in, inner.dim_out
    if flag_dim_out is not None and flag_dim_out != 2 * d_block:
        raise DimMismatch(
            f"flag_dim_out {flag_dim_out} != 2 * inner.dim_out = {2 * d_block}"
        )
    flag0 = np.zeros((2, 1), dtype=np.complex128)
    flag0[0, 0] = 1.0
    flag1 = np.zeros((2, 1), dtype=np.complex128)
    flag1[1, 0] = 1.0
    ops = []
    if x > 0:
        coef = np.sqrt(x / d_block)
        for m in range(d_block):
            for k in range(d_in):
                op = np.zeros((d_block, d_in), dtype=np.complex128)
                op[m, k] = coef
                ops.append(np.kron(flag0, op))
    if x < 1:
        for k in inner.kraus:
            ops.append(np.kron(flag1, np.sqrt(1.0 - x) * k))
    return KrausChannel(
        kraus=ops,
        dim_in=d_in,
        dim_out=2 * d_block,
        name=f"flagged_direct_sum(x={x},{inner.name})",
        flagged=inner.flagged,
    )


# ---------------------------------------------------------------------------
# Channel JSON interchange format
# ---------------------------------------------------------------------------
# {"name": str, "dim_in": int, "dim_out": int,
#  "kraus": [[[[re, im], ...cols], ...rows], ...ops]}


def channel_to_dict(ch: KrausChannel) -> dict:
    return {
        "name": ch.name,
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [
            [[[float(z.real), float(z.imag)] for z in row] for row in op]
            for op in ch.kraus
        ],
    }


def channel_from_dict(d: dict) -> KrausChannel:
    try:
        name = str(d.get("name", ""))
        dim_in = int(d["dim_in"])
        dim_out = int(d["dim_out"])
        raw = d["kraus"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DimMismatch(f"malformed channel record: {exc}") from exc
    ops = []
    for idx, op in enumerate(raw):
        a = np.asarray(op, dtype=np.float64)
        if a.ndim != 3 or a.shape != (dim_out, dim_in, 2):
            raise DimMismatch(
                f"kraus[{idx}] has shape {a.shape}, expected ({dim_out}, {dim_in}, 2)"
            )
        ops.append(a[..., 0] + 1j * a[..., 1])
    ch = KrausChannel(kraus=ops, dim_in=dim_in, dim_out=dim_out, name=name)
    ch.flagged = ch.tp_residual() > TOL.residual_tol
    return ch


def save_channel(ch: KrausChannel, path: str) -> None:
    with open(path, "w") as f:
        json.dump(channel_to_dict(ch), f, indent=2, sort_keys=True)
        f.write("\n")


def load_channel(path: str) -> KrausChannel:
    with open(path) as f:
        return channel_from_dict(json.load(f))
