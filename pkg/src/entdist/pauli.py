"""Pauli strings, real-weighted Pauli sums and their conjugation by CZ and RY.

A Pauli string is stored sparsely: only non-identity factors are kept, keyed
by qubit index. A :class:`PauliSum` keeps its terms in symplectic form
(one ``x`` bitmask and one ``z`` bitmask per term, ``Y = (1, 1)``) so that
conjugation and like-term merging are vectorised over all terms at once.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

#: Terms whose magnitude falls below this after merging are dropped.
COEFF_FLOOR = 1e-15

MAX_QUBITS = 64


class PauliFactor(str, enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def bits(self) -> tuple[int, int]:
        return _FACTOR_BITS[self]

    @classmethod
    def from_bits(cls, x: int, z: int) -> "PauliFactor":
        return _BITS_FACTOR[(x, z)]


_FACTOR_BITS = {
    PauliFactor.I: (0, 0),
    PauliFactor.X: (1, 0),
    PauliFactor.Y: (1, 1),
    PauliFactor.Z: (0, 1),
}
_BITS_FACTOR = {v: k for k, v in _FACTOR_BITS.items()}

_I, _X, _Y, _Z = PauliFactor.I, PauliFactor.X, PauliFactor.Y, PauliFactor.Z

# CZ^dagger (a (x) b) CZ -> (sign, a', b') for every factor pair on the two CZ qubits.
CZ_TABLE: dict[tuple[PauliFactor, PauliFactor], tuple[int, PauliFactor, PauliFactor]] = {
    (_I, _I): (+1, _I, _I),
    (_X, _I): (+1, _X, _Z),
    (_Y, _I): (+1, _Y, _Z),
    (_Z, _I): (+1, _Z, _I),
    (_I, _X): (+1, _Z, _X),
    (_I, _Y): (+1, _Z, _Y),
    (_I, _Z): (+1, _I, _Z),
    (_X, _X): (+1, _Y, _Y),
    (_X, _Y): (-1, _Y, _X),
    (_X, _Z): (+1, _X, _I),
    (_Y, _X): (-1, _X, _Y),
    (_Y, _Y): (+1, _X, _X),
    (_Y, _Z): (+1, _Y, _I),
    (_Z, _X): (+1, _I, _X),
    (_Z, _Y): (+1, _I, _Y),
    (_Z, _Z): (+1, _Z, _Z),
}

_TOKEN = re.compile(r"^([IXYZ])(\d+)$")


def _check_qubit(q: int, n_qubits: int) -> None:
    if not 0 <= q < n_qubits:
        raise IndexError(f"qubit {q} out of range for {n_qubits} qubits")


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of Pauli factors on ``n_qubits`` qubits.

    ``factors`` is a tuple of ``(qubit, factor)`` pairs sorted by qubit with no
    identity entries, so two strings compare equal exactly when their factor
    maps and signs do.
    """

    n_qubits: int
    factors: tuple[tuple[int, PauliFactor], ...] = ()
    sign: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        canon = {}
        for q, f in self.factors:
            q = int(q)
            _check_qubit(q, self.n_qubits)
            if q in canon:
                raise ValueError(f"qubit {q} appears twice")
            f = PauliFactor(f)
            if f is not PauliFactor.I:
                canon[q] = f
        object.__setattr__(self, "factors", tuple(sorted(canon.items())))

    @classmethod
    def from_map(
        cls, factors: Mapping[int, PauliFactor | str], n_qubits: int, sign: int = 1
    ) -> "PauliString":
        return cls(n_qubits, tuple(factors.items()), sign)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def parse(cls, text: str, n_qubits: int) -> "PauliString":
        """Parse whitespace-separated tokens such as ``"X0 Z1"``.

        A leading ``-`` negates the string; ``"I"`` or an empty string is the
        identity.
        """
        text = text.strip()
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:].strip()
        elif text.startswith("+"):
            text = text[1:].strip()
        factors: dict[int, PauliFactor] = {}
        for tok in text.split():
            if tok == "I":
                continue
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"cannot parse Pauli token {tok!r}")
            q = int(m.group(2))
            if q in factors:
                raise ValueError(f"qubit {q} appears twice in {text!r}")
            factors[q] = PauliFactor(m.group(1))
        return cls.from_map(factors, n_qubits, sign)

    @classmethod
    def from_masks(cls, x: int, z: int, n_qubits: int, sign: int = 1) -> "PauliString":
        facs = []
        for q in range((x | z).bit_length()):
            f = PauliFactor.from_bits((x >> q) & 1, (z >> q) & 1)
            if f is not PauliFactor.I:
                facs.append((q, f))
        return cls(n_qubits, tuple(facs), sign)

    def masks(self) -> tuple[int, int]:
        x = z = 0
        for q, f in self.factors:
            bx, bz = f.bits
            x |= bx << q
            z |= bz << q
        return x, z

    def factor(self, qubit: int) -> PauliFactor:
        return dict(self.factors).get(qubit, PauliFactor.I)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(q for q, _ in self.factors)

    @property
    def is_identity(self) -> bool:
        return not self.factors

    def unsigned(self) -> "PauliString":
        return self if self.sign == 1 else PauliString(self.n_qubits, self.factors, 1)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n_qubits, self.factors, -self.sign)

    def __str__(self) -> str:
        body = " ".join(f"{f.value}{q}" for q, f in self.factors) or "I"
        return body if self.sign == 1 else f"-{body}"


def conjugate_cz(s: PauliString, control: int, target: int) -> PauliString:
    """Return ``CZ^dagger s CZ`` for a CZ acting on ``(control, target)``."""
    _check_qubit(control, s.n_qubits)
    _check_qubit(target, s.n_qubits)
    if control == target:
        raise ValueError("CZ needs two distinct qubits")
    fmap = dict(s.factors)
    sign, fa, fb = CZ_TABLE[(fmap.get(control, _I), fmap.get(target, _I))]
    fmap[control] = fa
    fmap[target] = fb
    return PauliString.from_map(fmap, s.n_qubits, s.sign * sign)


class PauliSum:
    """Real linear combination of unsigned Pauli strings.

    Terms are held as parallel arrays ``x``, ``z`` (uint64 bitmasks) and
    ``coeffs`` (float64), sorted by ``(x, z)`` with no duplicates and no
    coefficient below :data:`COEFF_FLOOR` in magnitude. Instances are treated
    as immutable; every operation returns a new sum.
    """

    __slots__ = ("n_qubits", "x", "z", "coeffs")

    def __init__(
        self,
        n_qubits: int,
        x: np.ndarray | Iterable[int] = (),
        z: np.ndarray | Iterable[int] = (),
        coeffs: np.ndarray | Iterable[float] = (),
        *,
        prune: float = 0.0,
    ) -> None:
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
        self.n_qubits = n_qubits
        x = np.asarray(x, dtype=np.uint64).reshape(-1)
        z = np.asarray(z, dtype=np.uint64).reshape(-1)
        c = np.asarray(coeffs, dtype=np.float64).reshape(-1)
        if not (x.shape == z.shape == c.shape):
            raise ValueError("x, z and coeffs must have equal length")
        self.x, self.z, self.coeffs = _merge(x, z, c, max(prune, COEFF_FLOOR))
        for arr in (self.x, self.z, self.coeffs):
            arr.setflags(write=False)

    @classmethod
    def from_terms(
        cls, terms: Mapping[PauliString, float] | Iterable[tuple[PauliString, float]], n_qubits: int
    ) -> "PauliSum":
        items = terms.items() if isinstance(terms, Mapping) else terms
        xs, zs, cs = [], [], []
        for s, c in items:
            if s.n_qubits != n_qubits:
                raise ValueError(f"string {s} is on {s.n_qubits} qubits, expected {n_qubits}")
            x, z = s.masks()
            xs.append(x)
            zs.append(z)
            cs.append(s.sign * float(c))
        return cls(n_qubits, xs, zs, cs)

    @classmethod
    def from_string(cls, s: PauliString, coeff: float = 1.0) -> "PauliSum":
        return cls.from_terms([(s, coeff)], s.n_qubits)

    @property
    def terms(self) -> dict[PauliString, float]:
        return {
            PauliString.from_masks(int(x), int(z), self.n_qubits): float(c)
            for x, z, c in zip(self.x, self.z, self.coeffs)
        }

    def support(self) -> frozenset[int]:
        if not len(self):
            return frozenset()
        acc = int(np.bitwise_or.reduce(self.x | self.z))
        return frozenset(q for q in range(self.n_qubits) if (acc >> q) & 1)

    def __len__(self) -> int:
        return int(self.coeffs.shape[0])

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit counts differ")
        return PauliSum(
            self.n_qubits,
            np.concatenate([self.x, other.x]),
            np.concatenate([self.z, other.z]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def __mul__(self, k: float) -> "PauliSum":
        return PauliSum(self.n_qubits, self.x, self.z, self.coeffs * float(k))

    __rmul__ = __mul__

    def allclose(self, other: "PauliSum", atol: float = 1e-12) -> bool:
        diff = self + other * -1.0
        return bool(np.all(np.abs(diff.coeffs) <= atol))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {c:.6g}" for s, c in self.terms.items())
        return f"PauliSum({{{body}}})"


def _merge(x: np.ndarray, z: np.ndarray, c: np.ndarray, floor: float):
    if x.size == 0:
        return x.copy(), z.copy(), c.copy()
    order = np.lexsort((z, x))
    x, z, c = x[order], z[order], c[order]
    new = np.empty(x.size, dtype=bool)
    new[0] = True
    np.not_equal(x[1:], x[:-1], out=new[1:])
    new[1:] |= z[1:] != z[:-1]
    starts = np.flatnonzero(new)
    c = np.add.reduceat(c, starts)
    x, z = x[starts], z[starts]
    keep = np.abs(c) >= floor
    return x[keep], z[keep], c[keep]


def conjugate_cz_sum(p: PauliSum, control: int, target: int) -> PauliSum:
    """Apply :func:`conjugate_cz` to every term of ``p`` at once.

    In symplectic form CZ leaves the x bits alone, sets ``z_i ^= x_j`` and
    ``z_j ^= x_i``, and flips the sign iff the pair is ``(X, Y)`` or ``(Y, X)``.
    """
    n = p.n_qubits
    _check_qubit(control, n)
    _check_qubit(target, n)
    if control == target:
        raise ValueError("CZ needs two distinct qubits")
    bi, bj = np.uint64(control), np.uint64(target)
    one = np.uint64(1)
    xi = (p.x >> bi) & one
    xj = (p.x >> bj) & one
    zi = (p.z >> bi) & one
    zj = (p.z >> bj) & one
    z = p.z ^ (xj << bi) ^ (xi << bj)
    flip = (xi & xj & (zi ^ zj)).astype(bool)
    c = np.where(flip, -p.coeffs, p.coeffs)
    # CZ permutes strings, so no merging is needed; the constructor still
    # re-sorts to keep the canonical ordering.
    return PauliSum(n, p.x, z, c)


def conjugate_ry(p: PauliSum, qubit: int, theta: float, *, prune: float = 0.0) -> PauliSum:
    """Return ``RY(theta)^dagger p RY(theta)``.

    On ``qubit``: X -> cos X + sin Z, Z -> cos Z - sin X, Y and I unchanged.
    """
    _check_qubit(qubit, p.n_qubits)
    if theta == 0.0 or not len(p):
        return p
    b = np.uint64(qubit)
    one = np.uint64(1)
    hx = (p.x >> b) & one
    hz = (p.z >> b) & one
    split = (hx ^ hz).astype(bool)
    if not split.any():
        return p
    cos, sin = np.cos(theta), np.sin(theta)
    kept = np.where(split, p.coeffs * cos, p.coeffs)
    bit = one << b
    sx, sz = p.x[split], p.z[split]
    partner = p.coeffs[split] * np.where(hx[split].astype(bool), sin, -sin)
    return PauliSum(
        p.n_qubits,
        np.concatenate([p.x, sx ^ bit]),
        np.concatenate([p.z, sz ^ bit]),
        np.concatenate([kept, partner]),
        prune=prune,
    )


def vacuum_expectation(p: PauliSum) -> float:
    """Expectation on ``|0...0>``: the summed coefficients of all-Z (x == 0) terms."""
    mask = p.x == 0
    if not mask.any():
        return 0.0
    return float(np.sum(p.coeffs[mask]))
