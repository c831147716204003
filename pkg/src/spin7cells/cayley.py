"""Octonion arithmetic over the basis e0..e7.

An octonion is a float array of shape ``(..., 8)``; every operation here
broadcasts over leading axes so that batches of samples can be checked in
one call.  The multiplication table is not assumed: it is the unique sign
assignment (see :func:`search_mult_tables`) compatible with the generator
matrices of :mod:`spin7cells.groups`, and the shipped copy in
``data/mult_table.txt`` is the frozen output of :func:`derive_mult_table`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cache, cached_property
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DomainError

INVERSE_EPS = 1e-12

# e1 * e_{2k} = e_{2k+1}: {e0, e2, e4, e6} is a C-basis with C generated by e1.
COMPLEX_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7))


@dataclass(frozen=True, eq=False)
class MultTable:
    """Signed basis table: ``e_i e_j = sign[i, j] * e_{index[i, j]}``."""

    sign: np.ndarray
    index: np.ndarray
    lines: tuple = field(default=(), compare=False)

    @cached_property
    def structure(self) -> np.ndarray:
        t = np.zeros((8, 8, 8))
        for i in range(8):
            for j in range(8):
                t[i, j, self.index[i, j]] = self.sign[i, j]
        return t

    def __getitem__(self, ij):
        i, j = ij
        return int(self.sign[i, j]), int(self.index[i, j])

    def __eq__(self, other):
        return (isinstance(other, MultTable)
                and np.array_equal(self.sign, other.sign)
                and np.array_equal(self.index, other.index))

    def validate(self):
        """Raise ConfigurationError unless the basic table invariants hold."""
        for k in range(8):
            if self[0, k] != (1, k) or self[k, 0] != (1, k):
                raise ConfigurationError(f"e0 is not a two-sided unit at e{k}")
        for i in range(1, 8):
            if self[i, i] != (-1, 0):
                raise ConfigurationError(f"e{i}^2 != -e0")
            for j in range(1, 8):
                if i != j:
                    s, k = self[i, j]
                    if self[j, i] != (-s, k):
                        raise ConfigurationError(f"e{i}e{j} not anticommuting")
        for a, b, c in COMPLEX_LINES:
            if self[a, b] != (1, c):
                raise ConfigurationError(f"e{a}e{b} != e{c}")
        return self

    def to_text(self) -> str:
        rows = [f"{i} {j} {int(self.sign[i, j]):+d} {int(self.index[i, j])}"
                for i in range(8) for j in range(8)]
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MultTable":
        sign = np.zeros((8, 8), dtype=int)
        index = np.full((8, 8), -1, dtype=int)
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            i, j, s, k = (int(tok) for tok in line.split())
            sign[i, j], index[i, j] = s, k
        if (index < 0).any() or not np.isin(sign, (-1, 1)).all():
            raise ConfigurationError("multiplication table must have 64 entries")
        return cls(sign, index)

    @classmethod
    def from_lines(cls, lines) -> "MultTable":
        """Build the table whose oriented triples (a, b, c) mean e_a e_b = e_c."""
        sign = np.ones((8, 8), dtype=int)
        index = np.zeros((8, 8), dtype=int)
        for k in range(8):
            index[0, k] = index[k, 0] = k
        for i in range(1, 8):
            sign[i, i], index[i, i] = -1, 0
        for a, b, c in lines:
            for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
                sign[p, q], index[p, q] = 1, r
                sign[q, p], index[q, p] = -1, r
        return cls(sign, index, tuple(lines))


def _data_path(name: str, data_dir: str | Path | None = None):
    if data_dir is not None:
        return Path(data_dir) / name
    return resources.files("spin7cells") / "data" / name


def load_mult_table(data_dir=None) -> MultTable:
    return MultTable.from_text(_data_path("mult_table.txt", data_dir).read_text()).validate()


@cache
def default_table() -> MultTable:
    return load_mult_table()


def basis(i: int) -> np.ndarray:
    e = np.zeros(8)
    e[i] = 1.0
    return e


def mul(x, y, table: MultTable | None = None) -> np.ndarray:
    t = (table or default_table()).structure
    return np.einsum("...i,...j,ijk->...k", np.asarray(x, float), np.asarray(y, float), t)


def conj(x) -> np.ndarray:
    y = -np.array(x, dtype=float)
    y[..., 0] *= -1
    return y


def norm(x):
    """Squared Euclidean norm N(x) = sum c_i^2 (multiplicative)."""
    x = np.asarray(x, float)
    return np.sum(x * x, axis=-1)


def inverse(x) -> np.ndarray:
    n = norm(x)
    if np.any(n < INVERSE_EPS):
        raise DomainError("octonion of (near) zero norm has no inverse")
    return conj(x) / np.asarray(n)[..., None]


def left_mul_matrix(a, table: MultTable | None = None) -> np.ndarray:
    """Matrix of x -> a x."""
    return np.einsum("i,ijk->kj", np.asarray(a, float), (table or default_table()).structure)


# ---------------------------------------------------------------- derivation

def fano_completions():
    """Line sets on {1..7} extending COMPLEX_LINES to a Fano plane."""
    transversals = [t for t in itertools.product((2, 3), (4, 5), (6, 7))]
    out = []
    for quad in itertools.combinations(transversals, 4):
        pairs = [frozenset(p) for t in quad for p in itertools.combinations(t, 2)]
        if len(set(pairs)) == len(pairs):
            out.append([tuple(line) for line in COMPLEX_LINES] + [tuple(t) for t in quad])
    return out


def _random_disc(rng, n, size):
    v = rng.normal(size=(size, n))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.uniform(size=(size, 1)) ** (1.0 / n)


def table_defects(table: MultTable, nsamples: int = 1000, rng=None):
    """Max errors of every constraint a valid table must satisfy.

    Keys: ``norm`` (multiplicativity), ``A``/``B``/``C`` (automorphism
    identity), ``D`` (the companion identity D'(w)x . D(w)y = D(w)(xy)).
    """
    from .groups import generator_matrix

    rng = np.random.default_rng(rng)
    x = rng.normal(size=(nsamples, 8))
    y = rng.normal(size=(nsamples, 8))
    out = {"norm": float(np.max(np.abs(norm(mul(x, y, table)) - norm(x) * norm(y))))}
    xy = mul(x, y, table)
    for kind, dim in (("A", 3), ("B", 2), ("C", 1), ("D", 2)):
        params = _random_disc(rng, dim, nsamples)
        mats = np.stack([generator_matrix(kind, p) for p in params])
        left = mats
        if kind == "D":
            left = np.stack([generator_matrix("Dprime", p) for p in params])
        lhs = mul(np.einsum("nij,nj->ni", left, x), np.einsum("nij,nj->ni", mats, y), table)
        rhs = np.einsum("nij,nj->ni", mats, xy)
        out[kind] = float(np.max(np.abs(lhs - rhs)))
    return out


def search_mult_tables(nsamples: int = 1000, seed: int = 0, tol: float = 1e-9):
    """All oriented Fano tables (2 completions x 2^7 orientations) passing every constraint."""
    found = []
    for lines in fano_completions():
        for flips in itertools.product((False, True), repeat=7):
            oriented = [(b, a, c) if f else (a, b, c) for (a, b, c), f in zip(lines, flips)]
            table = MultTable.from_lines(oriented)
            try:
                table.validate()
            except ConfigurationError:
                continue
            # cheap screen before the full sample run
            if max(table_defects(table, 16, seed).values()) > tol:
                continue
            if max(table_defects(table, nsamples, seed).values()) <= tol:
                found.append(table)
    return found


def derive_mult_table(nsamples: int = 1000, seed: int = 0) -> MultTable:
    found = search_mult_tables(nsamples, seed)
    if len(found) != 1:
        raise ConfigurationError(
            f"{len(found)} sign assignments satisfy the generator identities; expected 1")
    return found[0]


def write_mult_table(path, table: MultTable | None = None):
    table = table or derive_mult_table()
    Path(path).write_text(table.to_text())
    return table
